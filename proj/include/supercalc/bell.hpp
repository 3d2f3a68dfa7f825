#pragma once

// Generalized super Bell polynomials Y_{a_1..a_n}(f) = e^{-f} d_{a_n}...d_{a_1} e^f
// for an even function f on R^{d0|d1}.

#include "supercalc/calculus.hpp"
#include "supercalc/partitions.hpp"
#include "supercalc/symbolic.hpp"

#include <stdexcept>
#include <vector>

namespace supercalc {

namespace detail {

inline Symbol bell_symbol(const FunctionSymbol& f) {
  if (is_odd(f.parity)) throw std::invalid_argument("super Bell polynomials need an even function");
  return Symbol::plain(f.name, Parity::even);
}

inline void check_bell_indices(const IndexList& idx, Dims space) {
  for (const auto& a : idx) {
    if (a.space != Space::source || !in_bounds(a, space)) {
      throw std::out_of_range("index " + to_token(a) + " outside " + to_string(space));
    }
  }
}

}  // namespace detail

/// sum_pi (-1)^{pi~} prod_i d_{B^i} f, blocks in partition order.
inline Expression bell_combinatorial(const IndexList& idx, Dims space, const FunctionSymbol& f) {
  const Symbol fsym = detail::bell_symbol(f);
  detail::check_bell_indices(idx, space);
  if (idx.empty()) return Expression::constant(1);
  std::vector<Term> terms;
  for (const auto& partition : enumerate_partitions(static_cast<int>(idx.size()))) {
    const OrderedPartition op = order_partition(partition, idx);
    Term t{sign_of(partition_parity(op, idx)), {}};
    for (const auto& block : op.blocks) {
      std::vector<Coordinate> ids;
      for (int pos : block) ids.push_back(idx[static_cast<std::size_t>(pos - 1)]);
      t.factors.push_back(make_jet(fsym, std::move(ids)));
    }
    terms.push_back(std::move(t));
  }
  return Expression::from_terms(std::move(terms));
}

/// Repeated differentiation of P e^f with d_a e^f = (d_a f) e^f; the
/// e^{+-f} pair cancels, leaving P.
inline Expression bell_via_definition(const IndexList& idx, Dims space, const FunctionSymbol& f) {
  const Symbol fsym = detail::bell_symbol(f);
  detail::check_bell_indices(idx, space);
  const MapDims dims{space, Dims{}};
  Expression p = Expression::constant(1);
  for (const auto& a : idx) {
    std::vector<Term> next = differentiate(p, a, dims).terms();
    for (const auto& t : p.terms()) {
      Term nt = t;
      if (is_odd(a.parity * t.parity())) nt.coeff = -nt.coeff;
      nt.factors.push_back(make_jet(fsym, {a}));
      next.push_back(std::move(nt));
    }
    p = Expression::from_terms(std::move(next));
  }
  return p;
}

/// Multi-index (l, r): operators d^{l_1}_{x1} ... d^{l_d0}_{x_d0} d^{r_1}_{xi1} ... d^{r_d1}_{xi_d1}.
struct BellMultiIndex {
  std::vector<int> l;
  std::vector<int> r;

  Dims space() const { return {static_cast<int>(l.size()), static_cast<int>(r.size())}; }

  /// The rightmost displayed operator is a_1 (applied first).
  IndexList to_index_list() const {
    IndexList display;
    int total = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i] < 0) throw std::invalid_argument("even multi-index entries must be non-negative");
      for (int k = 0; k < l[i]; ++k) display.push_back(source_even(static_cast<int>(i) + 1));
      total += l[i];
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] < 0 || r[i] > 1) throw std::invalid_argument("odd multi-index entries must be 0 or 1");
      if (r[i]) display.push_back(source_odd(static_cast<int>(i) + 1));
      total += r[i];
    }
    if (total < 1) throw std::invalid_argument("multi-index must contain at least one derivative");
    return IndexList(display.rbegin(), display.rend());
  }
};

inline Expression bell_multiindex(const BellMultiIndex& mi, const FunctionSymbol& f) {
  return bell_via_definition(mi.to_index_list(), mi.space(), f);
}

}  // namespace supercalc
