#pragma once

// Right-hand side of the super Faa di Bruno formula as an abstract Expression.

#include "supercalc/calculus.hpp"
#include "supercalc/partitions.hpp"
#include "supercalc/symbolic.hpp"

#include <stdexcept>
#include <vector>

namespace supercalc {

/// Sign (-1)^{b_i (sum_{k>i} (b_k + sum_{l in B^k} a_l))} for the 0-based block i.
inline int internal_sign(std::size_t i, const OrderedPartition& op, const std::vector<Coordinate>& targets,
                         const IndexList& idx) {
  if (targets.size() != op.size()) throw std::invalid_argument("one target coordinate per block required");
  if (i >= op.size()) throw std::out_of_range("block position out of range");
  Parity tail = Parity::even;
  for (std::size_t k = i + 1; k < op.size(); ++k) {
    tail += targets[k].parity;
    for (int pos : op.blocks[k]) tail += idx[static_cast<std::size_t>(pos - 1)].parity;
  }
  return sign_of(targets[i].parity * tail);
}

namespace detail {

inline void check_index_list(const IndexList& idx, Dims source) {
  for (const auto& a : idx) {
    if (a.space != Space::source || !in_bounds(a, source)) {
      throw std::out_of_range("index " + to_token(a) + " outside source " + to_string(source));
    }
  }
}

}  // namespace detail

/// Composite symbol f(y(x)) for a function of the target coordinates.
inline Symbol composite_symbol(const FunctionSymbol& f, MapDims dims) {
  if (f.arity != dims.target.total()) {
    throw std::invalid_argument("function arity " + std::to_string(f.arity) + " does not match target dims " +
                                to_string(dims.target));
  }
  return Symbol::composite(f.name, f.parity);
}

/// One term per partition pi and target tuple (b_1..b_|pi|):
///   (-1)^{pi~} prod_i sign_i (d_{B^i} y^{b_i}) * d_{b_1}...d_{b_|pi|} f,
/// component jets in block order, f rightmost with b_1 outermost. Not collected.
inline std::vector<Term> fdb_terms(const IndexList& idx, MapDims dims, const FunctionSymbol& f) {
  if (idx.empty()) throw std::invalid_argument("fdb_rhs needs at least one index");
  detail::check_index_list(idx, dims.source);
  const Symbol fsym = composite_symbol(f, dims);
  const auto targets = target_coordinates(dims.target);

  std::vector<Term> terms;
  for (const auto& partition : enumerate_partitions(static_cast<int>(idx.size()))) {
    const OrderedPartition op = order_partition(partition, idx);
    const int partition_sign = sign_of(partition_parity(op, idx));
    const std::size_t blocks = op.size();
    if (targets.empty()) continue;

    std::vector<std::vector<Coordinate>> block_indices;
    for (const auto& block : op.blocks) {
      std::vector<Coordinate> ids;
      for (int pos : block) ids.push_back(idx[static_cast<std::size_t>(pos - 1)]);
      block_indices.push_back(std::move(ids));
    }

    // odometer over target tuples
    std::vector<std::size_t> choice(blocks, 0);
    for (;;) {
      std::vector<Coordinate> bs;
      bs.reserve(blocks);
      for (auto c : choice) bs.push_back(targets[c]);

      int sign = partition_sign;
      Term t;
      for (std::size_t i = 0; i < blocks; ++i) {
        sign *= internal_sign(i, op, bs, idx);
        t.factors.push_back(make_jet(Symbol::component(bs[i]), block_indices[i]));
      }
      t.factors.push_back(make_jet(fsym, bs));
      t.coeff = sign;
      terms.push_back(std::move(t));

      std::size_t k = 0;
      while (k < blocks && ++choice[k] == targets.size()) choice[k++] = 0;
      if (k == blocks) break;
    }
  }
  return terms;
}

inline Expression fdb_rhs(const IndexList& idx, MapDims dims, const FunctionSymbol& f) {
  return Expression::from_terms(fdb_terms(idx, dims, f));
}

}  // namespace supercalc
