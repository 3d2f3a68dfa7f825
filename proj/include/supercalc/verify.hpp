#pragma once

// Brute-force oracles and the seeded random harness that check formula
// instances by exact equality.

#include "supercalc/bell.hpp"
#include "supercalc/calculus.hpp"
#include "supercalc/fdb.hpp"

#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercalc {

/// A serializable test case: map y(x, xi), function f on the target, and
/// derivative indices a_1..a_n (a_1 applied first).
struct Instance {
  std::string id;
  SuperMap map;
  SuperPolynomial f;
  Parity f_parity = Parity::even;
  IndexList idx;
  std::uint64_t seed = 0;

  MapDims dims() const { return map.dims(); }
  FunctionSymbol symbol() const { return {"f", map.target.total(), f_parity}; }
};

enum class Mode { abstract, concrete };

inline std::string_view to_string(Mode m) { return m == Mode::abstract ? "abstract" : "concrete"; }

struct Report {
  std::string id;
  Mode mode = Mode::abstract;
  std::string lhs;  // canonical text form
  std::string rhs;
  bool equal = false;
  double millis = 0.0;
};

// ---------------------------------------------------------------------------
// Oracles

/// d_{a_n} ... d_{a_1} f(y(x)), one chain/product-rule step at a time.
inline Expression lhs_direct(const IndexList& idx, MapDims dims, const FunctionSymbol& f) {
  const Symbol fsym = composite_symbol(f, dims);
  Expression e = Expression::single(Term{1, {make_jet(fsym)}});
  for (const auto& a : idx) e = differentiate(e, a, dims);
  return e;
}

/// Pull f back along the map, then take the partials directly.
inline SuperPolynomial lhs_concrete(const Instance& inst) {
  SuperPolynomial p = substitute(inst.f, inst.map);
  for (const auto& a : inst.idx) p = p.partial(a);
  return p;
}

inline SuperPolynomial rhs_concrete(const Instance& inst, const Expression& rhs) {
  Instantiator inst_map{inst.map.source, &inst.map};
  inst_map.bind_composite("f", inst.f);
  return inst_map.expression(rhs);
}

/// exp(s) for nilpotent s, an exact finite sum.
inline SuperPolynomial exp_nilpotent(const SuperPolynomial& s) {
  if (!split_body_soul(s).body.is_zero()) throw std::invalid_argument("exp_nilpotent argument has a body");
  SuperPolynomial out = SuperPolynomial::constant(s.dims(), 1);
  SuperPolynomial power = out;
  for (unsigned k = 1; !power.is_zero(); ++k) {
    power = power * s;
    out += power * (Rational{1} / factorial(k));
  }
  return out;
}

/// e^{-f} d_{a_n}...d_{a_1} e^f for a concrete even f, via e^f = e^{f0} e^{f+}:
/// e^{f0} (f0 the xi-free body) is carried as a formal factor that only
/// even derivatives touch, e^{f+} is an exact polynomial.
inline SuperPolynomial bell_concrete(const IndexList& idx, const SuperPolynomial& f) {
  if (!f.is_homogeneous(Parity::even)) throw std::invalid_argument("super Bell polynomials need an even function");
  auto [body, soul] = split_body_soul(f);
  SuperPolynomial q = exp_nilpotent(soul);
  for (const auto& a : idx) {
    SuperPolynomial next = q.partial(a);
    if (!is_odd(a.parity)) next += body.partial(a) * q;
    q = std::move(next);
  }
  return exp_nilpotent(-soul) * q;
}

// ---------------------------------------------------------------------------
// Random instances

struct RandomConfig {
  Dims max_source{2, 2};
  Dims max_target{2, 2};
  int degree = 3;
  int n_min = 1;
  int n_max = 5;
  int max_terms = 4;

  void validate() const {
    auto dims_ok = [](Dims d) { return d.even >= 0 && d.odd >= 0 && d.even <= 3 && d.odd <= 3 && d.total() >= 1; };
    if (!dims_ok(max_source) || !dims_ok(max_target)) throw std::invalid_argument("dims bounds must lie in (0|0)..(3|3)");
    if (degree < 0 || degree > 3) throw std::invalid_argument("degree bound must lie in [0, 3]");
    if (n_min < 0 || n_max > 6 || n_min > n_max) throw std::invalid_argument("index length bounds must satisfy 0 <= n_min <= n_max <= 6");
    if (max_terms < 1) throw std::invalid_argument("max_terms must be positive");
  }
};

namespace detail {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi]; platform independent.
  int uniform(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

inline SuperPolynomial random_homogeneous(SeededRng& rng, Dims dims, Parity parity, int degree, int max_terms) {
  std::vector<GrassmannMonomial> allowed;
  for (unsigned mask = 0; mask < (1u << dims.odd); ++mask) {
    std::vector<int> gens;
    for (int g = 0; g < dims.odd; ++g) {
      if (mask & (1u << g)) gens.push_back(g + 1);
    }
    if ((gens.size() % 2 == 1) == is_odd(parity)) allowed.emplace_back(std::move(gens));
  }
  SuperPolynomial p{dims};
  if (allowed.empty()) return p;
  const int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    const GrassmannMonomial& odd = allowed[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(allowed.size()) - 1))];
    std::map<int, int> exps;
    if (dims.even > 0) {
      const int d = rng.uniform(0, degree);
      for (int k = 0; k < d; ++k) ++exps[rng.uniform(1, dims.even)];
    }
    int c = rng.uniform(-3, 2);
    if (c >= 0) ++c;
    p.add_term({odd, EvenMonomial{exps}}, c);
  }
  return p;
}

inline Dims random_dims(SeededRng& rng, Dims max) {
  for (;;) {
    Dims d{rng.uniform(0, max.even), rng.uniform(0, max.odd)};
    if (d.total() >= 1) return d;
  }
}

}  // namespace detail

inline Instance random_instance(const RandomConfig& config, std::uint64_t seed) {
  config.validate();
  detail::SeededRng rng{seed};
  Instance inst;
  inst.id = "seed-" + std::to_string(seed);
  inst.seed = seed;
  const Dims source = detail::random_dims(rng, config.max_source);
  const Dims target = detail::random_dims(rng, config.max_target);
  inst.map = SuperMap{source, target, {}, {}};
  for (int b = 0; b < target.even; ++b) {
    inst.map.even.push_back(detail::random_homogeneous(rng, source, Parity::even, config.degree, config.max_terms));
  }
  for (int b = 0; b < target.odd; ++b) {
    inst.map.odd.push_back(detail::random_homogeneous(rng, source, Parity::odd, config.degree, config.max_terms));
  }
  inst.f_parity = (target.odd > 0 && rng.uniform(0, 1)) ? Parity::odd : Parity::even;
  inst.f = detail::random_homogeneous(rng, target, inst.f_parity, config.degree, config.max_terms + 1);
  const int n = rng.uniform(config.n_min, config.n_max);
  const auto coords = source_coordinates(source);
  for (int i = 0; i < n; ++i) {
    inst.idx.push_back(coords[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(coords.size()) - 1))]);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Verification

inline void validate_instance(const Instance& inst) {
  inst.map.validate();
  if (!(inst.f.dims() == inst.map.target)) throw std::invalid_argument("f is not defined on the map target");
  if (!inst.f.is_homogeneous(inst.f_parity)) throw std::invalid_argument("f does not have its declared parity");
  detail::check_index_list(inst.idx, inst.map.source);
}

/// Never throws on inequality; the verdict lives in Report::equal.
inline Report verify_instance(const Instance& inst, Mode mode) {
  validate_instance(inst);
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.id = inst.id;
  r.mode = mode;
  const auto f = inst.symbol();
  // with no indices both sides are the bare composite function
  const Expression rhs = inst.idx.empty() ? lhs_direct(inst.idx, inst.dims(), f) : fdb_rhs(inst.idx, inst.dims(), f);
  if (mode == Mode::abstract) {
    const Expression lhs = lhs_direct(inst.idx, inst.dims(), f);
    r.lhs = to_text(lhs);
    r.rhs = to_text(rhs);
    r.equal = expr_equal(lhs, rhs);
  } else {
    const SuperPolynomial lhs = lhs_concrete(inst);
    const SuperPolynomial rhs_value = rhs_concrete(inst, rhs);
    r.lhs = to_text(lhs);
    r.rhs = to_text(rhs_value);
    r.equal = (lhs == rhs_value);
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace supercalc
