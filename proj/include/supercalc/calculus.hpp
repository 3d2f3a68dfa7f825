#pragma once

// Differentiation of abstract expressions, pullback of superpolynomials along
// polynomial supermaps, and concrete instantiation of expressions.

#include "supercalc/algebra.hpp"
#include "supercalc/symbolic.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercalc {

struct MapDims {
  Dims source;
  Dims target;

  friend bool operator==(const MapDims&, const MapDims&) = default;
};

inline std::string to_string(MapDims d) { return to_string(d.source) + "->" + to_string(d.target); }

/// Target coordinates in iteration order: y1..yn, then zeta1..zetam.
inline std::vector<Coordinate> target_coordinates(Dims target) {
  std::vector<Coordinate> out;
  for (int b = 1; b <= target.even; ++b) out.push_back(target_even(b));
  for (int b = 1; b <= target.odd; ++b) out.push_back(target_odd(b));
  return out;
}

inline std::vector<Coordinate> source_coordinates(Dims source) {
  std::vector<Coordinate> out;
  for (int a = 1; a <= source.even; ++a) out.push_back(source_even(a));
  for (int a = 1; a <= source.odd; ++a) out.push_back(source_odd(a));
  return out;
}

/// A morphism R^{n1|m1} -> R^{n2|m2}: n2 even and m2 odd component functions.
struct SuperMap {
  Dims source;
  Dims target;
  std::vector<SuperPolynomial> even;  // y^1 .. y^{n2}
  std::vector<SuperPolynomial> odd;   // zeta^1 .. zeta^{m2}

  MapDims dims() const { return {source, target}; }

  void validate() const {
    if (static_cast<int>(even.size()) != target.even || static_cast<int>(odd.size()) != target.odd) {
      throw std::invalid_argument("map component count does not match target dims " + to_string(target));
    }
    for (const auto& p : even) {
      if (!(p.dims() == source)) throw std::invalid_argument("map component over wrong source dims");
      if (!p.is_homogeneous(Parity::even)) throw std::invalid_argument("even map component is not even");
    }
    for (const auto& p : odd) {
      if (!(p.dims() == source)) throw std::invalid_argument("map component over wrong source dims");
      if (!p.is_homogeneous(Parity::odd)) throw std::invalid_argument("odd map component is not odd");
    }
  }

  const SuperPolynomial& component(Coordinate b) const {
    if (b.space != Space::target || !in_bounds(b, target)) {
      throw std::out_of_range("no map component " + to_token(b));
    }
    return is_odd(b.parity) ? odd[b.ordinal - 1] : even[b.ordinal - 1];
  }

  static SuperMap identity(Dims d) {
    SuperMap m{d, d, {}, {}};
    for (int i = 1; i <= d.even; ++i) m.even.push_back(SuperPolynomial::even_variable(d, i));
    for (int i = 1; i <= d.odd; ++i) m.odd.push_back(SuperPolynomial::odd_variable(d, i));
    return m;
  }
};

// ---------------------------------------------------------------------------
// Abstract differentiation

/// Applies the left derivative d_a to every term by the super product rule.
/// Component and plain jets gain `a` as their outermost index; a composite
/// jet F becomes sum_b (d_a y^b)(d_b F), the new component jet inserted
/// immediately to its left.
inline Expression differentiate(const Expression& e, Coordinate a, MapDims dims) {
  if (a.space != Space::source || !in_bounds(a, dims.source)) {
    throw std::out_of_range("cannot differentiate by " + to_token(a) + " in source " + to_string(dims.source));
  }
  const auto targets = target_coordinates(dims.target);
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    Parity passed = Parity::even;
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      const Jet& jet = t.factors[i];
      const Rational coeff = is_odd(a.parity * passed) ? Rational{-t.coeff} : t.coeff;
      if (jet.symbol.kind == SymbolKind::composite) {
        for (const auto& b : targets) {
          Term nt{coeff, {}};
          nt.factors.reserve(t.factors.size() + 1);
          nt.factors.insert(nt.factors.end(), t.factors.begin(), t.factors.begin() + static_cast<std::ptrdiff_t>(i));
          nt.factors.push_back(make_jet(Symbol::component(b), {a}));
          Jet outer = jet;
          outer.indices.insert(outer.indices.begin(), b);
          nt.factors.push_back(std::move(outer));
          nt.factors.insert(nt.factors.end(), t.factors.begin() + static_cast<std::ptrdiff_t>(i) + 1, t.factors.end());
          out.push_back(std::move(nt));
        }
      } else {
        Term nt{coeff, t.factors};
        nt.factors[i].indices.insert(nt.factors[i].indices.begin(), a);
        out.push_back(std::move(nt));
      }
      passed += jet.parity();
    }
  }
  return Expression::from_terms(std::move(out));
}

// ---------------------------------------------------------------------------
// Pullback

namespace detail {

inline void require_map_for(const SuperPolynomial& f, const SuperMap& map) {
  map.validate();
  if (!(f.dims() == map.target)) {
    throw std::invalid_argument("function dims " + to_string(f.dims()) + " do not match map target " +
                                to_string(map.target));
  }
}

/// Composes a xi-free target polynomial with xi-free source polynomials.
inline SuperPolynomial compose_even(const SuperPolynomial& h, const std::vector<SuperPolynomial>& values, Dims source,
                                    std::map<std::pair<int, int>, SuperPolynomial>& power_cache) {
  SuperPolynomial out{source};
  for (const auto& [key, c] : h.terms()) {
    SuperPolynomial term = SuperPolynomial::constant(source, c);
    for (auto [o, e] : key.even.powers()) {
      auto it = power_cache.find({o, e});
      if (it == power_cache.end()) {
        it = power_cache.emplace(std::pair{o, e}, pow(values[o - 1], static_cast<unsigned>(e))).first;
      }
      term = term * it->second;
    }
    out += term;
  }
  return out;
}

}  // namespace detail

/// Pullback by Grassmannian analytic continuation. Each even component is
/// split into body + soul; every coefficient function g of f is expanded
///   g(y0 + e) = sum_k 1/k! e^{b_k}...e^{b_1} d_{b_1}...d_{b_k} g(y0)
/// and e replaced by the soul. Odd target coordinates substitute directly.
inline SuperPolynomial substitute(const SuperPolynomial& f, const SuperMap& map) {
  detail::require_map_for(f, map);
  const Dims source = map.source;

  std::vector<SuperPolynomial> bodies, souls;
  for (const auto& y : map.even) {
    auto [body, soul] = split_body_soul(y);
    bodies.push_back(std::move(body));
    souls.push_back(std::move(soul));
  }

  // Coefficient functions g_J(y), grouped by their zeta monomial J.
  std::map<GrassmannMonomial, SuperPolynomial> coefficients;
  for (const auto& [key, c] : f.terms()) {
    auto [it, inserted] = coefficients.try_emplace(key.odd, SuperPolynomial{f.dims()});
    it->second.add_term({GrassmannMonomial{}, key.even}, c);
  }

  std::map<std::pair<int, int>, SuperPolynomial> power_cache;
  const int max_order = source.odd;

  SuperPolynomial result{source};
  for (const auto& [zeta_monomial, g] : coefficients) {
    SuperPolynomial continued{source};
    // depth-first over ordered tuples, innermost derivative first; the soul
    // product grows on the right as the outer derivative index is appended
    struct Frame {
      SuperPolynomial derivative;
      SuperPolynomial souls;
      int order;
    };
    std::vector<Frame> stack;
    stack.push_back({g, SuperPolynomial::constant(source, 1), 0});
    while (!stack.empty()) {
      Frame fr = std::move(stack.back());
      stack.pop_back();
      if (fr.derivative.is_zero() || fr.souls.is_zero()) continue;
      continued += (detail::compose_even(fr.derivative, bodies, source, power_cache) * fr.souls) *
                   Rational{Rational{1} / factorial(static_cast<unsigned>(fr.order))};
      if (fr.order == max_order) continue;
      for (int b = 1; b <= map.target.even; ++b) {
        if (souls[b - 1].is_zero()) continue;
        stack.push_back({fr.derivative.partial(target_even(b)), fr.souls * souls[b - 1], fr.order + 1});
      }
    }
    SuperPolynomial zetas = SuperPolynomial::constant(source, 1);
    for (int beta : zeta_monomial.generators()) zetas = zetas * map.odd[beta - 1];
    result += zetas * continued;
  }
  return result;
}

/// Direct substitution of every variable occurrence; an independent route to
/// the same pullback for polynomial f.
inline SuperPolynomial compose_direct(const SuperPolynomial& f, const SuperMap& map) {
  detail::require_map_for(f, map);
  SuperPolynomial result{map.source};
  for (const auto& [key, c] : f.terms()) {
    SuperPolynomial term = SuperPolynomial::constant(map.source, c);
    for (auto [o, e] : key.even.powers()) term = term * pow(map.even[o - 1], static_cast<unsigned>(e));
    for (int beta : key.odd.generators()) term = term * map.odd[beta - 1];
    result += term;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Instantiation

/// Replaces symbols by concrete superpolynomials: components by the map,
/// composite symbols by target polynomials pulled back along the map, plain
/// symbols by source polynomials. Jets become iterated left partials.
class Instantiator {
 public:
  Instantiator(Dims source, const SuperMap* map = nullptr) : source_(source), map_(map) {}

  void bind_composite(const std::string& name, SuperPolynomial f) { composite_[name] = std::move(f); }
  void bind_plain(const std::string& name, SuperPolynomial f) { plain_[name] = std::move(f); }

  const SuperPolynomial& jet(const Jet& j) {
    if (auto it = cache_.find(j); it != cache_.end()) return it->second;
    SuperPolynomial value = evaluate(j);
    return cache_.emplace(j, std::move(value)).first->second;
  }

  SuperPolynomial term(const Term& t) {
    SuperPolynomial out = SuperPolynomial::constant(source_, t.coeff);
    for (const auto& j : t.factors) {
      const auto& v = jet(j);
      if (v.is_zero()) return SuperPolynomial{source_};
      out = out * v;
    }
    return out;
  }

  SuperPolynomial expression(const Expression& e) {
    SuperPolynomial out{source_};
    for (const auto& t : e.terms()) out += term(t);
    return out;
  }

 private:
  static SuperPolynomial apply_partials(SuperPolynomial p, const std::vector<Coordinate>& indices) {
    for (auto it = indices.rbegin(); it != indices.rend() && !p.is_zero(); ++it) p = p.partial(*it);
    return p;
  }

  static void check_parity(const SuperPolynomial& p, const Symbol& s) {
    if (!p.is_homogeneous(s.parity)) {
      throw std::invalid_argument("binding for '" + s.name + "' is not " + std::string{to_string(s.parity)});
    }
  }

  SuperPolynomial evaluate(const Jet& j) {
    switch (j.symbol.kind) {
      case SymbolKind::component: {
        if (!map_) throw std::invalid_argument("component jet without a map");
        return apply_partials(map_->component(j.symbol.target), j.indices);
      }
      case SymbolKind::plain: {
        auto it = plain_.find(j.symbol.name);
        if (it == plain_.end()) throw std::invalid_argument("unbound symbol '" + j.symbol.name + "'");
        check_parity(it->second, j.symbol);
        return apply_partials(it->second, j.indices);
      }
      case SymbolKind::composite: {
        if (!map_) throw std::invalid_argument("composite jet without a map");
        auto it = composite_.find(j.symbol.name);
        if (it == composite_.end()) throw std::invalid_argument("unbound symbol '" + j.symbol.name + "'");
        check_parity(it->second, j.symbol);
        return substitute(apply_partials(it->second, j.indices), *map_);
      }
    }
    throw std::logic_error("unreachable symbol kind");
  }

  Dims source_;
  const SuperMap* map_;
  std::map<std::string, SuperPolynomial> composite_;
  std::map<std::string, SuperPolynomial> plain_;
  std::map<Jet, SuperPolynomial> cache_;
};

}  // namespace supercalc
