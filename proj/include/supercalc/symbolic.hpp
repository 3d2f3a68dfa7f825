#pragma once

// Abstract expressions: signed ordered products of jets (iterated partial
// derivatives of named symbols), kept in a canonical form under
// supercommutativity.

#include "supercalc/algebra.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace supercalc {

/// How a symbol depends on the source coordinates.
///  - component: a map component y^b or zeta^b, a function of the source;
///  - plain:     a function of the source coordinates themselves;
///  - composite: a function of the target coordinates, composed with the map.
/// The enumerator order is the first canonical sort key, so composite jets
/// sit to the right of the component jets they multiply.
enum class SymbolKind : std::uint8_t { component = 0, plain = 1, composite = 2 };

struct Symbol {
  SymbolKind kind = SymbolKind::plain;
  std::string name;
  Parity parity = Parity::even;
  Coordinate target{};  // meaningful for components only

  static Symbol component(Coordinate b) {
    return {SymbolKind::component, to_token(b), b.parity, b};
  }
  static Symbol composite(std::string name, Parity parity) {
    return {SymbolKind::composite, std::move(name), parity, {}};
  }
  static Symbol plain(std::string name, Parity parity) {
    return {SymbolKind::plain, std::move(name), parity, {}};
  }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// A user-facing function symbol f with a fixed arity and parity.
struct FunctionSymbol {
  std::string name = "f";
  int arity = 0;
  Parity parity = Parity::even;
};

/// indices[0] is the outermost derivative: {s, (c1, c2)} means d_c1 d_c2 s.
struct Jet {
  Symbol symbol;
  std::vector<Coordinate> indices;

  Parity parity() const {
    Parity p = symbol.parity;
    for (const auto& c : indices) p += c.parity;
    return p;
  }

  friend auto operator<=>(const Jet&, const Jet&) = default;
};

namespace detail {

/// Sorts `items` by adjacent transpositions, flipping the sign for every
/// exchange of two odd items. Returns nullopt if two equal odd items remain
/// adjacent (the product vanishes), otherwise the accumulated sign.
template <class T, class ParityOf>
std::optional<int> supersort(std::vector<T>& items, ParityOf parity_of) {
  int sign = 1;
  for (std::size_t i = 1; i < items.size(); ++i) {
    for (std::size_t j = i; j > 0 && items[j] < items[j - 1]; --j) {
      if (is_odd(parity_of(items[j])) && is_odd(parity_of(items[j - 1]))) sign = -sign;
      std::swap(items[j], items[j - 1]);
    }
  }
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i] == items[i - 1] && is_odd(parity_of(items[i]))) return std::nullopt;
  }
  return sign;
}

}  // namespace detail

struct SignedJet {
  int sign = 1;
  Jet jet;
};

/// Sorts derivative indices into canonical order; nullopt when an odd index repeats.
inline std::optional<SignedJet> normalize_jet(Jet j) {
  auto sign = detail::supersort(j.indices, [](const Coordinate& c) { return c.parity; });
  if (!sign) return std::nullopt;
  return SignedJet{*sign, std::move(j)};
}

struct Term {
  Rational coeff{1};
  std::vector<Jet> factors;

  Parity parity() const {
    Parity p = Parity::even;
    for (const auto& j : factors) p += j.parity();
    return p;
  }

  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.factors == b.factors;
  }
};

inline std::optional<Term> normalize_term(Term t) {
  if (t.coeff == 0) return std::nullopt;
  for (auto& j : t.factors) {
    auto n = normalize_jet(std::move(j));
    if (!n) return std::nullopt;
    if (n->sign < 0) t.coeff = -t.coeff;
    j = std::move(n->jet);
  }
  auto sign = detail::supersort(t.factors, [](const Jet& j) { return j.parity(); });
  if (!sign) return std::nullopt;
  if (*sign < 0) t.coeff = -t.coeff;
  return t;
}

/// Canonical sum of terms: sorted by factor list, like terms merged, no zeros.
class Expression {
 public:
  Expression() = default;

  template <class Range>
  static Expression from_terms(Range&& terms) {
    std::map<std::vector<Jet>, Rational> collected;
    for (auto&& t : terms) {
      auto n = normalize_term(std::forward<decltype(t)>(t));
      if (!n) continue;
      auto [it, inserted] = collected.try_emplace(std::move(n->factors), n->coeff);
      if (!inserted) it->second += n->coeff;
    }
    Expression e;
    e.terms_.reserve(collected.size());
    for (auto& [factors, c] : collected) {
      if (c != 0) e.terms_.push_back(Term{c, factors});
    }
    return e;
  }

  static Expression single(Term t) { return from_terms(std::vector<Term>{std::move(t)}); }
  static Expression constant(const Rational& c) { return single(Term{c, {}}); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend Expression operator+(const Expression& a, const Expression& b) {
    std::vector<Term> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(std::move(all));
  }
  friend Expression operator*(const Rational& s, const Expression& e) {
    std::vector<Term> all = e.terms_;
    for (auto& t : all) t.coeff *= s;
    return from_terms(std::move(all));
  }
  friend Expression operator-(const Expression& e) { return Rational{-1} * e; }
  friend Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

  friend bool operator==(const Expression&, const Expression&) = default;

 private:
  std::vector<Term> terms_;
};

inline bool expr_equal(const Expression& a, const Expression& b) { return a == b; }

inline Jet make_jet(Symbol s, std::vector<Coordinate> indices = {}) { return Jet{std::move(s), std::move(indices)}; }

// ---------------------------------------------------------------------------
// Rendering

inline std::string to_text(const Jet& j) {
  if (j.indices.empty()) return j.symbol.name;
  std::string out = "D[";
  for (std::size_t i = 0; i < j.indices.size(); ++i) {
    if (i) out += ",";
    out += to_token(j.indices[i]);
  }
  return out + "](" + j.symbol.name + ")";
}

namespace detail {

inline std::string latex_coordinate(Coordinate c) {
  std::string base;
  if (c.space == Space::source) {
    base = is_odd(c.parity) ? "\\xi" : "x";
  } else {
    base = is_odd(c.parity) ? "\\zeta" : "y";
  }
  return base + "^{" + std::to_string(c.ordinal) + "}";
}

inline std::string latex_symbol(const Symbol& s) {
  if (s.kind == SymbolKind::component) return latex_coordinate(s.target);
  return s.name;
}

template <class Coeff, class Factor>
std::string render_terms(const std::vector<Term>& terms, const char* joiner, Coeff coeff, Factor factor) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (first) {
      if (t.coeff < 0) os << "-";
    } else {
      os << (t.coeff < 0 ? " - " : " + ");
    }
    first = false;
    Rational mag = abs(t.coeff);
    bool need_joiner = false;
    if (mag != 1 || t.factors.empty()) {
      os << coeff(mag);
      need_joiner = true;
    }
    for (const auto& j : t.factors) {
      if (need_joiner) os << joiner;
      os << factor(j);
      need_joiner = true;
    }
  }
  return os.str();
}

}  // namespace detail

inline std::string to_latex(const Jet& j) {
  const std::string sym = detail::latex_symbol(j.symbol);
  if (j.indices.empty()) return sym;
  std::string den;
  for (std::size_t i = 0; i < j.indices.size(); ++i) {
    if (i) den += " ";
    den += "\\partial " + detail::latex_coordinate(j.indices[i]);
  }
  const std::string power = j.indices.size() > 1 ? "^{" + std::to_string(j.indices.size()) + "}" : "";
  return "\\frac{\\partial" + power + " " + sym + "}{" + den + "}";
}

inline std::string to_text(const Expression& e) {
  return detail::render_terms(
      e.terms(), " * ", [](const Rational& r) { return to_string(r); },
      [](const Jet& j) { return to_text(j); });
}

inline std::string to_latex(const Expression& e) {
  return detail::render_terms(
      e.terms(), " ",
      [](const Rational& r) {
        if (r.get_den() == 1) return r.get_num().get_str();
        return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
      },
      [](const Jet& j) {
        auto s = to_latex(j);
        return j.indices.empty() ? s : "\\left(" + s + "\\right)";
      });
}

}  // namespace supercalc
