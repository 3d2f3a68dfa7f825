#pragma once

// Exact arithmetic in the supercommutative algebra of functions on R^{n|m},
// with even coefficients restricted to polynomials over the rationals.

#include "supercalc/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace supercalc {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<unsigned>(a) ^ static_cast<unsigned>(b)) & 1u);
}
constexpr Parity& operator+=(Parity& a, Parity b) { return a = a + b; }
constexpr Parity operator*(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<unsigned>(a) & static_cast<unsigned>(b));
}
constexpr bool is_odd(Parity p) { return p == Parity::odd; }
/// (-1)^p
constexpr int sign_of(Parity p) { return is_odd(p) ? -1 : 1; }

inline std::string_view to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

inline Parity parse_parity(std::string_view s) {
  if (s == "even" || s == "0") return Parity::even;
  if (s == "odd" || s == "1") return Parity::odd;
  throw std::invalid_argument("unknown parity '" + std::string{s} + "'");
}

enum class Space : std::uint8_t { source = 0, target = 1 };

/// Dimensions (even|odd) of a coordinate superspace.
struct Dims {
  int even = 0;
  int odd = 0;

  int total() const { return even + odd; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

inline std::string to_string(Dims d) {
  return std::to_string(d.even) + "|" + std::to_string(d.odd);
}

/// A coordinate of the source (x, xi) or target (y, zeta) superspace.
/// The defaulted ordering (space, parity, ordinal) is the canonical sort
/// order used for derivative indices; even sorts before odd.
struct Coordinate {
  Space space = Space::source;
  Parity parity = Parity::even;
  int ordinal = 1;

  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

inline Coordinate source_even(int k) { return {Space::source, Parity::even, k}; }
inline Coordinate source_odd(int k) { return {Space::source, Parity::odd, k}; }
inline Coordinate target_even(int k) { return {Space::target, Parity::even, k}; }
inline Coordinate target_odd(int k) { return {Space::target, Parity::odd, k}; }

inline bool in_bounds(Coordinate c, Dims d) {
  const int bound = is_odd(c.parity) ? d.odd : d.even;
  return c.ordinal >= 1 && c.ordinal <= bound;
}

/// Tokens: x<k>, xi<k> in the source space; y<k>, zeta<k> in the target.
inline std::string to_token(Coordinate c) {
  std::string prefix;
  if (c.space == Space::source) {
    prefix = is_odd(c.parity) ? "xi" : "x";
  } else {
    prefix = is_odd(c.parity) ? "zeta" : "y";
  }
  return prefix + std::to_string(c.ordinal);
}

inline Coordinate parse_coordinate(std::string_view token) {
  auto fail = [&] { throw std::invalid_argument("malformed coordinate '" + std::string{token} + "'"); };
  Coordinate c;
  std::string_view digits;
  if (token.starts_with("xi")) {
    c = {Space::source, Parity::odd, 0};
    digits = token.substr(2);
  } else if (token.starts_with("x")) {
    c = {Space::source, Parity::even, 0};
    digits = token.substr(1);
  } else if (token.starts_with("zeta")) {
    c = {Space::target, Parity::odd, 0};
    digits = token.substr(4);
  } else if (token.starts_with("y")) {
    c = {Space::target, Parity::even, 0};
    digits = token.substr(1);
  } else {
    fail();
  }
  if (digits.empty() || digits.size() > 6 ||
      !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    fail();
  }
  c.ordinal = std::stoi(std::string{digits});
  if (c.ordinal < 1) fail();
  return c;
}

/// Sorted product of odd generators; the empty list is the unit.
class GrassmannMonomial {
 public:
  GrassmannMonomial() = default;
  explicit GrassmannMonomial(std::vector<int> generators) : generators_(std::move(generators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i] < 1 || (i > 0 && generators_[i - 1] >= generators_[i])) {
        throw std::invalid_argument("Grassmann monomial generators must be positive and strictly increasing");
      }
    }
  }

  const std::vector<int>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }
  Parity parity() const { return (generators_.size() % 2) ? Parity::odd : Parity::even; }
  bool contains(int g) const { return std::binary_search(generators_.begin(), generators_.end(), g); }

  friend auto operator<=>(const GrassmannMonomial&, const GrassmannMonomial&) = default;

 private:
  std::vector<int> generators_;
};

struct SignedMonomial {
  int sign = 1;
  GrassmannMonomial monomial;
};

/// Product a*b sorted to increasing order. Sign is the parity of the sorting
/// permutation; nullopt when a and b share a generator.
inline std::optional<SignedMonomial> mul_monomials(const GrassmannMonomial& a, const GrassmannMonomial& b) {
  const auto& ga = a.generators();
  const auto& gb = b.generators();
  std::vector<int> out;
  out.reserve(ga.size() + gb.size());
  std::size_t i = 0, j = 0;
  std::size_t inversions = 0;
  while (i < ga.size() || j < gb.size()) {
    if (j == gb.size() || (i < ga.size() && ga[i] < gb[j])) {
      out.push_back(ga[i++]);
    } else if (i == ga.size() || gb[j] < ga[i]) {
      // gb[j] jumps over the remaining elements of a
      inversions += ga.size() - i;
      out.push_back(gb[j++]);
    } else {
      return std::nullopt;
    }
  }
  SignedMonomial result;
  result.sign = (inversions % 2) ? -1 : 1;
  result.monomial = GrassmannMonomial{std::move(out)};
  return result;
}

/// Commuting monomial: sorted (ordinal, exponent) pairs, zero exponents absent.
class EvenMonomial {
 public:
  EvenMonomial() = default;
  explicit EvenMonomial(const std::map<int, int>& exponents) {
    for (auto [ordinal, e] : exponents) {
      if (ordinal < 1 || e < 0) throw std::invalid_argument("invalid even monomial exponent");
      if (e > 0) powers_.emplace_back(ordinal, e);
    }
  }

  static EvenMonomial variable(int ordinal, int exponent = 1) { return EvenMonomial{{{ordinal, exponent}}}; }

  const std::vector<std::pair<int, int>>& powers() const { return powers_; }
  bool empty() const { return powers_.empty(); }

  int exponent(int ordinal) const {
    for (auto [o, e] : powers_) {
      if (o == ordinal) return e;
    }
    return 0;
  }

  int degree() const {
    int d = 0;
    for (auto [o, e] : powers_) d += e;
    return d;
  }

  friend EvenMonomial operator*(const EvenMonomial& a, const EvenMonomial& b) {
    EvenMonomial out;
    out.powers_.reserve(a.powers_.size() + b.powers_.size());
    std::size_t i = 0, j = 0;
    while (i < a.powers_.size() || j < b.powers_.size()) {
      if (j == b.powers_.size() || (i < a.powers_.size() && a.powers_[i].first < b.powers_[j].first)) {
        out.powers_.push_back(a.powers_[i++]);
      } else if (i == a.powers_.size() || b.powers_[j].first < a.powers_[i].first) {
        out.powers_.push_back(b.powers_[j++]);
      } else {
        out.powers_.emplace_back(a.powers_[i].first, a.powers_[i].second + b.powers_[j].second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  /// Lowers the exponent of `ordinal` by one; returns the old exponent
  /// (zero means the derivative vanishes and *this is untouched).
  int lower(int ordinal) {
    for (auto it = powers_.begin(); it != powers_.end(); ++it) {
      if (it->first == ordinal) {
        const int e = it->second;
        if (--it->second == 0) powers_.erase(it);
        return e;
      }
    }
    return 0;
  }

  friend auto operator<=>(const EvenMonomial&, const EvenMonomial&) = default;

 private:
  std::vector<std::pair<int, int>> powers_;
};

/// Key ordering is lexicographic on (odd list, even exponents); the
/// serialization order follows it.
struct MonomialKey {
  GrassmannMonomial odd;
  EvenMonomial even;

  friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
};

class SuperPolynomial {
 public:
  using TermMap = std::map<MonomialKey, Rational>;

  SuperPolynomial() = default;
  explicit SuperPolynomial(Dims dims) : dims_(dims) {}

  static SuperPolynomial constant(Dims dims, const Rational& c) {
    SuperPolynomial p{dims};
    p.add_term({}, c);
    return p;
  }
  static SuperPolynomial even_variable(Dims dims, int ordinal) {
    if (ordinal < 1 || ordinal > dims.even) throw std::out_of_range("even variable out of range");
    SuperPolynomial p{dims};
    p.add_term({GrassmannMonomial{}, EvenMonomial::variable(ordinal)}, 1);
    return p;
  }
  static SuperPolynomial odd_variable(Dims dims, int ordinal) {
    if (ordinal < 1 || ordinal > dims.odd) throw std::out_of_range("odd variable out of range");
    SuperPolynomial p{dims};
    p.add_term({GrassmannMonomial{{ordinal}}, EvenMonomial{}}, 1);
    return p;
  }
  static SuperPolynomial variable(Dims dims, Coordinate c) {
    return is_odd(c.parity) ? odd_variable(dims, c.ordinal) : even_variable(dims, c.ordinal);
  }

  Dims dims() const { return dims_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * (even)(odd); validates ordinals against the ambient dims.
  void add_term(const MonomialKey& key, const Rational& c) {
    if (c == 0) return;
    for (int g : key.odd.generators()) {
      if (g > dims_.odd) throw std::out_of_range("odd generator out of range");
    }
    for (auto [o, e] : key.even.powers()) {
      if (o > dims_.even) throw std::out_of_range("even variable out of range");
    }
    accumulate(key, c);
  }

  SuperPolynomial& operator+=(const SuperPolynomial& q) {
    check_dims(q);
    for (const auto& [key, c] : q.terms_) accumulate(key, c);
    return *this;
  }
  SuperPolynomial& operator-=(const SuperPolynomial& q) {
    check_dims(q);
    for (const auto& [key, c] : q.terms_) accumulate(key, -c);
    return *this;
  }
  SuperPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [key, c] : terms_) c *= s;
    }
    return *this;
  }

  friend SuperPolynomial operator+(SuperPolynomial p, const SuperPolynomial& q) { return p += q; }
  friend SuperPolynomial operator-(SuperPolynomial p, const SuperPolynomial& q) { return p -= q; }
  friend SuperPolynomial operator-(SuperPolynomial p) { return p *= Rational{-1}; }
  friend SuperPolynomial operator*(SuperPolynomial p, const Rational& s) { return p *= s; }
  friend SuperPolynomial operator*(const Rational& s, SuperPolynomial p) { return p *= s; }

  friend SuperPolynomial operator*(const SuperPolynomial& p, const SuperPolynomial& q) {
    p.check_dims(q);
    SuperPolynomial out{p.dims_};
    for (const auto& [kp, cp] : p.terms_) {
      for (const auto& [kq, cq] : q.terms_) {
        auto odd = mul_monomials(kp.odd, kq.odd);
        if (!odd) continue;
        Rational c = cp * cq;
        if (odd->sign < 0) c = -c;
        out.accumulate({std::move(odd->monomial), kp.even * kq.even}, c);
      }
    }
    return out;
  }

  friend bool operator==(const SuperPolynomial& p, const SuperPolynomial& q) {
    return p.dims_ == q.dims_ && p.terms_ == q.terms_;
  }

  /// nullopt means mixed parity; the zero polynomial reports even.
  std::optional<Parity> parity() const {
    bool has_even = false, has_odd = false;
    for (const auto& [key, c] : terms_) {
      (is_odd(key.odd.parity()) ? has_odd : has_even) = true;
    }
    if (has_even && has_odd) return std::nullopt;
    return has_odd ? Parity::odd : Parity::even;
  }

  bool is_homogeneous(Parity p) const {
    auto got = parity();
    return is_zero() || (got && *got == p);
  }

  /// Left partial derivative. Odd generator at (1-based) position j of the
  /// sorted monomial contributes (-1)^(j-1).
  SuperPolynomial partial(Coordinate c) const {
    if (!in_bounds(c, dims_)) throw std::out_of_range("coordinate " + to_token(c) + " outside " + to_string(dims_));
    SuperPolynomial out{dims_};
    for (const auto& [key, coeff] : terms_) {
      if (is_odd(c.parity)) {
        const auto& gens = key.odd.generators();
        auto it = std::find(gens.begin(), gens.end(), c.ordinal);
        if (it == gens.end()) continue;
        const auto position = static_cast<std::size_t>(it - gens.begin());
        std::vector<int> rest;
        rest.reserve(gens.size() - 1);
        rest.insert(rest.end(), gens.begin(), it);
        rest.insert(rest.end(), it + 1, gens.end());
        out.accumulate({GrassmannMonomial{std::move(rest)}, key.even}, (position % 2) ? Rational{-coeff} : coeff);
      } else {
        EvenMonomial even = key.even;
        const int e = even.lower(c.ordinal);
        if (e == 0) continue;
        out.accumulate({key.odd, std::move(even)}, coeff * e);
      }
    }
    return out;
  }

  /// Maximum even degree over all terms (0 for the zero polynomial).
  int even_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.even.degree());
    return d;
  }

 private:
  void check_dims(const SuperPolynomial& q) const {
    if (!(dims_ == q.dims_)) {
      throw std::invalid_argument("dimension mismatch: " + to_string(dims_) + " vs " + to_string(q.dims_));
    }
  }

  void accumulate(const MonomialKey& key, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Dims dims_{};
  TermMap terms_;
};

inline SuperPolynomial poly_add(const SuperPolynomial& p, const SuperPolynomial& q) { return p + q; }
inline SuperPolynomial poly_mul(const SuperPolynomial& p, const SuperPolynomial& q) { return p * q; }
inline std::optional<Parity> poly_parity(const SuperPolynomial& p) { return p.parity(); }
inline SuperPolynomial poly_partial(const SuperPolynomial& p, Coordinate c) { return p.partial(c); }

inline SuperPolynomial pow(const SuperPolynomial& p, unsigned k) {
  SuperPolynomial out = SuperPolynomial::constant(p.dims(), 1);
  for (unsigned i = 0; i < k; ++i) out = out * p;
  return out;
}

struct BodySoul {
  SuperPolynomial body;  // xi-free part, a polynomial in x
  SuperPolynomial soul;  // nilpotent supplement
};

inline BodySoul split_body_soul(const SuperPolynomial& p) {
  BodySoul out{SuperPolynomial{p.dims()}, SuperPolynomial{p.dims()}};
  for (const auto& [key, c] : p.terms()) {
    (key.odd.empty() ? out.body : out.soul).add_term(key, c);
  }
  return out;
}

/// Plain-text rendering, e.g. "2*x1^2*xi1*xi2 - 1/3".
inline std::string to_text(const SuperPolynomial& p, Space space = Space::source) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : p.terms()) {
    std::vector<std::string> factors;
    for (auto [o, e] : key.even.powers()) {
      std::string f = to_token({space, Parity::even, o});
      if (e > 1) f += "^" + std::to_string(e);
      factors.push_back(std::move(f));
    }
    for (int g : key.odd.generators()) factors.push_back(to_token({space, Parity::odd, g}));
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = (mag == 1);
    if (!unit || factors.empty()) {
      os << to_string(mag);
      if (!factors.empty()) os << "*";
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

inline std::string to_latex(const SuperPolynomial& p, Space space = Space::source) {
  if (p.is_zero()) return "0";
  auto var = [&](Parity parity, int o) {
    if (space == Space::source) return std::string{is_odd(parity) ? "\\xi" : "x"} + "^{" + std::to_string(o) + "}";
    return std::string{is_odd(parity) ? "\\zeta" : "y"} + "^{" + std::to_string(o) + "}";
  };
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool bare = key.even.empty() && key.odd.empty();
    if (mag != 1 || bare) {
      if (mag.get_den() == 1) {
        os << mag.get_num().get_str();
      } else {
        os << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << "}";
      }
    }
    for (auto [o, e] : key.even.powers()) {
      os << "(" << var(Parity::even, o) << ")";
      if (e > 1) os << "^{" << e << "}";
    }
    for (int g : key.odd.generators()) os << var(Parity::odd, g);
  }
  return os.str();
}

}  // namespace supercalc
