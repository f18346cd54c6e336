#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jetlin/expr.hpp"
#include "jetlin/scalar.hpp"

namespace jetlin {

using VarId = std::uint32_t;

/// Process-wide interning of polynomial indeterminates. An indeterminate is
/// either a named variable or an opaque transcendental atom such as
/// exp(x1*x2), which remembers its defining call for differentiation and
/// evaluation. Thread-safe.
class VarTable {
 public:
  static VarId intern(std::string_view name);
  /// Interns the call expression (whose argument must already be in normal
  /// form) as an atom keyed by its rendering.
  static VarId intern_atom(const Expr& call);
  static std::string name(VarId id);
  static bool is_atom(VarId id);
  /// The defining call of an atom.
  static Expr atom(VarId id);
};

/// Exponent vector, sorted by VarId, exponents > 0.
using Monomial = std::vector<std::pair<VarId, std::uint32_t>>;

struct MonomialOrder {
  // Graded, then lexicographic on (var id, exponent).
  bool operator()(const Monomial& a, const Monomial& b) const;
};

Monomial monomial_mul(const Monomial& a, const Monomial& b);
std::uint32_t total_degree(const Monomial& m);

/// Sparse multivariate polynomial over Q.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Poly() = default;
  Poly(int c) : Poly(Rational(c)) {}
  Poly(Rational c);
  static Poly variable(VarId v);
  static Poly variable(std::string_view name) { return variable(VarTable::intern(name)); }
  static Poly term(Monomial m, Rational c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }
  std::uint32_t degree() const;
  std::uint32_t degree_in(VarId v) const;
  /// Largest monomial in MonomialOrder with its coefficient.
  const std::pair<const Monomial, Rational>& leading() const { return *terms_.rbegin(); }
  std::vector<VarId> variables() const;
  bool contains_atom() const;

  /// Coefficients of v^0, v^1, ..., v^degree_in(v).
  std::vector<Poly> coefficients_in(VarId v) const;
  Poly derivative(VarId v) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  Poly pow(unsigned n) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Poly& a, const Poly& b);

  /// Generic evaluation over a commutative ring; `value` maps VarId -> R and
  /// `constant` maps Rational -> R.
  template <class R, class Value, class Constant>
  R evaluate(const Value& value, const Constant& constant) const {
    R acc = constant(Rational(0));
    std::map<std::pair<VarId, std::uint32_t>, R> powers;
    for (const auto& [mono, c] : terms_) {
      R t = constant(c);
      for (const auto& [v, e] : mono) {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it == powers.end()) {
          R base = value(v), p = base;
          for (std::uint32_t k = 1; k < e; ++k) p = p * base;
          it = powers.emplace(key, p).first;
        }
        t = t * it->second;
      }
      acc = acc + t;
    }
    return acc;
  }

  /// Evaluates with Scalars; exact when all values are exact.
  Scalar evaluate(const std::function<Scalar(VarId)>& value) const;

  /// Exact quotient if `divisor` divides this polynomial, otherwise nullopt.
  std::optional<Poly> exact_divide(const Poly& divisor) const;

  /// Sum of terms, ordered graded-lex by variable name for a stable rendering.
  Expr to_expr() const;

 private:
  Terms terms_;
};

}  // namespace jetlin
