#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace jetlin {

using Rational = mpq_class;

/// Parses "n", "-n" or "p/q" into a canonical rational.
Rational parse_rational(std::string_view text);
/// p/q in lowest terms. mpq_class(p, q) does not reduce on its own.
Rational ratio(long p, long q);
std::string to_string(const Rational& q);
Rational factorial(int n);

/// A number that stays an exact rational for as long as every input was
/// exact, and degrades to double otherwise.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int n) : v_(Rational(n)) {}
  Scalar(long n) : v_(Rational(n)) {}
  Scalar(Rational q) : v_(std::move(q)) {}
  Scalar(double d) : v_(d) {}

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  /// Throws DomainError when the value is a double.
  const Rational& exact() const;
  double to_double() const;
  bool is_zero() const;
  bool is_finite() const;
  int sign() const;
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws SingularityError("division by zero") on a zero divisor.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a);

  /// Exact comparison when both are exact; numeric comparison otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  std::variant<Rational, double> v_;
};

Scalar ipow(const Scalar& base, long exponent);
Scalar abs(const Scalar& s);

}  // namespace jetlin
