#include "jetlin/scalar.hpp"

#include <cmath>
#include <sstream>

#include "jetlin/errors.hpp"

namespace jetlin {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw DomainError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Rational ratio(long p, long q) {
  if (q == 0) throw DomainError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

const Rational& Scalar::exact() const {
  if (!is_exact()) throw DomainError("inexact (floating-point) value where an exact rational is required");
  return std::get<Rational>(v_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(v_).get_d();
  return std::get<double>(v_);
}

bool Scalar::is_zero() const {
  if (is_exact()) return sgn(std::get<Rational>(v_)) == 0;
  return std::get<double>(v_) == 0.0;
}

bool Scalar::is_finite() const { return is_exact() || std::isfinite(std::get<double>(v_)); }

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<Rational>(v_));
  double d = std::get<double>(v_);
  return (d > 0) - (d < 0);
}

std::string Scalar::str() const {
  if (is_exact()) return to_string(std::get<Rational>(v_));
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(v_);
  return os.str();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<Rational>(v_) += std::get<Rational>(o.v_);
  else
    v_ = to_double() + o.to_double();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<Rational>(v_) -= std::get<Rational>(o.v_);
  else
    v_ = to_double() - o.to_double();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<Rational>(v_) *= std::get<Rational>(o.v_);
  else
    v_ = to_double() * o.to_double();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw SingularityError("division by zero");
  if (is_exact() && o.is_exact())
    std::get<Rational>(v_) /= std::get<Rational>(o.v_);
  else
    v_ = to_double() / o.to_double();
  return *this;
}

Scalar operator-(const Scalar& a) {
  if (a.is_exact()) return Scalar(Rational(-std::get<Rational>(a.v_)));
  return Scalar(-std::get<double>(a.v_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
  return a.to_double() == b.to_double();
}

Scalar ipow(const Scalar& base, long exponent) {
  if (exponent < 0) return Scalar(1) / ipow(base, -exponent);
  Scalar result(1), b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

}  // namespace jetlin
