#pragma once

#include <cstdint>
#include <random>

#include "jetlin/fieldlift.hpp"
#include "jetlin/jet.hpp"
#include "jetlin/pointmap.hpp"

namespace jetlin {

/// Seeded generator for test data. Uses raw mt19937_64 output only, so a
/// seed gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  long integer(long lo, long hi);
  /// p/q in lowest terms with |p| <= box * q, 1 <= q <= max_denominator.
  Rational rational(long box = 10, long max_denominator = 5);
  /// Like rational() but never zero.
  Rational nonzero_rational(long box = 10, long max_denominator = 5);
  double uniform(double lo, double hi);
  bool coin(double p_true = 0.5);

 private:
  std::mt19937_64 engine_;
};

JetPoint random_jet(Rng& rng, int order, long box = 10, long max_denominator = 5);
Point random_point(Rng& rng, long box = 3, long max_denominator = 4);

/// sum of c x1^a x2^b over a + b in [min_degree, degree], each term kept
/// with probability `density`.
Expr random_polynomial(Rng& rng, int degree, int min_degree = 0, double density = 0.6, long box = 3);

/// Polynomial in a single variable shifted to vanish to order 2 at `at`.
Expr random_flat_polynomial(Rng& rng, const std::string& variable, const Scalar& at, int degree);

/// x -> A x + b with A invertible; inverse attached.
PointTransform random_affine(Rng& rng);
/// Linear part only, b = 0.
PointTransform random_linear(Rng& rng);
/// (x1, x2 + q(x1)) or (x1 + q(x2), x2) with polynomial q; inverse attached.
PointTransform random_shear(Rng& rng, int degree = 3);
/// affine o shear o affine o shear, with a polynomial inverse.
PointTransform random_polynomial_transform(Rng& rng);
/// Fixes p and is tangent to the identity there: two shears by
/// polynomials vanishing to second order at p.
PointTransform random_identity_tangent(Rng& rng, const Point& p, int degree = 4);

PolynomialField random_field(Rng& rng, int degree = 2);
Section random_section(Rng& rng, int degree = 2);

}  // namespace jetlin
