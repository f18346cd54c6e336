#pragma once

#include <array>
#include <vector>

#include "jetlin/jet.hpp"
#include "jetlin/pointmap.hpp"
#include "jetlin/poly.hpp"

namespace jetlin {

/// Partial derivatives X^i_tau (i = 1, 2; |tau| <= m) of a plane vector
/// field at a base point.
class VectorFieldJet {
 public:
  VectorFieldJet() : VectorFieldJet(0, {Scalar(0), Scalar(0)}) {}
  VectorFieldJet(int order, Point base);

  /// Jet of the field (x1, x2) -> (X1, X2) at p.
  static VectorFieldJet of(const Expr& X1, const Expr& X2, const Point& p, int order);

  int order() const { return order_; }
  const Point& base() const { return base_; }
  const Scalar& at(int i, MultiIndex tau) const { return c_[static_cast<std::size_t>(i - 1)].at(tau.position()); }
  Scalar& at(int i, MultiIndex tau) { return c_[static_cast<std::size_t>(i - 1)].at(tau.position()); }

  /// Taylor series of component i in the displacement from the base point.
  ScalarSeries series(int i) const;
  static VectorFieldJet from_series(const ScalarSeries& s1, const ScalarSeries& s2, const Point& base);

  VectorFieldJet truncated(int order) const;
  bool is_exact() const;

  /// Coordinates in the unknown ordering used by the isotropy systems:
  /// component-major, then by |tau|, then tau in MultiIndex order.
  std::vector<Rational> to_vector(int min_order = 0) const;
  static VectorFieldJet from_vector(const std::vector<Rational>& v, int order, const Point& base, int min_order = 0);
  static std::size_t vector_size(int order, int min_order = 0);

  friend bool operator==(const VectorFieldJet& a, const VectorFieldJet& b) {
    return a.order_ == b.order_ && a.base_ == b.base_ && a.c_ == b.c_;
  }

 private:
  int order_;
  Point base_;
  std::array<std::vector<Scalar>, 2> c_;
};

/// Coefficients of [X, Y] = X(Y) - Y(X), one order lower.
VectorFieldJet bracket(const VectorFieldJet& X, const VectorFieldJet& Y);

/// The generating function psi(X) at a 1-jet. X needs order >= 2.
std::array<Scalar, 4> psi(const VectorFieldJet& X, const JetPoint& theta1);

/// The generating function as polynomials in the jet names u_name/x_name.
const std::array<Poly, 4>& psi_polynomials();

/// D_sigma(psi^i) as a polynomial in u- and X-coordinates. Thread-safe and
/// cached.
const Poly& total_derivative_psi_poly(int i, MultiIndex sigma);

/// Values of D_sigma(psi^i), i = 0..3, at theta (order >= |sigma| + 1) with
/// X of order >= |sigma| + 2.
std::array<Scalar, 4> total_derivative_psi(const VectorFieldJet& X, const JetPoint& theta, MultiIndex sigma);

/// A vector field coefficient appearing linearly in D_sigma(psi^i).
struct LinearTerm {
  int component;  // 1 or 2
  MultiIndex tau;
  Scalar coefficient;
};
/// D_sigma(psi^i) at theta as a linear form in the X^j_tau.
std::vector<LinearTerm> total_derivative_psi_form(int i, MultiIndex sigma, const JetPoint& theta);

/// Tangent vector to J^k at a point: dx- and du-components.
struct LiftedVector {
  int order = 0;
  std::array<Scalar, 2> dx;
  std::array<std::vector<Scalar>, 4> du;

  const Scalar& u(int i, MultiIndex sigma) const { return du[static_cast<std::size_t>(i)].at(sigma.position()); }
  /// dx components first, then du by i, then by sigma.
  std::vector<Scalar> flatten() const;
};

/// X^(k) at project(theta, k), where k = theta.order() - 1. X needs order
/// >= k + 2.
LiftedVector lift_field(const VectorFieldJet& X, const JetPoint& theta);
/// The vertical part of lift_field: the evolution derivation of psi(X).
LiftedVector evolution_part(const VectorFieldJet& X, const JetPoint& theta);

/// A vector field given by expressions in x1, x2.
struct PolynomialField {
  Expr X1;
  Expr X2;

  VectorFieldJet jet(const Point& p, int order) const { return VectorFieldJet::of(X1, X2, p, order); }
};

PolynomialField bracket(const PolynomialField& X, const PolynomialField& Y);

/// Jet of order m at p of the time-t flow of X, by RK4 on truncated series.
MapJet flow_jet(const PolynomialField& X, const Point& p, double t, int order, int steps = 16);
Point flow_point(const PolynomialField& X, const Point& p, double t, int steps = 16);

/// Five-point central difference in t of the pushed-forward section's value at p.
std::array<double, 4> flow_oracle(const PolynomialField& X, const Section& s, const Point& p, double dt = 1e-3);

/// Five-point central difference in t of lift_jet(f_t, theta): the lifted field by
/// its definition.
std::vector<double> flow_lift_derivative(const PolynomialField& X, const JetPoint& theta, double dt = 1e-3);

struct HomomorphismReport {
  double max_error = 0;
  std::vector<double> lifted_bracket;
  std::vector<double> bracket_of_lifts;
};

/// Compares [X^(k), Y^(k)] at theta, by finite differences of the lifted
/// components in the jet coordinates, with [X, Y]^(k).
HomomorphismReport homomorphism_check(const PolynomialField& X, const PolynomialField& Y, const JetPoint& theta,
                                      double step = 1e-4);

}  // namespace jetlin
