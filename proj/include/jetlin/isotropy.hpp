#pragma once

#include <string>
#include <vector>

#include "jetlin/fieldlift.hpp"
#include "jetlin/linalg.hpp"

namespace jetlin {

/// Homogeneous linear system in named unknowns X^i_tau.
struct LinearSystem {
  Matrix matrix;
  std::vector<std::string> unknowns;
};

/// A subspace of vector field jets with coefficients of orders
/// min_order..order, in the coordinate ordering of
/// VectorFieldJet::to_vector. The basis is in reduced echelon form.
struct Subspace {
  int min_order = 0;
  int order = 0;
  Point base{Scalar(0), Scalar(0)};
  std::vector<Vector> basis;

  std::size_t ambient_dimension() const { return VectorFieldJet::vector_size(order, min_order); }
  std::size_t dimension() const { return basis.size(); }
  VectorFieldJet element(std::size_t n) const;
  bool contains(const Vector& v) const;
  bool contains(const VectorFieldJet& X) const;
  bool contains(const Subspace& other) const;
  /// Truncation to coefficients of order <= r.
  Subspace projected(int r) const;
  /// The same elements with zero coefficients down to order `min`.
  Subspace widened(int min) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.min_order == b.min_order && a.order == b.order && a.basis == b.basis;
  }
};

Subspace make_subspace(int min_order, int order, const Point& base, const std::vector<Vector>& spanning);

/// Rows D_sigma(psi^i)(theta) = 0 for |sigma| <= depth, in unknowns of
/// orders min_order..depth + 2.
LinearSystem psi_system(const JetPoint& theta, int depth, int min_order);

/// g_theta_k: jets of order k + 2 vanishing at p whose lift fixes theta_k.
Subspace isotropy_algebra(const JetPoint& theta_k);
/// A_theta_{k+1}: jets of order k + 2 whose lift is tangent to theta_{k+1}.
Subspace isotropy_space(const JetPoint& theta_k1);

/// dim of the orbit of theta_k under point transformations: the rank of
/// X -> X^(k) on jets of order k + 2 (a space of dimension
/// vector_size(k + 2)).
std::size_t orbit_dimension(const JetPoint& theta_k);

/// The symbol of g_theta_0 in the grade-2 coordinates (X^1_11, X^1_12,
/// X^1_22, X^2_11, X^2_12, X^2_22), with basis (e1, e2). Checked against
/// the computed isotropy algebra.
Subspace symbol_g(const JetPoint& theta0);
Vector generator_e1();
Vector generator_e2();

/// All of V (x) S^d V*: grade-d coefficients X^i_tau, |tau| = d.
Subspace full_grade(int d);
/// First prolongation of a grade-d subspace.
Subspace prolong(const Subspace& g);

/// [d_j, X] for a homogeneous grade-d coordinate vector: the grade d - 1
/// vector of coefficients X^i_{tau j}.
Vector grade_derivative(const Vector& x, int d, int j);

struct SpencerComplex {
  int top_grade = 0;
  std::array<std::size_t, 3> dims{};  // g_d, g_{d-1} (x) V*, g_{d-2} (x) L2 V*
  Matrix d0;                          // g_d -> g_{d-1} (x) V*
  Matrix d1;                          // g_{d-1} (x) V* -> g_{d-2} (x) L2 V*
  Matrix d2;                          // g_{d-2} (x) L2 V* -> 0
  std::array<std::size_t, 3> cohomology{};
};

/// The complex 0 -> g_d -> g_{d-1} (x) V* -> g_{d-2} (x) L2 V* -> 0 for
/// graded pieces given as (g_d, g_{d-1}, g_{d-2}). Throws DomainError if
/// [V, g_{i+1}] is not contained in g_i.
SpencerComplex spencer_complex(const Subspace& gd, const Subspace& gd1, const Subspace& gd2);
/// 0 -> g^(1) -> g (x) V* -> L0/L1 (x) L2 V* -> 0.
SpencerComplex symbol_spencer_complex(const JetPoint& theta0);

}  // namespace jetlin
