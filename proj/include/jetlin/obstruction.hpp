#pragma once

#include <array>
#include <optional>
#include <string>

#include "jetlin/isotropy.hpp"
#include "jetlin/pointmap.hpp"
#include "jetlin/ratfunc.hpp"

namespace jetlin {

/// Horizontal frame h_r (r = 1, 2) with h_r^i = delta^i_r, vanishing first
/// derivatives, and higher derivatives f^i_{..., r}.
struct HorizontalFrame {
  int level = 1;
  Point base{Scalar(0), Scalar(0)};
  /// second[i-1][jk position][r-1] = f^i_{jk,r}
  std::array<std::array<std::array<Scalar, 2>, 3>, 2> second;
  /// third[i-1][jkl position][r-1] = f^i_{jkl,r}; level 2 only
  std::array<std::array<std::array<Scalar, 2>, 4>, 2> third;

  const Scalar& f(int i, MultiIndex jk, int r) const;
  /// The frame vector h_r as a jet of order level + 1.
  VectorFieldJet vector(int r) const;
};

/// H_theta_1 from its closed form.
HorizontalFrame horizontal_frame_1_closed(const JetPoint& theta1);
/// H_theta_1 by solving the isotropy-space system with the symmetry
/// f^i_{jk,r} = f^i_{jr,k}. Throws InternalInconsistencyError if the
/// solution is not unique.
HorizontalFrame horizontal_frame_1_solved(const JetPoint& theta1);
/// Both routes; throws InternalInconsistencyError if they differ.
HorizontalFrame horizontal_frame_1(const JetPoint& theta1);

/// H_theta_2 over the given level-1 frame, by solving the k = 1 system.
HorizontalFrame horizontal_frame_2(const JetPoint& theta2, const HorizontalFrame& level1);

/// The tensor omega^i_{jk} in grade-2 coordinates (X^1_11, X^1_12, X^1_22,
/// X^2_11, X^2_12, X^2_22), i.e. F1 e1 + F2 e2.
using OmegaTensor = Vector;

struct ObstructionValue {
  Scalar F1;
  Scalar F2;
  std::vector<Scalar> omega() const;
};

ObstructionValue obstruction_closed_form(const JetPoint& theta2);
/// Antisymmetrized level-2 frame coefficients, scaled by the fixed
/// calibration constant.
ObstructionValue obstruction_constructive(const JetPoint& theta2);
/// Raw antisymmetrizations f^1_{11[1,2]}, f^2_{22[1,2]} with no scaling.
std::array<Scalar, 2> antisymmetrized_frame(const JetPoint& theta2);
/// Second-order part of [h_1, h_2] for the level-2 frame.
std::vector<Scalar> frame_bracket(const JetPoint& theta2);
/// Factor relating antisymmetrized frame coefficients to (F1, F2).
Rational antisymmetrization_scale();

/// Closed form checked against the constructive route.
ObstructionValue obstruction_at(const JetPoint& theta2);

/// (F1, F2) of a section as expressions in x1, x2.
std::array<Expr, 2> obstruction_form(const Section& s);

struct Verdict {
  enum class Kind { Linearizable, NumericallyLinearizable, NotLinearizable, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::array<Expr, 2> F;
  std::array<std::optional<ZeroVerdict>, 2> tests;
  std::optional<Point> witness;
  std::array<Scalar, 2> witness_values;
  std::string method;
  ZeroTestOptions options;
};

std::string to_string(Verdict::Kind k);

Verdict linearizable(const Section& s, const ZeroTestOptions& options = {});

struct InvarianceReport {
  std::string kind;  // "identity-tangent", "affine" or "factored"
  bool passed = false;
  double deviation = 0;
  ObstructionValue before;
  ObstructionValue after;
};

/// omega transformed by the linear part A of an affine map:
/// det(A)^-1 A^i_a omega^a_bc B^b_j B^c_k with B = A^-1.
std::vector<Scalar> transform_omega(const std::vector<Scalar>& omega, const std::array<std::array<Scalar, 2>, 2>& A);

InvarianceReport invariance_check(const PointTransform& f, const JetPoint& theta2, double tolerance = 1e-6);

}  // namespace jetlin
