#pragma once

#include <array>
#include <optional>
#include <string>

#include "jetlin/expr.hpp"
#include "jetlin/jet.hpp"
#include "jetlin/ratfunc.hpp"
#include "jetlin/series.hpp"

namespace jetlin {

/// (x1, x2) -> (f1(x1, x2), f2(x1, x2)). When the inverse is known it is
/// stored in the same variable names, for the new coordinates.
struct PointTransform {
  Expr f1;
  Expr f2;
  std::optional<std::array<Expr, 2>> inverse;

  static PointTransform identity();
  /// Parses both components; x, y are accepted as aliases of x1, x2. Tries
  /// to find the inverse symbolically.
  static PointTransform parse(std::string_view f1, std::string_view f2);

  Point apply(const Point& p) const;
  std::array<std::array<Scalar, 2>, 2> jacobian(const Point& p) const;
};

/// outer o inner; the inverse is carried along when both are known.
PointTransform compose(const PointTransform& outer, const PointTransform& inner);

/// Inverse for affine maps and for maps that can be solved one variable
/// at a time, each occurring once in its equation (shears, exp/log
/// changes, swaps). nullopt otherwise.
std::optional<std::array<Expr, 2>> symbolic_inverse(const Expr& f1, const Expr& f2);

/// Truncated Taylor data of a map at a source point: f[i] is a series in
/// the displacement from `source` whose constant term is the image point.
struct MapJet {
  Point source;
  std::array<ScalarSeries, 2> f;

  int order() const { return std::min(f[0].order(), f[1].order()); }
  Point target() const { return {f[0].constant(), f[1].constant()}; }
  static MapJet identity(const Point& p, int order);
};

MapJet taylor_map(const PointTransform& f, const Point& p, int order);
/// outer o inner, where outer.source is inner.target().
MapJet compose(const MapJet& outer, const MapJet& inner);
/// Jet of f^-1 at f(p), by fixed-point iteration on the series.
MapJet inverse_jet(const MapJet& f);
MapJet inverse_jet(const PointTransform& f, const Point& p, int order);

/// The equation satisfied by images of solution curves, in the new
/// coordinates. Needs the inverse of f.
Section pushforward_equation(const PointTransform& f, const Section& s);

/// Coefficients of the transformed equation composed with f, i.e. as
/// functions of the old coordinates. Needs no inverse.
std::array<RatFunc, 4> pushforward_source_form(const PointTransform& f, const Section& s);

/// Lifting to J^k through a map jet of order >= k + 2 at base(theta).
JetPoint lift_jet(const MapJet& f, const JetPoint& theta);
JetPoint lift_jet(const PointTransform& f, const JetPoint& theta);
/// The same lifting computed from the source form by the chain rule, with
/// no inversion of f.
JetPoint lift_jet_direct(const PointTransform& f, const JetPoint& theta);

struct InitialValue {
  double x0 = 0;
  double y0 = 0;
  double p0 = 0;
};

struct CurveReport {
  double max_residual = 0;
  int points_checked = 0;
  bool used_pushforward = false;
};

/// Integrates s from the initial value over [x0, x0 + span] with RK4, maps
/// the solution through f and measures how far the image curve is from
/// solving the transformed equation.
CurveReport solution_curve_oracle(const PointTransform& f, const Section& s, const InitialValue& ivp, double span = 1.0,
                                  int steps = 10000);

}  // namespace jetlin
