#pragma once

#include <array>
#include <string>
#include <vector>

#include "jetlin/errors.hpp"
#include "jetlin/expr.hpp"
#include "jetlin/scalar.hpp"

namespace jetlin {

/// Symmetric multi-index over {1, 2}, stored as counts. Multi-indices of one
/// order are enumerated 1..1, 1..12, ..., 2..2, and position() numbers all
/// multi-indices of order <= k consecutively in that order.
struct MultiIndex {
  int r1 = 0;
  int r2 = 0;

  int order() const { return r1 + r2; }
  MultiIndex append(int j) const { return j == 1 ? MultiIndex{r1 + 1, r2} : MultiIndex{r1, r2 + 1}; }
  std::size_t position() const {
    int d = order();
    return static_cast<std::size_t>(d * (d + 1) / 2 + r2);
  }
  static MultiIndex at(std::size_t position);
  static std::size_t count_up_to(int k) { return static_cast<std::size_t>((k + 1) * (k + 2) / 2); }
  static std::vector<MultiIndex> up_to(int k);
  static std::vector<MultiIndex> of_order(int d);

  /// "" for the empty index, "112" for {r1 = 2, r2 = 1}.
  std::string digits() const { return std::string(static_cast<std::size_t>(r1), '1') + std::string(static_cast<std::size_t>(r2), '2'); }
  /// r1! r2!
  Rational factorial_weight() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.position() <=> b.position(); }
};

/// Name of the jet coordinate u^i_sigma ("u0", "u2_12").
std::string u_name(int i, MultiIndex sigma);
/// Name of the vector-field coefficient X^i_tau ("X1", "X2_11").
std::string x_name(int i, MultiIndex tau);

using Point = std::array<Scalar, 2>;

/// An equation y'' = u0 + u1 y' + u2 y'^2 + u3 y'^3 with coefficients in
/// (x1, x2).
struct Section {
  std::array<Expr, 4> u;

  static Section zero() { return Section{}; }
  std::string str() const;
};

class NotInClassError : public Error {
 public:
  using Error::Error;
};

/// Reads the coefficients of a right-hand side in x, y, p (p = y').
Section rhs_to_section(const Expr& rhs);

/// A point of J^k: coordinates u^i_sigma, |sigma| <= k, over a base point.
class JetPoint {
 public:
  JetPoint() : JetPoint(0, {Scalar(0), Scalar(0)}) {}
  JetPoint(int order, Point base);

  int order() const { return order_; }
  const Point& base() const { return base_; }
  const Scalar& u(int i, MultiIndex sigma) const { return coords_[static_cast<std::size_t>(i)].at(sigma.position()); }
  Scalar& u(int i, MultiIndex sigma) { return coords_[static_cast<std::size_t>(i)].at(sigma.position()); }
  const std::vector<Scalar>& component(int i) const { return coords_[static_cast<std::size_t>(i)]; }

  bool is_exact() const;
  /// Number of fiber coordinates, 4 (k+1)(k+2)/2.
  std::size_t fiber_dimension() const { return 4 * MultiIndex::count_up_to(order_); }
  /// dim J^k including the two base coordinates.
  std::size_t total_dimension() const { return fiber_dimension() + 2; }

  friend bool operator==(const JetPoint& a, const JetPoint& b) {
    return a.order_ == b.order_ && a.base_ == b.base_ && a.coords_ == b.coords_;
  }

 private:
  int order_;
  Point base_;
  std::array<std::vector<Scalar>, 4> coords_;
};

JetPoint jet_eval(const Section& s, const Point& p, int k);
/// Truncation pi_{k,r}.
JetPoint project(const JetPoint& theta, int r);
/// Taylor polynomials of degree k around the base point matching theta.
Section representative_section(const JetPoint& theta);

}  // namespace jetlin
