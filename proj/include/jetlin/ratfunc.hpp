#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetlin/expr.hpp"
#include "jetlin/poly.hpp"

namespace jetlin {

/// Rational function num / prod(factor_i ^ e_i) over Q. Denominator factors
/// are kept separate and normalized (leading coefficient 1) so that sums
/// with shared denominators stay small. Transcendental subterms appear as
/// opaque atoms in the polynomials.
class RatFunc {
 public:
  using Factor = std::pair<Poly, int>;

  RatFunc() = default;
  RatFunc(int c) : num_(c) {}
  RatFunc(Rational c) : num_(std::move(c)) {}
  RatFunc(Poly p) : num_(std::move(p)) {}

  static RatFunc variable(std::string_view name) { return RatFunc(Poly::variable(name)); }

  const Poly& numerator() const { return num_; }
  const std::vector<Factor>& denominator() const { return den_; }
  Poly expanded_denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool contains_atom() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator-(RatFunc a) { return a *= RatFunc(-1); }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.reciprocal(); }

  /// Throws SingularityError if this is identically zero.
  RatFunc reciprocal() const;
  RatFunc pow(long n) const;

  /// Partial derivative with respect to a named variable; atoms are
  /// differentiated by the chain rule.
  RatFunc derivative(std::string_view variable) const;

  /// Cancels denominator factors that divide the numerator exactly.
  RatFunc reduced() const;

  Expr to_expr() const;

  Scalar evaluate(const std::function<Scalar(VarId)>& value) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Multiplies by factor^e with factor normalized into the denominator.
  void divide_by_factor(const Poly& factor, int e);

 private:
  void multiply_denominator_factor(Poly f, int e);

  Poly num_;
  std::vector<Factor> den_;  // sorted by Poly ordering, exponents > 0
};

/// Evaluates with named variables bound by env; atoms are evaluated from
/// their defining calls.
Scalar evaluate(const RatFunc& r, const std::map<std::string, Scalar, std::less<>>& env);

/// Canonical form: expanded polynomial numerator over normalized factored
/// denominator, transcendental subtrees as atoms (with normalized
/// arguments).
RatFunc normal_form(const Expr& e);

/// normal_form followed by cancellation, rendered back into an Expr.
/// Idempotent.
Expr normalize(const Expr& e);

struct ZeroTestOptions {
  int samples = 50;
  double epsilon = 1e-9;
  /// Sample coordinates are p/q with |p/q| <= box and 1 <= q <= max_denominator.
  int box = 3;
  int max_denominator = 100;
  std::uint64_t seed = 0x5eed;
};

struct ZeroVerdict {
  enum class Kind { ProvenZero, ProvenNonZero, NumericallyZero };
  Kind kind;
  /// "symbolic" or "sampling".
  std::string method;
  int samples_used = 0;
  int singular_samples = 0;
  double max_abs = 0;

  bool zero() const { return kind != Kind::ProvenNonZero; }
};

std::string to_string(ZeroVerdict::Kind k);

/// Decision procedure on the rational class, sampling otherwise. Throws
/// InconclusiveError if every sample point is singular.
ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options = {});
ZeroVerdict is_zero(const RatFunc& r, const ZeroTestOptions& options = {});

/// Random rational sample points for the named variables.
std::vector<std::map<std::string, Scalar, std::less<>>> sample_points(const std::vector<std::string>& variables,
                                                                       const ZeroTestOptions& options);

}  // namespace jetlin
