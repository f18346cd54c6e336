#include "jetlin/obstruction.hpp"

#include <cmath>

#include "jetlin/errors.hpp"
#include "jetlin/eval.hpp"

namespace jetlin {

namespace {

// F1, F2 in any ring, from u(i, r1, r2) = u^i_sigma.
template <class T, class U>
std::array<T, 2> closed_F(const U& u) {
  auto c = [](int n) { return T(n); };
  T F1 = c(3) * u(0, 0, 2) - c(2) * u(1, 1, 1) + u(2, 2, 0) + c(3) * u(3, 0, 0) * u(0, 1, 0) -
         c(3) * u(2, 0, 0) * u(0, 0, 1) + c(2) * u(1, 0, 0) * u(1, 0, 1) - u(1, 0, 0) * u(2, 1, 0) -
         c(3) * u(0, 0, 0) * u(2, 0, 1) + c(6) * u(0, 0, 0) * u(3, 1, 0);
  T F2 = u(1, 0, 2) - c(2) * u(2, 1, 1) + c(3) * u(3, 2, 0) - c(3) * u(0, 0, 0) * u(3, 0, 1) +
         c(3) * u(1, 0, 0) * u(3, 1, 0) - c(2) * u(2, 0, 0) * u(2, 1, 0) + u(2, 0, 0) * u(1, 0, 1) +
         c(3) * u(3, 0, 0) * u(1, 1, 0) - c(6) * u(3, 0, 0) * u(0, 0, 1);
  return {F1, F2};
}

bool same(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  double x = a.to_double(), y = b.to_double();
  return std::fabs(x - y) <= 1e-9 * std::max(1.0, std::fabs(x) + std::fabs(y));
}

std::size_t second_slot(int i, int jk_r2, int r) { return static_cast<std::size_t>((i - 1) * 6 + jk_r2 * 2 + (r - 1)); }
std::size_t third_slot(int i, int jkl_r2, int r) { return static_cast<std::size_t>((i - 1) * 8 + jkl_r2 * 2 + (r - 1)); }

Rational exact_of(const Scalar& s) { return s.exact(); }

}  // namespace

const Scalar& HorizontalFrame::f(int i, MultiIndex jk, int r) const {
  std::size_t a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(jk.r2), c = static_cast<std::size_t>(r - 1);
  if (jk.order() == 2) return second[a][b][c];
  if (jk.order() == 3 && level == 2) return third[a][b][c];
  throw DomainError("frame coefficient index out of range");
}

VectorFieldJet HorizontalFrame::vector(int r) const {
  VectorFieldJet h(level + 1, base);
  h.at(r, {}) = Scalar(1);
  for (int i = 1; i <= 2; ++i) {
    for (MultiIndex t : MultiIndex::of_order(2)) h.at(i, t) = f(i, t, r);
    if (level == 2)
      for (MultiIndex t : MultiIndex::of_order(3)) h.at(i, t) = f(i, t, r);
  }
  return h;
}

HorizontalFrame horizontal_frame_1_closed(const JetPoint& theta1) {
  auto u = [&](int i, int r1, int r2) { return theta1.u(i, {r1, r2}); };
  const Scalar third = Scalar(Rational(1, 3));
  HorizontalFrame h;
  h.base = theta1.base();
  auto set = [&](int i, int jk_r2, int r, const Scalar& v) {
    h.second[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(jk_r2)][static_cast<std::size_t>(r - 1)] = v;
  };
  set(2, 0, 1, u(0, 1, 0));
  set(2, 0, 2, u(0, 0, 1));
  set(2, 1, 1, u(0, 0, 1));
  Scalar a = (Scalar(2) * u(1, 0, 1) - u(2, 1, 0)) * third;
  set(2, 1, 2, a);
  set(2, 2, 1, a);
  set(2, 2, 2, Scalar(-2) * u(3, 1, 0) + u(2, 0, 1));
  set(1, 2, 2, -u(3, 0, 1));
  set(1, 2, 1, -u(3, 1, 0));
  set(1, 1, 2, -u(3, 1, 0));
  Scalar b = (u(1, 0, 1) - Scalar(2) * u(2, 1, 0)) * third;
  set(1, 1, 1, b);
  set(1, 0, 2, b);
  set(1, 0, 1, Scalar(2) * u(0, 0, 1) - u(1, 1, 0));
  return h;
}

HorizontalFrame horizontal_frame_1_solved(const JetPoint& theta1) {
  if (!theta1.is_exact()) throw DomainError("the constructive frame needs an exact jet");
  JetPoint t = project(theta1, 1);
  Matrix A(0, 12);
  Vector rhs;
  for (int r = 1; r <= 2; ++r)
    for (int a = 0; a < 4; ++a) {
      Vector row(12);
      Rational constant = 0;
      for (const LinearTerm& term : total_derivative_psi_form(a, {}, t)) {
        int d = term.tau.order();
        if (d == 0 && term.component == r) constant += exact_of(term.coefficient);
        if (d == 2) row[second_slot(term.component, term.tau.r2, r)] += exact_of(term.coefficient);
      }
      A.append_row(std::move(row));
      rhs.push_back(-constant);
    }
  for (int i = 1; i <= 2; ++i) {
    // f^i_{12,1} = f^i_{11,2} and f^i_{22,1} = f^i_{12,2}
    Vector s1(12), s2(12);
    s1[second_slot(i, 1, 1)] = 1;
    s1[second_slot(i, 0, 2)] = -1;
    s2[second_slot(i, 2, 1)] = 1;
    s2[second_slot(i, 1, 2)] = -1;
    A.append_row(std::move(s1));
    A.append_row(std::move(s2));
    rhs.push_back(0);
    rhs.push_back(0);
  }
  auto sol = solve(A, rhs);
  if (!sol || sol->nullity != 0)
    throw InternalInconsistencyError("level-1 horizontal frame is not uniquely determined");
  HorizontalFrame h;
  h.base = theta1.base();
  for (int i = 1; i <= 2; ++i)
    for (int jk = 0; jk < 3; ++jk)
      for (int r = 1; r <= 2; ++r)
        h.second[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(jk)][static_cast<std::size_t>(r - 1)] =
            Scalar(sol->particular[second_slot(i, jk, r)]);
  return h;
}

HorizontalFrame horizontal_frame_1(const JetPoint& theta1) {
  HorizontalFrame closed = horizontal_frame_1_closed(theta1);
  if (!theta1.is_exact()) return closed;
  HorizontalFrame solved = horizontal_frame_1_solved(theta1);
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex jk : MultiIndex::of_order(2))
      for (int r = 1; r <= 2; ++r)
        if (!same(closed.f(i, jk, r), solved.f(i, jk, r)))
          throw InternalInconsistencyError("closed-form and solved level-1 frames differ");
  return closed;
}

HorizontalFrame horizontal_frame_2(const JetPoint& theta2, const HorizontalFrame& level1) {
  if (!theta2.is_exact()) throw DomainError("the constructive frame needs an exact jet");
  JetPoint t = project(theta2, 2);
  Matrix A(0, 16);
  Vector rhs;
  for (int r = 1; r <= 2; ++r)
    for (MultiIndex s : MultiIndex::up_to(1))
      for (int a = 0; a < 4; ++a) {
        Vector row(16);
        Rational constant = 0;
        for (const LinearTerm& term : total_derivative_psi_form(a, s, t)) {
          Rational c = exact_of(term.coefficient);
          switch (term.tau.order()) {
            case 0:
              if (term.component == r) constant += c;
              break;
            case 2: constant += c * exact_of(level1.f(term.component, term.tau, r)); break;
            case 3: row[third_slot(term.component, term.tau.r2, r)] += c; break;
            default: break;
          }
        }
        A.append_row(std::move(row));
        rhs.push_back(-constant);
      }
  auto sol = solve(A, rhs);
  if (!sol) throw InternalInconsistencyError("no level-2 horizontal frame over the given level-1 frame");
  if (sol->nullity != 0) throw InternalInconsistencyError("level-2 horizontal frame is not unique");
  HorizontalFrame h = level1;
  h.level = 2;
  for (int i = 1; i <= 2; ++i)
    for (int jkl = 0; jkl < 4; ++jkl)
      for (int r = 1; r <= 2; ++r)
        h.third[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(jkl)][static_cast<std::size_t>(r - 1)] =
            Scalar(sol->particular[third_slot(i, jkl, r)]);
  return h;
}

std::vector<Scalar> ObstructionValue::omega() const {
  return {Scalar(2) * F1, F2, Scalar(0), Scalar(0), F1, Scalar(2) * F2};
}

ObstructionValue obstruction_closed_form(const JetPoint& theta2) {
  if (theta2.order() < 2) throw DomainError("the obstruction needs a 2-jet");
  auto F = closed_F<Scalar>([&](int i, int r1, int r2) { return theta2.u(i, {r1, r2}); });
  return {F[0], F[1]};
}

std::array<Scalar, 2> antisymmetrized_frame(const JetPoint& theta2) {
  HorizontalFrame h = horizontal_frame_2(theta2, horizontal_frame_1_solved(project(theta2, 1)));
  const Scalar half(Rational(1, 2));
  return {half * (h.f(1, {3, 0}, 2) - h.f(1, {2, 1}, 1)), half * (h.f(2, {1, 2}, 2) - h.f(2, {0, 3}, 1))};
}

Rational antisymmetrization_scale() { return 3; }

ObstructionValue obstruction_constructive(const JetPoint& theta2) {
  auto a = antisymmetrized_frame(theta2);
  Scalar c(antisymmetrization_scale());
  return {c * a[0], c * a[1]};
}

std::vector<Scalar> frame_bracket(const JetPoint& theta2) {
  HorizontalFrame h = horizontal_frame_2(theta2, horizontal_frame_1_solved(project(theta2, 1)));
  VectorFieldJet b = bracket(h.vector(1), h.vector(2));
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(1))
      if (!b.at(i, t).is_zero()) throw InternalInconsistencyError("bracket of the horizontal frame is not of grade 2");
  std::vector<Scalar> w;
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::of_order(2)) w.push_back(b.at(i, t));
  return w;
}

ObstructionValue obstruction_at(const JetPoint& theta2) {
  ObstructionValue closed = obstruction_closed_form(theta2);
  if (!theta2.is_exact()) return closed;
  ObstructionValue built = obstruction_constructive(theta2);
  if (!same(closed.F1, built.F1) || !same(closed.F2, built.F2))
    throw InternalInconsistencyError("closed-form and constructive obstructions differ: (" + closed.F1.str() + ", " +
                                     closed.F2.str() + ") vs (" + built.F1.str() + ", " + built.F2.str() + ")");
  return closed;
}

std::array<Expr, 2> obstruction_form(const Section& s) {
  std::map<std::tuple<int, int, int>, Expr> memo;
  std::function<Expr(int, int, int)> u = [&](int i, int r1, int r2) -> Expr {
    auto key = std::make_tuple(i, r1, r2);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Expr e = r2 > 0 ? diff(u(i, r1, r2 - 1), "x2") : r1 > 0 ? diff(u(i, r1 - 1, r2), "x1") : s.u[static_cast<std::size_t>(i)];
    memo.emplace(key, e);
    return e;
  };
  auto F = closed_F<Expr>(u);
  return {normalize(F[0]), normalize(F[1])};
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Linearizable: return "Linearizable";
    case Verdict::Kind::NumericallyLinearizable: return "NumericallyLinearizable";
    case Verdict::Kind::NotLinearizable: return "NotLinearizable";
    case Verdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict linearizable(const Section& s, const ZeroTestOptions& options) {
  Verdict v;
  v.options = options;
  v.F = obstruction_form(s);
  bool nonzero = false, all_zero = true, all_symbolic = true;
  for (std::size_t c = 0; c < 2; ++c) {
    try {
      v.tests[c] = is_zero(v.F[c], options);
      if (!v.tests[c]->zero()) nonzero = true;
      if (v.tests[c]->method != "symbolic") all_symbolic = false;
    } catch (const InconclusiveError&) {
      all_zero = false;
      all_symbolic = false;
    }
  }
  v.method = all_symbolic ? "symbolic" : "sampling";
  if (nonzero) {
    v.kind = Verdict::Kind::NotLinearizable;
    for (const Env& env : sample_points({"x1", "x2"}, options)) {
      try {
        Scalar a = eval(v.F[0], env), b = eval(v.F[1], env);
        bool exact_hit = (a.is_exact() && !a.is_zero()) || (b.is_exact() && !b.is_zero());
        bool numeric_hit = std::fabs(a.to_double()) >= options.epsilon || std::fabs(b.to_double()) >= options.epsilon;
        if (exact_hit || numeric_hit) {
          v.witness = Point{env.at("x1"), env.at("x2")};
          v.witness_values = {a, b};
          break;
        }
      } catch (const SingularityError&) {
      }
    }
    return v;
  }
  if (!all_zero) {
    v.kind = Verdict::Kind::Inconclusive;
    return v;
  }
  bool proven = v.tests[0]->kind == ZeroVerdict::Kind::ProvenZero && v.tests[1]->kind == ZeroVerdict::Kind::ProvenZero;
  v.kind = proven ? Verdict::Kind::Linearizable : Verdict::Kind::NumericallyLinearizable;
  return v;
}

std::vector<Scalar> transform_omega(const std::vector<Scalar>& omega, const std::array<std::array<Scalar, 2>, 2>& A) {
  Scalar det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  if (det.is_zero()) throw SingularJacobianError("linear part is singular");
  std::array<std::array<Scalar, 2>, 2> B{{{A[1][1] / det, -A[0][1] / det}, {-A[1][0] / det, A[0][0] / det}}};
  auto W = [&](int a, int b, int c) { return omega[static_cast<std::size_t>(a * 3 + b + c)]; };
  std::vector<Scalar> out;
  for (int i = 0; i < 2; ++i)
    for (MultiIndex jk : MultiIndex::of_order(2)) {
      int j = jk.r1 >= 1 ? 0 : 1, k = jk.r1 == 2 ? 0 : 1;
      Scalar acc(0);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            acc += A[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * W(a, b, c) *
                   B[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] *
                   B[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
      out.push_back(acc / det);
    }
  return out;
}

namespace {

struct Agreement {
  bool exact_mismatch = false;
  bool inexact = false;
  double deviation = 0;

  void compare(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    for (std::size_t n = 0; n < a.size(); ++n) {
      if (a[n].is_exact() && b[n].is_exact())
        exact_mismatch = exact_mismatch || !(a[n] == b[n]);
      else
        inexact = true;
      double x = a[n].to_double(), y = b[n].to_double();
      deviation = std::max(deviation, std::fabs(x - y) / std::max(1.0, std::fabs(x)));
    }
  }
  bool passed(double tolerance) const { return !exact_mismatch && (!inexact || deviation <= tolerance); }
};

bool is_affine(const PointTransform& f) {
  for (const Expr& c : {f.f1, f.f2})
    for (const char* a : {"x1", "x2"})
      for (const char* b : {"x1", "x2"})
        if (!normal_form(diff(diff(c, a), b)).is_zero()) return false;
  return true;
}

}  // namespace

InvarianceReport invariance_check(const PointTransform& f, const JetPoint& theta2, double tolerance) {
  if (theta2.order() != 2) throw DomainError("invariance check needs a 2-jet");
  const Point& p = theta2.base();
  auto A = f.jacobian(p);
  if ((A[0][0] * A[1][1] - A[0][1] * A[1][0]).is_zero()) throw SingularJacobianError("Jacobian is singular at the base point");
  InvarianceReport rep;
  rep.before = obstruction_closed_form(theta2);
  Agreement agree;
  auto finish = [&] {
    rep.deviation = agree.deviation;
    rep.passed = agree.passed(tolerance);
    return rep;
  };
  bool identity_tangent = A[0][0] == Scalar(1) && A[1][1] == Scalar(1) && A[0][1].is_zero() && A[1][0].is_zero();
  if (identity_tangent) {
    rep.kind = "identity-tangent";
    rep.after = obstruction_closed_form(lift_jet(f, theta2));
    agree.compare({rep.before.F1, rep.before.F2}, {rep.after.F1, rep.after.F2});
    return finish();
  }
  if (is_affine(f)) {
    rep.kind = "affine";
    rep.after = obstruction_closed_form(lift_jet(f, theta2));
    agree.compare(transform_omega(rep.before.omega(), A), rep.after.omega());
    return finish();
  }
  // [f] = a o h with a affine and h tangent to the identity
  rep.kind = "factored";
  MapJet fj = taylor_map(f, p, 4);
  Point q = fj.target();
  MapJet a{p, {ScalarSeries(4, q[0]), ScalarSeries(4, q[1])}};
  MapJet a_inv{q, {ScalarSeries(4, p[0]), ScalarSeries(4, p[1])}};
  Scalar det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  std::array<std::array<Scalar, 2>, 2> B{{{A[1][1] / det, -A[0][1] / det}, {-A[1][0] / det, A[0][0] / det}}};
  for (std::size_t i = 0; i < 2; ++i) {
    a.f[i].coeff(1, 0) = A[i][0];
    a.f[i].coeff(0, 1) = A[i][1];
    a_inv.f[i].coeff(1, 0) = B[i][0];
    a_inv.f[i].coeff(0, 1) = B[i][1];
  }
  MapJet h = compose(a_inv, fj);
  JetPoint mid = lift_jet(h, theta2);
  ObstructionValue at_mid = obstruction_closed_form(mid);
  JetPoint image = lift_jet(a, mid);
  rep.after = obstruction_closed_form(image);
  agree.compare({rep.before.F1, rep.before.F2}, {at_mid.F1, at_mid.F2});
  agree.compare(transform_omega(at_mid.omega(), A), rep.after.omega());
  JetPoint direct = lift_jet(fj, theta2);
  for (int i = 0; i < 4; ++i) agree.compare(direct.component(i), image.component(i));
  return finish();
}

}  // namespace jetlin
