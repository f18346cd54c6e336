#include "jetlin/pointmap.hpp"

#include <cmath>
#include <optional>

#include "jetlin/errors.hpp"
#include "jetlin/eval.hpp"

namespace jetlin {

namespace {

const Expr x1v = Expr::variable("x1");
const Expr x2v = Expr::variable("x2");

// Polynomials in the slope variable with coefficients in a ring T that has
// no usable zero (truncated series carry their order).
template <class T>
using SlopePoly = std::vector<T>;

template <class T>
SlopePoly<T> mul(const SlopePoly<T>& a, const SlopePoly<T>& b) {
  std::vector<std::optional<T>> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      T t = a[i] * b[j];
      if (r[i + j])
        *r[i + j] = *r[i + j] + t;
      else
        r[i + j] = std::move(t);
    }
  SlopePoly<T> out;
  for (auto& x : r) out.push_back(std::move(*x));
  return out;
}

template <class T>
SlopePoly<T> add(SlopePoly<T> a, const SlopePoly<T>& b, bool subtract = false) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = subtract ? a[i] - b[i] : a[i] + b[i];
  return a;
}

template <class T>
SlopePoly<T> scale(SlopePoly<T> a, const T& c) {
  for (auto& x : a) x = x * c;
  return a;
}

// First and second partials of a map component.
template <class T>
struct Partials {
  T x, y, xx, xy, yy;
};

// New coefficients from the inverse g (all quantities composed with g):
// Q = [sum u^a b^a a^(3-a) - G2 a + b G1] / det Dg, where a, b are the
// slope-linear first derivatives of g1, g2 and G1, G2 their slope-quadratic
// second derivatives.
template <class T>
std::array<T, 4> inverse_law(const std::array<T, 4>& u_of_g, const Partials<T>& g1, const Partials<T>& g2,
                             const T& inv_det) {
  SlopePoly<T> a{g1.x, g1.y}, b{g2.x, g2.y};
  SlopePoly<T> G1{g1.xx, g1.xy + g1.xy, g1.yy}, G2{g2.xx, g2.xy + g2.xy, g2.yy};
  SlopePoly<T> a2 = mul(a, a), b2 = mul(b, b);
  std::array<SlopePoly<T>, 4> mono{mul(a2, a), mul(a2, b), mul(a, b2), mul(b2, b)};
  SlopePoly<T> sum = scale(mono[0], u_of_g[0]);
  for (int k = 1; k < 4; ++k) sum = add(sum, scale(mono[static_cast<std::size_t>(k)], u_of_g[static_cast<std::size_t>(k)]));
  sum = add(add(sum, mul(G2, a), true), mul(b, G1));
  return {sum[0] * inv_det, sum[1] * inv_det, sum[2] * inv_det, sum[3] * inv_det};
}

// New coefficients composed with f, from f itself: with N = f2_x - P f1_x,
// D = P f1_y - f2_y, Q = [D^2 f2'' - P D^2 f1'' - sum u^a N^a D^(3-a)] / J^2.
template <class T>
std::array<T, 4> source_law(const std::array<T, 4>& u, const Partials<T>& f1, const Partials<T>& f2,
                            const T& inv_det_sq) {
  SlopePoly<T> N{f2.x, -f1.x}, D{-f2.y, f1.y};
  SlopePoly<T> N2 = mul(N, N), D2 = mul(D, D), ND = mul(N, D);
  auto second = [&](const Partials<T>& f) {
    return add(add(scale(D2, f.xx), scale(ND, f.xy + f.xy)), scale(N2, f.yy));
  };
  SlopePoly<T> q2 = second(f2), q1 = second(f1);
  // P * q1, a cubic with zero constant term
  SlopePoly<T> pq1{q1[0] - q1[0], q1[0], q1[1], q1[2]};
  SlopePoly<T> q2c{q2[0], q2[1], q2[2], q2[0] - q2[0]};
  std::array<SlopePoly<T>, 4> mono{mul(D2, D), mul(N, D2), mul(N2, D), mul(N2, N)};
  SlopePoly<T> sum = scale(mono[0], u[0]);
  for (int k = 1; k < 4; ++k) sum = add(sum, scale(mono[static_cast<std::size_t>(k)], u[static_cast<std::size_t>(k)]));
  SlopePoly<T> r = add(add(q2c, pq1, true), sum, true);
  return {r[0] * inv_det_sq, r[1] * inv_det_sq, r[2] * inv_det_sq, r[3] * inv_det_sq};
}

Partials<Expr> expr_partials(const Expr& f) {
  Expr fx = diff(f, "x1"), fy = diff(f, "x2");
  return {fx, fy, diff(fx, "x1"), diff(fx, "x2"), diff(fy, "x2")};
}

Partials<RatFunc> ratfunc_partials(const RatFunc& f) {
  RatFunc fx = f.derivative("x1"), fy = f.derivative("x2");
  return {fx, fy, fx.derivative("x1"), fx.derivative("x2"), fy.derivative("x2")};
}

Partials<ScalarSeries> series_partials(const ScalarSeries& f) {
  ScalarSeries fx = f.derivative(1), fy = f.derivative(2);
  return {fx, fy, fx.derivative(1), fx.derivative(2), fy.derivative(2)};
}

bool mentions(const Expr& e, const std::string& v) { return free_variables(e).count(v) > 0; }

// Solves e = target for v, where v occurs exactly once along one path of e.
std::optional<Expr> isolate(const Expr& e, const std::string& v, const Expr& target) {
  if (e.kind() == Expr::Kind::Variable) return e.name() == v ? std::optional<Expr>(target) : std::nullopt;
  auto ops = e.operands();
  auto split = [&]() -> std::optional<std::pair<Expr, std::vector<Expr>>> {
    std::optional<Expr> with;
    std::vector<Expr> without;
    for (const Expr& o : ops) {
      if (mentions(o, v)) {
        if (with) return std::nullopt;
        with = o;
      } else {
        without.push_back(o);
      }
    }
    if (!with) return std::nullopt;
    return std::make_pair(*with, without);
  };
  switch (e.kind()) {
    case Expr::Kind::Sum: {
      auto s = split();
      if (!s) return std::nullopt;
      return isolate(s->first, v, target - Expr::sum(s->second));
    }
    case Expr::Kind::Product: {
      auto s = split();
      if (!s) return std::nullopt;
      return isolate(s->first, v, target / Expr::product(s->second));
    }
    case Expr::Kind::Power:
      if (e.exponent() == -1) return isolate(ops[0], v, Expr(1) / target);
      return std::nullopt;
    case Expr::Kind::Quotient: {
      bool n = mentions(ops[0], v), d = mentions(ops[1], v);
      if (n && !d) return isolate(ops[0], v, target * ops[1]);
      if (d && !n) return isolate(ops[1], v, ops[0] / target);
      return std::nullopt;
    }
    case Expr::Kind::Call:
      if (e.function() == Function::Exp) return isolate(ops[0], v, log(target));
      if (e.function() == Function::Log) return isolate(ops[0], v, exp(target));
      return std::nullopt;
    default: return std::nullopt;
  }
}

std::optional<std::array<Expr, 2>> affine_inverse(const Expr& f1, const Expr& f2) {
  std::array<RatFunc, 2> r{normal_form(f1).reduced(), normal_form(f2).reduced()};
  VarId v1 = VarTable::intern("x1"), v2 = VarTable::intern("x2");
  Rational a[2][3];
  for (int i = 0; i < 2; ++i) {
    if (!r[i].is_polynomial() || r[i].contains_atom()) return std::nullopt;
    const Poly& p = r[i].numerator();
    if (p.degree() > 1) return std::nullopt;
    for (VarId w : p.variables())
      if (w != v1 && w != v2) return std::nullopt;
    a[i][0] = p.derivative(v1).constant_term();
    a[i][1] = p.derivative(v2).constant_term();
    a[i][2] = p.constant_term();
  }
  Rational det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (sgn(det) == 0) return std::nullopt;
  Expr y1 = x1v - Expr(a[0][2]), y2 = x2v - Expr(a[1][2]);
  Rational b00 = a[1][1] / det, b01 = -a[0][1] / det, b10 = -a[1][0] / det, b11 = a[0][0] / det;
  return std::array<Expr, 2>{normalize(Expr(b00) * y1 + Expr(b01) * y2), normalize(Expr(b10) * y1 + Expr(b11) * y2)};
}

Scalar value_at(const RatFunc& r, const Point& p) { return evaluate(r, Env{{"x1", p[0]}, {"x2", p[1]}}); }

}  // namespace

std::optional<std::array<Expr, 2>> symbolic_inverse(const Expr& f1, const Expr& f2) {
  if (auto a = affine_inverse(f1, f2)) return a;
  // old coordinates renamed so that x1, x2 can name the new ones
  const std::map<std::string, std::string, std::less<>> old{{"x1", "s1"}, {"x2", "s2"}};
  std::array<Expr, 2> f{rename(f1, old), rename(f2, old)};
  for (int first = 0; first < 2; ++first)
    for (int var = 0; var < 2; ++var) {
      std::string v = var == 0 ? "s1" : "s2", other = var == 0 ? "s2" : "s1";
      const Expr& fa = f[static_cast<std::size_t>(first)];
      const Expr& fb = f[static_cast<std::size_t>(1 - first)];
      if (mentions(fa, other) || !mentions(fa, v)) continue;
      auto sv = isolate(fa, v, first == 0 ? x1v : x2v);
      if (!sv) continue;
      Expr rest = substitute(fb, {{v, *sv}});
      if (mentions(rest, v)) continue;
      auto so = isolate(rest, other, first == 0 ? x2v : x1v);
      if (!so || mentions(*so, "s1") || mentions(*so, "s2")) continue;
      std::array<Expr, 2> g;
      g[static_cast<std::size_t>(var)] = *sv;
      g[static_cast<std::size_t>(1 - var)] = *so;
      return g;
    }
  return std::nullopt;
}

PointTransform PointTransform::identity() { return {x1v, x2v, std::array<Expr, 2>{x1v, x2v}}; }

PointTransform PointTransform::parse(std::string_view f1, std::string_view f2) {
  const std::set<std::string, std::less<>> vars{"x", "y", "x1", "x2"};
  const std::map<std::string, std::string, std::less<>> alias{{"x", "x1"}, {"y", "x2"}};
  PointTransform t{rename(jetlin::parse(f1, vars), alias), rename(jetlin::parse(f2, vars), alias), std::nullopt};
  t.inverse = symbolic_inverse(t.f1, t.f2);
  return t;
}

Point PointTransform::apply(const Point& p) const {
  Env env{{"x1", p[0]}, {"x2", p[1]}};
  return {eval(f1, env), eval(f2, env)};
}

std::array<std::array<Scalar, 2>, 2> PointTransform::jacobian(const Point& p) const {
  Env env{{"x1", p[0]}, {"x2", p[1]}};
  return {{{eval(diff(f1, "x1"), env), eval(diff(f1, "x2"), env)}, {eval(diff(f2, "x1"), env), eval(diff(f2, "x2"), env)}}};
}

PointTransform compose(const PointTransform& outer, const PointTransform& inner) {
  std::map<std::string, Expr, std::less<>> in{{"x1", inner.f1}, {"x2", inner.f2}};
  PointTransform t{normalize(substitute(outer.f1, in)), normalize(substitute(outer.f2, in)), std::nullopt};
  if (outer.inverse && inner.inverse) {
    std::map<std::string, Expr, std::less<>> out{{"x1", (*outer.inverse)[0]}, {"x2", (*outer.inverse)[1]}};
    t.inverse = std::array<Expr, 2>{normalize(substitute((*inner.inverse)[0], out)),
                                    normalize(substitute((*inner.inverse)[1], out))};
  }
  return t;
}

MapJet MapJet::identity(const Point& p, int order) {
  return {p, {ScalarSeries::variable(order, 1, p[0]), ScalarSeries::variable(order, 2, p[1])}};
}

MapJet taylor_map(const PointTransform& f, const Point& p, int order) {
  return {p, {taylor_expand(f.f1, p, order), taylor_expand(f.f2, p, order)}};
}

MapJet compose(const MapJet& outer, const MapJet& inner) {
  ScalarSeries d1 = inner.f[0].nonconstant(), d2 = inner.f[1].nonconstant();
  return {inner.source, {outer.f[0].compose(d1, d2), outer.f[1].compose(d1, d2)}};
}

MapJet inverse_jet(const MapJet& f) {
  int m = f.order();
  const Scalar a11 = f.f[0].coeff(1, 0), a12 = f.f[0].coeff(0, 1);
  const Scalar a21 = f.f[1].coeff(1, 0), a22 = f.f[1].coeff(0, 1);
  Scalar det = a11 * a22 - a12 * a21;
  if (det.is_zero()) throw SingularJacobianError("Jacobian is singular at the base point");
  const Scalar b11 = a22 / det, b12 = -a12 / det, b21 = -a21 / det, b22 = a11 / det;
  // nonlinear part of f
  std::array<ScalarSeries, 2> nl;
  for (int i = 0; i < 2; ++i) {
    nl[static_cast<std::size_t>(i)] = f.f[static_cast<std::size_t>(i)].truncated(m).nonconstant();
    nl[static_cast<std::size_t>(i)].coeff(1, 0) = Scalar(0);
    nl[static_cast<std::size_t>(i)].coeff(0, 1) = Scalar(0);
  }
  ScalarSeries e1 = ScalarSeries::variable(m, 1, Scalar(0)), e2 = ScalarSeries::variable(m, 2, Scalar(0));
  ScalarSeries g1 = e1 * b11 + e2 * b12, g2 = e1 * b21 + e2 * b22;
  // each pass fixes one more degree
  for (int it = 1; it < m; ++it) {
    ScalarSeries r1 = e1 - nl[0].compose(g1, g2), r2 = e2 - nl[1].compose(g1, g2);
    g1 = r1 * b11 + r2 * b12;
    g2 = r1 * b21 + r2 * b22;
  }
  Point q = f.target();
  g1 += ScalarSeries(m, f.source[0]);
  g2 += ScalarSeries(m, f.source[1]);
  return {q, {g1, g2}};
}

MapJet inverse_jet(const PointTransform& f, const Point& p, int order) { return inverse_jet(taylor_map(f, p, order)); }

Section pushforward_equation(const PointTransform& f, const Section& s) {
  std::optional<std::array<Expr, 2>> g = f.inverse;
  if (!g) g = symbolic_inverse(f.f1, f.f2);
  if (!g) throw DomainError("no symbolic inverse available for (" + render(f.f1) + ", " + render(f.f2) + ")");
  std::map<std::string, Expr, std::less<>> via_g{{"x1", (*g)[0]}, {"x2", (*g)[1]}};
  std::array<Expr, 4> u_of_g;
  for (std::size_t a = 0; a < 4; ++a) u_of_g[a] = substitute(s.u[a], via_g);
  Partials<Expr> p1 = expr_partials((*g)[0]), p2 = expr_partials((*g)[1]);
  Expr det = normalize(p1.x * p2.y - p1.y * p2.x);
  if (det.is_zero()) throw SingularJacobianError("inverse has identically singular Jacobian");
  std::array<Expr, 4> q = inverse_law(u_of_g, p1, p2, Expr(1) / det);
  Section out;
  for (std::size_t a = 0; a < 4; ++a) out.u[a] = normalize(q[a]);
  return out;
}

std::array<RatFunc, 4> pushforward_source_form(const PointTransform& f, const Section& s) {
  Partials<RatFunc> p1 = ratfunc_partials(normal_form(f.f1)), p2 = ratfunc_partials(normal_form(f.f2));
  RatFunc det = p1.x * p2.y - p1.y * p2.x;
  if (det.is_zero()) throw SingularJacobianError("Jacobian vanishes identically");
  std::array<RatFunc, 4> u;
  for (std::size_t a = 0; a < 4; ++a) u[a] = normal_form(s.u[a]);
  return source_law(u, p1, p2, det.pow(-2));
}

JetPoint lift_jet(const MapJet& f, const JetPoint& theta) {
  int k = theta.order();
  if (f.order() < k + 2) throw DomainError("map jet of order " + std::to_string(f.order()) + " cannot lift a " +
                                           std::to_string(k) + "-jet");
  MapJet g = inverse_jet(f);
  ScalarSeries d1 = g.f[0].nonconstant(), d2 = g.f[1].nonconstant();
  std::array<ScalarSeries, 4> u_of_g;
  for (int i = 0; i < 4; ++i) {
    ScalarSeries rep(k);
    for (MultiIndex s : MultiIndex::up_to(k))
      rep.coeff(s.r1, s.r2) = theta.u(i, s) / Scalar(s.factorial_weight());
    u_of_g[static_cast<std::size_t>(i)] = rep.compose(d1.truncated(k), d2.truncated(k));
  }
  Partials<ScalarSeries> p1 = series_partials(g.f[0].truncated(k + 2)), p2 = series_partials(g.f[1].truncated(k + 2));
  ScalarSeries det = p1.x * p2.y - p1.y * p2.x;
  if (det.constant().is_zero()) throw SingularJacobianError("Jacobian is singular at the base point");
  std::array<ScalarSeries, 4> q = inverse_law(u_of_g, p1, p2, det.reciprocal());
  JetPoint out(k, g.source);
  for (int i = 0; i < 4; ++i)
    for (MultiIndex s : MultiIndex::up_to(k))
      out.u(i, s) = q[static_cast<std::size_t>(i)].coeff(s.r1, s.r2) * Scalar(s.factorial_weight());
  return out;
}

JetPoint lift_jet(const PointTransform& f, const JetPoint& theta) {
  return lift_jet(taylor_map(f, theta.base(), theta.order() + 2), theta);
}

JetPoint lift_jet_direct(const PointTransform& f, const JetPoint& theta) {
  const Point& p = theta.base();
  std::array<RatFunc, 4> h = pushforward_source_form(f, representative_section(theta));
  RatFunc f1 = normal_form(f.f1), f2 = normal_form(f.f2);
  RatFunc f1x = f1.derivative("x1"), f1y = f1.derivative("x2"), f2x = f2.derivative("x1"), f2y = f2.derivative("x2");
  RatFunc det = f1x * f2y - f1y * f2x;
  if (value_at(det, p).is_zero()) throw SingularJacobianError("Jacobian is singular at the base point");
  RatFunc inv = det.reciprocal();
  // derivatives in the new coordinates, expressed in the old ones
  auto along = [&](const RatFunc& r, int j) {
    RatFunc r1 = r.derivative("x1"), r2 = r.derivative("x2");
    return j == 1 ? (f2y * r1 - f2x * r2) * inv : (f1x * r2 - f1y * r1) * inv;
  };
  JetPoint out(theta.order(), f.apply(p));
  for (int i = 0; i < 4; ++i) {
    std::vector<RatFunc> d(MultiIndex::count_up_to(theta.order()));
    for (MultiIndex s : MultiIndex::up_to(theta.order())) {
      RatFunc& cur = d[s.position()];
      if (s.order() == 0)
        cur = h[static_cast<std::size_t>(i)];
      else if (s.r2 > 0)
        cur = along(d[MultiIndex{s.r1, s.r2 - 1}.position()], 2);
      else
        cur = along(d[MultiIndex{s.r1 - 1, s.r2}.position()], 1);
      out.u(i, s) = value_at(cur, p);
    }
  }
  return out;
}

CurveReport solution_curve_oracle(const PointTransform& f, const Section& s, const InitialValue& ivp, double span,
                                  int steps) {
  if (steps < 8) throw DomainError("too few integration steps");
  auto rhs = [&](double x, double y, double p) {
    Env env{{"x1", Scalar(x)}, {"x2", Scalar(y)}};
    double r = 0, pk = 1;
    for (std::size_t a = 0; a < 4; ++a, pk *= p)
      if (!s.u[a].is_zero()) r += eval(s.u[a], env).to_double() * pk;
    return r;
  };
  const double h = span / steps;
  std::vector<double> xs(static_cast<std::size_t>(steps) + 1), ys(xs.size());
  double y = ivp.y0, p = ivp.p0;
  for (int n = 0; n <= steps; ++n) {
    double x = ivp.x0 + n * h;
    xs[static_cast<std::size_t>(n)] = x;
    ys[static_cast<std::size_t>(n)] = y;
    if (!std::isfinite(y) || std::fabs(y) > 1e8 || std::fabs(p) > 1e8) throw DomainError("integration blow-up");
    if (n == steps) break;
    double k1y = p, k1p = rhs(x, y, p);
    double k2y = p + 0.5 * h * k1p, k2p = rhs(x + 0.5 * h, y + 0.5 * h * k1y, k2y);
    double k3y = p + 0.5 * h * k2p, k3p = rhs(x + 0.5 * h, y + 0.5 * h * k2y, k3y);
    double k4y = p + h * k3p, k4p = rhs(x + h, y + h * k3y, k4y);
    y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    p += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
  }
  std::vector<double> X(xs.size()), Y(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n) {
    Point q = f.apply({Scalar(xs[n]), Scalar(ys[n])});
    X[n] = q[0].to_double();
    Y[n] = q[1].to_double();
  }
  CurveReport report;
  std::optional<Section> pushed;
  std::array<RatFunc, 4> source;
  if (f.inverse || symbolic_inverse(f.f1, f.f2)) {
    pushed = pushforward_equation(f, s);
    report.used_pushforward = true;
  } else {
    source = pushforward_source_form(f, s);
  }
  const int stride = std::max(1, steps / 200);
  for (int n = 2; n + 2 <= steps; n += stride) {
    auto d1 = [&](const std::vector<double>& v) {
      std::size_t i = static_cast<std::size_t>(n);
      return (-v[i + 2] + 8 * v[i + 1] - 8 * v[i - 1] + v[i - 2]) / (12 * h);
    };
    auto d2 = [&](const std::vector<double>& v) {
      std::size_t i = static_cast<std::size_t>(n);
      return (-v[i + 2] + 16 * v[i + 1] - 30 * v[i] + 16 * v[i - 1] - v[i - 2]) / (12 * h * h);
    };
    double Xt = d1(X), Xtt = d2(X), Yt = d1(Y), Ytt = d2(Y);
    if (std::fabs(Xt) < 1e-8) throw DomainError("image curve has a vertical tangent");
    double P = Yt / Xt;
    double Ypp = (Ytt * Xt - Yt * Xtt) / (Xt * Xt * Xt);
    std::size_t i = static_cast<std::size_t>(n);
    double pred = 0, pk = 1;
    for (std::size_t a = 0; a < 4; ++a, pk *= P) {
      double c;
      if (pushed)
        c = eval(pushed->u[a], Env{{"x1", Scalar(X[i])}, {"x2", Scalar(Y[i])}}).to_double();
      else
        c = value_at(source[a], {Scalar(xs[i]), Scalar(ys[i])}).to_double();
      pred += c * pk;
    }
    double res = std::fabs(Ypp - pred) / std::max(1.0, std::fabs(Ypp));
    report.max_residual = std::max(report.max_residual, res);
    ++report.points_checked;
  }
  return report;
}

}  // namespace jetlin
