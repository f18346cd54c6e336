#include "jetlin/random.hpp"

namespace jetlin {

long Rng::integer(long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

Rational Rng::rational(long box, long max_denominator) {
  long q = integer(1, max_denominator);
  return ratio(integer(-box * q, box * q), q);
}

Rational Rng::nonzero_rational(long box, long max_denominator) {
  for (;;) {
    Rational r = rational(box, max_denominator);
    if (sgn(r) != 0) return r;
  }
}

double Rng::uniform(double lo, double hi) {
  double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

bool Rng::coin(double p_true) { return uniform(0, 1) < p_true; }

JetPoint random_jet(Rng& rng, int order, long box, long max_denominator) {
  Point p{Scalar(rng.rational(3, 4)), Scalar(rng.rational(3, 4))};
  JetPoint theta(order, p);
  for (int i = 0; i < 4; ++i)
    for (MultiIndex s : MultiIndex::up_to(order)) theta.u(i, s) = rng.rational(box, max_denominator);
  return theta;
}

Point random_point(Rng& rng, long box, long max_denominator) {
  Scalar a(rng.rational(box, max_denominator));
  return {a, Scalar(rng.rational(box, max_denominator))};
}

namespace {

const Expr x1 = Expr::variable("x1");
const Expr x2 = Expr::variable("x2");

Expr lit(const Rational& q) { return Expr(q); }

Expr affine_expr(const Rational& a, const Rational& b, const Rational& c) { return lit(a) * x1 + lit(b) * x2 + lit(c); }

PointTransform affine(Rng& rng, bool translate) {
  Rational a, b, c, d;
  do {
    a = rng.rational(3, 3);
    b = rng.rational(3, 3);
    c = rng.rational(3, 3);
    d = rng.rational(3, 3);
  } while (sgn(a * d - b * c) == 0);
  Rational e = translate ? rng.rational(3, 3) : Rational(0);
  Rational f = translate ? rng.rational(3, 3) : Rational(0);
  Rational det = a * d - b * c;
  // inverse: A^-1 (x - t)
  Rational ia = d / det, ib = -b / det, ic = -c / det, id = a / det;
  PointTransform t;
  t.f1 = normalize(affine_expr(a, b, e));
  t.f2 = normalize(affine_expr(c, d, f));
  t.inverse = std::array<Expr, 2>{normalize(affine_expr(ia, ib, -(ia * e + ib * f))),
                                  normalize(affine_expr(ic, id, -(ic * e + id * f)))};
  return t;
}

}  // namespace

Expr random_polynomial(Rng& rng, int degree, int min_degree, double density, long box) {
  std::vector<Expr> terms;
  for (int d = min_degree; d <= degree; ++d)
    for (int b = 0; b <= d; ++b) {
      if (!rng.coin(density)) continue;
      Rational c = rng.nonzero_rational(box, 3);
      terms.push_back(lit(c) * pow(x1, d - b) * pow(x2, b));
    }
  return normalize(Expr::sum(std::move(terms)));
}

Expr random_flat_polynomial(Rng& rng, const std::string& variable, const Scalar& at, int degree) {
  Expr t = Expr::variable(variable) - lit(at.exact());
  std::vector<Expr> terms;
  for (int d = 2; d <= degree; ++d) terms.push_back(lit(rng.rational(2, 3)) * pow(t, d));
  return normalize(Expr::sum(std::move(terms)));
}

PointTransform random_affine(Rng& rng) { return affine(rng, true); }
PointTransform random_linear(Rng& rng) { return affine(rng, false); }

PointTransform random_shear(Rng& rng, int degree) {
  bool vertical = rng.coin();
  Expr q = random_polynomial(rng, degree, 2, 0.7, 2);
  PointTransform t;
  if (vertical) {
    q = substitute(q, {{"x2", Expr(0)}});
    t.f1 = x1;
    t.f2 = normalize(x2 + q);
    t.inverse = std::array<Expr, 2>{x1, normalize(x2 - q)};
  } else {
    q = substitute(q, {{"x1", Expr(0)}});
    t.f1 = normalize(x1 + q);
    t.f2 = x2;
    t.inverse = std::array<Expr, 2>{normalize(x1 - q), x2};
  }
  return t;
}

PointTransform random_polynomial_transform(Rng& rng) {
  PointTransform t = random_shear(rng, 2);
  t = compose(random_affine(rng), t);
  t = compose(random_shear(rng, 2), t);
  return compose(random_affine(rng), t);
}

PointTransform random_identity_tangent(Rng& rng, const Point& p, int degree) {
  Expr q1 = random_flat_polynomial(rng, "x1", p[0], degree);
  Expr q2 = random_flat_polynomial(rng, "x2", p[1], degree);
  PointTransform s1{x1, normalize(x2 + q1), std::array<Expr, 2>{x1, normalize(x2 - q1)}};
  PointTransform s2{normalize(x1 + q2), x2, std::array<Expr, 2>{normalize(x1 - q2), x2}};
  return compose(s2, s1);
}

PolynomialField random_field(Rng& rng, int degree) {
  return {random_polynomial(rng, degree, 0, 0.6, 2), random_polynomial(rng, degree, 0, 0.6, 2)};
}

Section random_section(Rng& rng, int degree) {
  Section s;
  for (auto& u : s.u) u = random_polynomial(rng, degree, 0, 0.5, 2);
  return s;
}

}  // namespace jetlin
