#include "support.hpp"

using namespace jetlin;
using jetlin::test::E;
using jetlin::test::Q;
using jetlin::test::rhs;

namespace {

const Point origin{Scalar(0), Scalar(0)};

bool same_section(const Section& a, const Section& b) {
  for (std::size_t i = 0; i < 4; ++i)
    if (!is_zero(a.u[i] - b.u[i]).zero()) return false;
  return true;
}

}  // namespace

TEST(PointTransform, ParseAndApply) {
  PointTransform f = PointTransform::parse("2*x", "y + x");
  Point q = f.apply({Q(1, 2), Q(3)});
  EXPECT_EQ(q[0], Q(1));
  EXPECT_EQ(q[1], Q(7, 2));
  ASSERT_TRUE(f.inverse.has_value());
  auto J = f.jacobian(origin);
  EXPECT_EQ(J[0][0], Q(2));
  EXPECT_EQ(J[1][0], Q(1));
  EXPECT_THROW(PointTransform::parse("x + z", "y"), UnknownIdentifierError);
}

TEST(SymbolicInverse, KnownShapes) {
  auto check = [](const char* a, const char* b) {
    PointTransform f = PointTransform::parse(a, b);
    ASSERT_TRUE(f.inverse.has_value()) << a << ", " << b;
    Rng rng(9);
    for (int n = 0; n < 5; ++n) {
      Point p = random_point(rng, 1, 4);
      Point q = f.apply(p);
      Env env{{"x1", q[0]}, {"x2", q[1]}};
      double back1 = eval((*f.inverse)[0], env).to_double(), back2 = eval((*f.inverse)[1], env).to_double();
      EXPECT_NEAR(back1, p[0].to_double(), 1e-12);
      EXPECT_NEAR(back2, p[1].to_double(), 1e-12);
    }
  };
  check("2*x", "y + x");
  check("x", "y + x^2");
  check("y", "x");
  check("x", "exp(y)");
  check("x + y^3", "y");
  EXPECT_FALSE(symbolic_inverse(E("x1 + x2^2"), E("x2 + x1^2")).has_value());
}

TEST(InverseJet, Identity) {
  MapJet g = inverse_jet(PointTransform::identity(), {Q(1), Q(-2)}, 3);
  MapJet id = MapJet::identity({Q(1), Q(-2)}, 3);
  for (int i = 0; i < 2; ++i)
    for (int d = 0; d <= 3; ++d)
      for (int b = 0; b <= d; ++b) EXPECT_EQ(g.f[i].coeff(d - b, b), id.f[i].coeff(d - b, b));
}

TEST(InverseJet, AffineByHand) {
  MapJet g = inverse_jet(PointTransform::parse("2*x", "y + x"), origin, 2);
  EXPECT_EQ(g.f[0].coeff(1, 0), Q(1, 2));
  EXPECT_EQ(g.f[0].coeff(0, 1), Q(0));
  EXPECT_EQ(g.f[1].coeff(1, 0), Q(-1, 2));
  EXPECT_EQ(g.f[1].coeff(0, 1), Q(1));
  for (int i = 0; i < 2; ++i)
    for (int b = 0; b <= 2; ++b) EXPECT_TRUE(g.f[i].coeff(2 - b, b).is_zero());
}

TEST(InverseJet, ComposesToIdentity) {
  Rng rng(10);
  for (int n = 0; n < 10; ++n) {
    PointTransform f = random_polynomial_transform(rng);
    Point p = random_point(rng, 1, 3);
    MapJet fj = taylor_map(f, p, 4);
    MapJet both = compose(inverse_jet(fj), fj);
    MapJet id = MapJet::identity(p, 4);
    for (int i = 0; i < 2; ++i)
      for (int d = 0; d <= 4; ++d)
        for (int b = 0; b <= d; ++b) EXPECT_EQ(both.f[i].coeff(d - b, b), id.f[i].coeff(d - b, b));
  }
}

TEST(InverseJet, SingularJacobian) {
  EXPECT_THROW(inverse_jet(PointTransform::parse("x^2", "y"), origin, 2), SingularJacobianError);
}

TEST(Pushforward, Identity) {
  Rng rng(11);
  for (int n = 0; n < 5; ++n) {
    Section s = random_section(rng, 2);
    EXPECT_TRUE(same_section(pushforward_equation(PointTransform::identity(), s), s));
  }
}

TEST(Pushforward, SwapKeepsLines) {
  Section t = pushforward_equation(PointTransform::parse("y", "x"), Section::zero());
  for (const Expr& u : t.u) EXPECT_TRUE(is_zero(u).zero());
  CurveReport rep = solution_curve_oracle(PointTransform::parse("y", "x"), Section::zero(), {0, 0, 1.5});
  EXPECT_LT(rep.max_residual, 1e-6);
}

TEST(Pushforward, ExponentialOfFlat) {
  Section t = pushforward_equation(PointTransform::parse("x", "exp(y)"), Section::zero());
  EXPECT_TRUE(is_zero(t.u[0]).zero());
  EXPECT_TRUE(is_zero(t.u[1]).zero());
  EXPECT_TRUE(is_zero(t.u[2] - E("1/x2")).zero());
  EXPECT_TRUE(is_zero(t.u[3]).zero());
  EXPECT_TRUE(same_section(t, rhs("p^2/y")));
}

TEST(Pushforward, SourceFormMatches) {
  Rng rng(12);
  for (int n = 0; n < 5; ++n) {
    PointTransform f = random_polynomial_transform(rng);
    Section s = random_section(rng, 1);
    Section t = pushforward_equation(f, s);
    auto src = pushforward_source_form(f, s);
    Point p = random_point(rng, 1, 3);
    Point q = f.apply(p);
    Env at_q{{"x1", q[0]}, {"x2", q[1]}};
    Env at_p{{"x1", p[0]}, {"x2", p[1]}};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(eval(t.u[i], at_q), evaluate(src[i], at_p));
  }
}

TEST(LiftJet, Identity) {
  Rng rng(14);
  for (int n = 0; n < 5; ++n) {
    JetPoint theta = random_jet(rng, 2);
    EXPECT_EQ(lift_jet(PointTransform::identity(), theta), theta);
  }
}

TEST(LiftJet, MatchesPushforwardOfRepresentative) {
  Rng rng(15);
  for (int n = 0; n < 10; ++n) {
    PointTransform f = random_polynomial_transform(rng);
    JetPoint theta = random_jet(rng, 2, 2, 3);
    Section t = pushforward_equation(f, representative_section(theta));
    EXPECT_EQ(lift_jet(f, theta), jet_eval(t, f.apply(theta.base()), 2));
  }
}

TEST(LiftJet, RepresentativeIndependence) {
  Rng rng(16);
  for (int n = 0; n < 5; ++n) {
    PointTransform f = random_polynomial_transform(rng);
    JetPoint theta = random_jet(rng, 1);
    Section a = representative_section(theta), b = a;
    Expr dx = Expr::variable("x1") - Expr(theta.base()[0].exact());
    b.u[1] = b.u[1] + Expr(rng.nonzero_rational()) * pow(dx, 2);
    Point q = f.apply(theta.base());
    EXPECT_EQ(jet_eval(pushforward_equation(f, a), q, 1), jet_eval(pushforward_equation(f, b), q, 1));
  }
}

TEST(LiftJet, Functorial) {
  Rng rng(17);
  for (int n = 0; n < 10; ++n) {
    PointTransform f = random_polynomial_transform(rng), h = random_polynomial_transform(rng);
    JetPoint theta = random_jet(rng, 2, 2, 3);
    EXPECT_EQ(lift_jet(compose(f, h), theta), lift_jet(f, lift_jet(h, theta)));
  }
}

TEST(LiftJet, CommutesWithProjection) {
  Rng rng(18);
  for (int n = 0; n < 10; ++n) {
    PointTransform f = random_polynomial_transform(rng);
    JetPoint theta = random_jet(rng, 3);
    JetPoint lifted = lift_jet(f, theta);
    for (int r = 0; r < 3; ++r) EXPECT_EQ(project(lifted, r), lift_jet(f, project(theta, r)));
  }
}

TEST(LiftJet, DirectRouteAgrees) {
  Rng rng(19);
  for (int n = 0; n < 10; ++n) {
    PointTransform f = random_polynomial_transform(rng);
    JetPoint theta = random_jet(rng, 2);
    EXPECT_EQ(lift_jet_direct(f, theta), lift_jet(f, theta));
  }
  JetPoint theta = random_jet(rng, 1);
  EXPECT_EQ(lift_jet_direct(PointTransform::parse("x", "exp(y)"), theta).order(), 1);
}

TEST(Compose, CarriesInverse) {
  PointTransform f = PointTransform::parse("2*x", "y + x");
  PointTransform h = PointTransform::parse("x", "y + x^2");
  PointTransform fh = compose(f, h);
  ASSERT_TRUE(fh.inverse.has_value());
  EXPECT_EQ(normalize(fh.f1), normalize(E("2*x1")));
  EXPECT_EQ(normalize(fh.f2), normalize(E("x2 + x1^2 + x1")));
  Point p{Q(1, 3), Q(-1)};
  Point q = fh.apply(p);
  Env env{{"x1", q[0]}, {"x2", q[1]}};
  EXPECT_EQ(eval((*fh.inverse)[0], env), p[0]);
  EXPECT_EQ(eval((*fh.inverse)[1], env), p[1]);
}

TEST(SolutionCurves, IdentityIsIntegrationError) {
  CurveReport rep = solution_curve_oracle(PointTransform::identity(), rhs("y/4 - p/3"), {0, 1, 0.5});
  EXPECT_LT(rep.max_residual, 1e-6);
  EXPECT_GT(rep.points_checked, 0);
}

TEST(SolutionCurves, ExponentialOfLine) {
  CurveReport rep = solution_curve_oracle(PointTransform::parse("x", "exp(y)"), Section::zero(), {0, 0, 1});
  EXPECT_LT(rep.max_residual, 1e-6);
  EXPECT_TRUE(rep.used_pushforward);
}

TEST(SolutionCurves, RandomNearIdentityCubics) {
  Rng rng(20);
  const Expr x1 = Expr::variable("x1"), x2 = Expr::variable("x2");
  for (int n = 0; n < 10; ++n) {
    Expr q = Expr(rng.rational(1, 8)) * pow(x1, 3) + Expr(rng.rational(1, 8)) * pow(x1, 2);
    PointTransform shear{x1, normalize(x2 + q), std::array<Expr, 2>{x1, normalize(x2 - q)}};
    Rational a = rng.rational(1, 8);
    PointTransform slant{normalize(x1 + Expr(a) * x2), x2, std::array<Expr, 2>{normalize(x1 - Expr(a) * x2), x2}};
    InitialValue ivp{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    CurveReport rep = solution_curve_oracle(compose(slant, shear), Section::zero(), ivp, 0.5, 4000);
    EXPECT_LT(rep.max_residual, 1e-5) << n;
  }
}
