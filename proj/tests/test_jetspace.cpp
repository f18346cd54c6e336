#include "support.hpp"

#include "jetlin/json_io.hpp"

using namespace jetlin;
using jetlin::test::E;
using jetlin::test::Q;
using jetlin::test::rhs;

namespace {
const Point origin{Scalar(0), Scalar(0)};
}

TEST(MultiIndex, Positions) {
  EXPECT_EQ(MultiIndex::count_up_to(2), 6u);
  std::size_t n = 0;
  for (MultiIndex s : MultiIndex::up_to(3)) {
    EXPECT_EQ(s.position(), n);
    EXPECT_EQ(MultiIndex::at(n), s);
    ++n;
  }
  EXPECT_EQ(u_name(0, MultiIndex{1, 1}), "u0_12");
  EXPECT_EQ(u_name(3, MultiIndex{}), "u3");
  EXPECT_EQ(x_name(2, MultiIndex{2, 0}), "X2_11");
}

TEST(RhsToSection, CoefficientReading) {
  Section z = rhs("0");
  for (const Expr& u : z.u) EXPECT_TRUE(u.is_zero());

  Section p1 = rhs("6*y^2 + x");
  EXPECT_EQ(normalize(p1.u[0]), normalize(E("6*x2^2 + x1")));
  for (int i = 1; i < 4; ++i) EXPECT_TRUE(normalize(p1.u[static_cast<std::size_t>(i)]).is_zero());

  Section q = rhs("p^2/y");
  EXPECT_EQ(normalize(q.u[2]), normalize(E("1/x2")));
  EXPECT_TRUE(normalize(q.u[0]).is_zero());
  EXPECT_TRUE(normalize(q.u[1]).is_zero());
  EXPECT_TRUE(normalize(q.u[3]).is_zero());

  Section cubic = rhs("x*p^3 - p + y");
  EXPECT_EQ(normalize(cubic.u[3]), E("x1"));
  EXPECT_EQ(normalize(cubic.u[1]), E("-1"));
}

TEST(RhsToSection, DegreeAboveThree) {
  EXPECT_THROW(rhs("p^4"), NotInClassError);
  EXPECT_THROW(rhs("y*p^5 + 1"), NotInClassError);
  EXPECT_THROW(rhs("sin(p)"), NotInClassError);
}

TEST(JetEval, ZeroSection) {
  Rng rng(1);
  for (int n = 0; n < 5; ++n) {
    JetPoint theta = jet_eval(Section::zero(), random_point(rng), 2);
    for (int i = 0; i < 4; ++i)
      for (MultiIndex s : MultiIndex::up_to(2)) EXPECT_TRUE(theta.u(i, s).is_zero());
  }
}

TEST(JetEval, PainleveAtOrigin) {
  JetPoint theta = jet_eval(rhs("6*y^2 + x"), origin, 2);
  EXPECT_EQ(theta.u(0, {}), Q(0));
  EXPECT_EQ(theta.u(0, {1, 0}), Q(1));
  EXPECT_EQ(theta.u(0, {0, 1}), Q(0));
  EXPECT_EQ(theta.u(0, {0, 2}), Q(12));
  EXPECT_EQ(theta.u(0, {2, 0}), Q(0));
  EXPECT_EQ(theta.u(0, {1, 1}), Q(0));
  for (int i = 1; i < 4; ++i)
    for (MultiIndex s : MultiIndex::up_to(2)) EXPECT_TRUE(theta.u(i, s).is_zero());
  EXPECT_TRUE(theta.is_exact());
}

TEST(JetEval, DirectDifferentiationOracle) {
  Rng rng(2);
  for (int n = 0; n < 10; ++n) {
    Section s = random_section(rng, 3);
    Point p = random_point(rng);
    JetPoint theta = jet_eval(s, p, 3);
    Env env{{"x1", p[0]}, {"x2", p[1]}};
    for (int i = 0; i < 4; ++i)
      for (MultiIndex sigma : MultiIndex::up_to(3)) {
        Expr d = s.u[static_cast<std::size_t>(i)];
        for (int a = 0; a < sigma.r1; ++a) d = diff(d, "x1");
        for (int b = 0; b < sigma.r2; ++b) d = diff(d, "x2");
        EXPECT_EQ(theta.u(i, sigma), eval(d, env)) << u_name(i, sigma);
      }
  }
}

TEST(JetSpace, Dimensions) {
  EXPECT_EQ(JetPoint(2, origin).total_dimension(), 26u);
  EXPECT_EQ(JetPoint(2, origin).fiber_dimension(), 24u);
  EXPECT_EQ(JetPoint(0, origin).fiber_dimension(), 4u);
}

TEST(Project, TowerAndRecompute) {
  Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    JetPoint theta = random_jet(rng, 3);
    EXPECT_EQ(project(theta, 3), theta);
    EXPECT_EQ(project(project(theta, 2), 1), project(theta, 1));
    Section s = random_section(rng, 3);
    Point p = random_point(rng);
    EXPECT_EQ(project(jet_eval(s, p, 2), 1), jet_eval(s, p, 1));
  }
  EXPECT_THROW(project(JetPoint(1, origin), 2), DomainError);
}

TEST(RepresentativeSection, ZeroJet) {
  Section s = representative_section(JetPoint(2, origin));
  for (const Expr& u : s.u) EXPECT_TRUE(normalize(u).is_zero());
}

TEST(RepresentativeSection, RoundTrip) {
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    JetPoint theta = random_jet(rng, static_cast<int>(n % 4));
    EXPECT_EQ(jet_eval(representative_section(theta), theta.base(), theta.order()), theta);
  }
}

TEST(RepresentativeSection, HigherTermDoesNotChangeJet) {
  Rng rng(5);
  for (int n = 0; n < 10; ++n) {
    JetPoint theta = random_jet(rng, 2);
    Section a = representative_section(theta);
    Section b = a;
    Expr dx = Expr::variable("x1") - Expr(theta.base()[0].exact());
    Expr dy = Expr::variable("x2") - Expr(theta.base()[1].exact());
    b.u[0] = b.u[0] + Expr(rng.nonzero_rational()) * pow(dx, 3);
    b.u[2] = b.u[2] + Expr(rng.nonzero_rational()) * pow(dx, 2) * dy;
    EXPECT_EQ(jet_eval(a, theta.base(), 2), jet_eval(b, theta.base(), 2));
    EXPECT_NE(jet_eval(a, theta.base(), 3), jet_eval(b, theta.base(), 3));
  }
}

TEST(JetJson, RoundTrip) {
  Rng rng(6);
  for (int n = 0; n < 20; ++n) {
    JetPoint theta = random_jet(rng, 2);
    EXPECT_EQ(jet_from_json(json::parse(to_json(theta).dump())), theta);
  }
  json j = {{"order", 1}, {"base", {"0", "1/2"}}, {"coords", {{{"i", 0}, {"sigma", {1, 0}}, {"value", "3/4"}}}}};
  JetPoint theta = jet_from_json(j);
  EXPECT_EQ(theta.u(0, {1, 0}), Q(3, 4));
  EXPECT_EQ(theta.base()[1], Q(1, 2));
  j["coords"][0]["sigma"] = {2, 0};
  EXPECT_THROW(jet_from_json(j), DomainError);
}
