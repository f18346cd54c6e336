#include "support.hpp"

using namespace jetlin;
using jetlin::test::E;
using jetlin::test::Q;

namespace {

const Point origin{Scalar(0), Scalar(0)};

VectorFieldJet exact_field(Rng& rng, int order, const Point& p) {
  VectorFieldJet X(order, p);
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(order)) X.at(i, t) = Scalar(rng.rational(3, 3));
  return X;
}

}  // namespace

TEST(VectorFieldJet, OfExpressions) {
  VectorFieldJet X = VectorFieldJet::of(E("x1^2*x2"), E("3 - x2"), {Q(1), Q(2)}, 3);
  EXPECT_EQ(X.at(1, {}), Q(2));
  EXPECT_EQ(X.at(1, {1, 0}), Q(4));
  EXPECT_EQ(X.at(1, {2, 1}), Q(2));
  EXPECT_EQ(X.at(2, {0, 1}), Q(-1));
  EXPECT_TRUE(X.at(2, {0, 2}).is_zero());
}

TEST(VectorFieldJet, VectorRoundTrip) {
  Rng rng(1);
  VectorFieldJet X = exact_field(rng, 3, origin);
  EXPECT_EQ(X.to_vector().size(), VectorFieldJet::vector_size(3));
  EXPECT_EQ(VectorFieldJet::from_vector(X.to_vector(), 3, origin), X);
  EXPECT_EQ(VectorFieldJet::vector_size(4), 30u);
  EXPECT_EQ(VectorFieldJet::vector_size(2, 2), 6u);
}

TEST(Psi, ZeroField) {
  Rng rng(2);
  JetPoint theta = random_jet(rng, 1);
  auto v = psi(VectorFieldJet(2, theta.base()), theta);
  for (const Scalar& s : v) EXPECT_TRUE(s.is_zero());
}

TEST(Psi, ConstantFieldAlongX1) {
  Rng rng(3);
  for (int n = 0; n < 5; ++n) {
    JetPoint theta = random_jet(rng, 1);
    VectorFieldJet X(2, theta.base());
    X.at(1, {}) = Q(1);
    auto v = psi(X, theta);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(v[static_cast<std::size_t>(i)], Scalar(-theta.u(i, {1, 0}).exact()));
  }
}

TEST(Psi, OnlyX2_11) {
  Rng rng(4);
  JetPoint theta = random_jet(rng, 1);
  VectorFieldJet X(2, theta.base());
  X.at(2, {2, 0}) = Q(1);
  auto v = psi(X, theta);
  EXPECT_EQ(v[0], Q(1));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_TRUE(v[i].is_zero());
}

TEST(Psi, AgainstFlow) {
  Rng rng(5);
  for (double d : flow_oracle({Expr(0), Expr(0)}, random_section(rng), origin)) EXPECT_NEAR(d, 0, 1e-10);
  for (int n = 0; n < 10; ++n) {
    PolynomialField X = random_field(rng, 2);
    Section s = random_section(rng, 2);
    Point p = random_point(rng, 1, 4);
    auto exact = psi(X.jet(p, 2), jet_eval(s, p, 1));
    auto approx = flow_oracle(X, s, p);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(exact[i].to_double(), approx[i], 1e-5);
  }
}

TEST(TotalDerivative, EmptyIndexIsPsi) {
  Rng rng(6);
  for (int n = 0; n < 5; ++n) {
    JetPoint theta = random_jet(rng, 2);
    VectorFieldJet X = exact_field(rng, 3, theta.base());
    EXPECT_EQ(total_derivative_psi(X, project(theta, 1), {}), psi(X.truncated(2), project(theta, 1)));
  }
}

TEST(TotalDerivative, LinearFormMatchesValue) {
  Rng rng(7);
  JetPoint theta = random_jet(rng, 2);
  VectorFieldJet X = exact_field(rng, 3, theta.base());
  for (MultiIndex sigma : MultiIndex::up_to(1))
    for (int i = 0; i < 4; ++i) {
      Rational sum = 0;
      for (const LinearTerm& t : total_derivative_psi_form(i, sigma, theta))
        sum += t.coefficient.exact() * X.at(t.component, t.tau).exact();
      EXPECT_EQ(Scalar(sum), total_derivative_psi(X, theta, sigma)[static_cast<std::size_t>(i)]);
    }
}

TEST(LiftField, ZeroField) {
  Rng rng(8);
  JetPoint theta = random_jet(rng, 2);
  LiftedVector v = lift_field(VectorFieldJet(3, theta.base()), theta);
  for (const Scalar& s : v.flatten()) EXPECT_TRUE(s.is_zero());
}

TEST(LiftField, AgainstFlowOfLiftedJets) {
  Rng rng(9);
  for (int n = 0; n < 10; ++n) {
    PolynomialField X = random_field(rng, 2);
    JetPoint theta = random_jet(rng, 2, 2, 3);
    std::vector<Scalar> exact = lift_field(X.jet(theta.base(), 3), theta).flatten();
    std::vector<double> approx = flow_lift_derivative(X, project(theta, 1));
    ASSERT_EQ(exact.size(), approx.size());
    for (std::size_t k = 0; k < exact.size(); ++k) EXPECT_LT(test::rel_err(approx[k], exact[k].to_double()), 1e-5);
  }
}

TEST(LiftField, HorizontalPlusEvolution) {
  Rng rng(10);
  JetPoint theta = random_jet(rng, 2);
  VectorFieldJet X = exact_field(rng, 3, theta.base());
  LiftedVector full = lift_field(X, theta), ev = evolution_part(X, theta);
  EXPECT_TRUE(ev.dx[0].is_zero() && ev.dx[1].is_zero());
  EXPECT_EQ(full.dx[0], X.at(1, {}));
  EXPECT_EQ(full.dx[1], X.at(2, {}));
  for (int i = 0; i < 4; ++i) {
    // total derivative of u^i along the base direction X at order 1
    Scalar horizontal(Rational(X.at(1, {}).exact() * theta.u(i, {1, 0}).exact() + X.at(2, {}).exact() * theta.u(i, {0, 1}).exact()));
    EXPECT_EQ(full.u(i, {}), ev.u(i, {}) + horizontal);
  }
}

TEST(Bracket, Classical) {
  Rng rng(11);
  VectorFieldJet X = exact_field(rng, 3, origin);
  VectorFieldJet zero(2, origin);
  EXPECT_EQ(bracket(X, X), zero);
  VectorFieldJet d1 = VectorFieldJet::of(E("1"), E("0"), origin, 3);
  VectorFieldJet euler = VectorFieldJet::of(E("x1"), E("0"), origin, 3);
  EXPECT_EQ(bracket(d1, euler), d1.truncated(2));
}

TEST(Bracket, AntisymmetryAndJacobi) {
  Rng rng(12);
  for (int n = 0; n < 10; ++n) {
    Point p = random_point(rng);
    VectorFieldJet X = exact_field(rng, 4, p), Y = exact_field(rng, 4, p), Z = exact_field(rng, 4, p);
    VectorFieldJet xy = bracket(X, Y), yx = bracket(Y, X);
    for (int i = 1; i <= 2; ++i)
      for (MultiIndex t : MultiIndex::up_to(3)) EXPECT_EQ(xy.at(i, t), Scalar(-yx.at(i, t).exact()));
    VectorFieldJet a = bracket(X.truncated(3), bracket(Y, Z));
    VectorFieldJet b = bracket(Y.truncated(3), bracket(Z, X));
    VectorFieldJet c = bracket(Z.truncated(3), bracket(X, Y));
    for (int i = 1; i <= 2; ++i)
      for (MultiIndex t : MultiIndex::up_to(2))
        EXPECT_EQ(a.at(i, t).exact() + b.at(i, t).exact() + c.at(i, t).exact(), 0);
  }
}

TEST(Bracket, PolynomialFields) {
  PolynomialField X{E("x2^2"), E("x1")}, Y{E("1"), E("x1*x2")};
  PolynomialField XY = bracket(X, Y);
  Point p{Q(1, 2), Q(-1)};
  EXPECT_EQ(XY.jet(p, 2), bracket(X.jet(p, 3), Y.jet(p, 3)));
}

TEST(Homomorphism, FiniteDifferenceBracket) {
  Rng rng(13);
  for (int n = 0; n < 10; ++n) {
    HomomorphismReport rep = homomorphism_check(random_field(rng, 2), random_field(rng, 2), random_jet(rng, 2, 2, 3));
    EXPECT_LT(rep.max_error, 1e-4);
    EXPECT_EQ(rep.lifted_bracket.size(), rep.bracket_of_lifts.size());
  }
}
