#include "support.hpp"

using namespace jetlin;
using jetlin::test::E;
using jetlin::test::Q;
using jetlin::test::rhs;

namespace {

const Point origin{Scalar(0), Scalar(0)};

void expect_frames_equal(const HorizontalFrame& a, const HorizontalFrame& b) {
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex jk : MultiIndex::of_order(2))
      for (int r = 1; r <= 2; ++r) EXPECT_EQ(a.f(i, jk, r), b.f(i, jk, r)) << i << jk.digits() << "," << r;
}

}  // namespace

TEST(Frame1, ZeroJet) {
  HorizontalFrame h = horizontal_frame_1(JetPoint(1, origin));
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex jk : MultiIndex::of_order(2))
      for (int r = 1; r <= 2; ++r) EXPECT_TRUE(h.f(i, jk, r).is_zero());
}

TEST(Frame1, SingleCoordinate) {
  JetPoint theta(1, origin);
  theta.u(0, {1, 0}) = Q(5);
  HorizontalFrame h = horizontal_frame_1(theta);
  EXPECT_EQ(h.f(2, {2, 0}, 1), Q(5));
  EXPECT_EQ(h.f(2, {1, 1}, 2), Q(0));
  EXPECT_EQ(h.f(2, {0, 2}, 1), Q(0));
  EXPECT_EQ(h.f(1, {2, 0}, 1), Q(0));
  int nonzero = 0;
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex jk : MultiIndex::of_order(2))
      for (int r = 1; r <= 2; ++r) nonzero += !h.f(i, jk, r).is_zero();
  EXPECT_EQ(nonzero, 1);
}

TEST(Frame1, WrongMixedCoefficientLeavesIsotropySpace) {
  // f^2_{12,2} = (2 u^1_2 - u^0_1)/3 would give -5/3 here
  JetPoint theta(1, origin);
  theta.u(0, {1, 0}) = Q(5);
  HorizontalFrame h = horizontal_frame_1_closed(theta);
  Subspace a1 = isotropy_space(theta);
  EXPECT_TRUE(a1.contains(h.vector(1)));
  EXPECT_TRUE(a1.contains(h.vector(2)));
  HorizontalFrame bad = h;
  bad.second[1][1][1] = Q(-5, 3);
  bad.second[1][2][0] = Q(-5, 3);
  EXPECT_EQ(bad.f(2, {1, 1}, 2), Q(-5, 3));
  EXPECT_FALSE(a1.contains(bad.vector(1)) && a1.contains(bad.vector(2)));
}

TEST(Frame1, ClosedEqualsSolved) {
  Rng rng(1);
  for (int n = 0; n < 50; ++n) {
    JetPoint theta = random_jet(rng, 1);
    expect_frames_equal(horizontal_frame_1_closed(theta), horizontal_frame_1_solved(theta));
    HorizontalFrame h = horizontal_frame_1(theta);
    // symmetry f^i_{jk,r} = f^i_{jr,k}
    EXPECT_EQ(h.f(1, {1, 1}, 1), h.f(1, {2, 0}, 2));
    EXPECT_EQ(h.f(2, {1, 1}, 2), h.f(2, {0, 2}, 1));
  }
}

TEST(Obstruction, ZeroJet) {
  ObstructionValue v = obstruction_at(JetPoint(2, origin));
  EXPECT_TRUE(v.F1.is_zero());
  EXPECT_TRUE(v.F2.is_zero());
}

TEST(Obstruction, CalibrationIsJetIndependent) {
  EXPECT_EQ(antisymmetrization_scale(), 3);
  Rng rng(2);
  int nonzero = 0;
  for (int n = 0; n < 50; ++n) {
    JetPoint theta = random_jet(rng, 2);
    ObstructionValue closed = obstruction_closed_form(theta);
    auto raw = antisymmetrized_frame(theta);
    EXPECT_EQ(closed.F1.exact(), 3 * raw[0].exact());
    EXPECT_EQ(closed.F2.exact(), 3 * raw[1].exact());
    nonzero += !closed.F1.is_zero();
  }
  EXPECT_GT(nonzero, 40);
}

TEST(Obstruction, FrameBracketIsOmegaOverThree) {
  Rng rng(3);
  for (int n = 0; n < 20; ++n) {
    JetPoint theta = random_jet(rng, 2);
    std::vector<Scalar> omega = obstruction_closed_form(theta).omega();
    std::vector<Scalar> b = frame_bracket(theta);
    ASSERT_EQ(b.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(3 * b[k].exact(), omega[k].exact()) << k;
  }
}

TEST(Obstruction, RoutesAgree) {
  Rng rng(4);
  for (int n = 0; n < 100; ++n) {
    JetPoint theta = random_jet(rng, 2);
    ObstructionValue a = obstruction_closed_form(theta), b = obstruction_constructive(theta);
    EXPECT_EQ(a.F1, b.F1);
    EXPECT_EQ(a.F2, b.F2);
  }
}

TEST(Obstruction, Witnesses) {
  JetPoint theta = jet_eval(rhs("y^2"), {Q(2, 3), Q(-5)}, 2);
  ObstructionValue v = obstruction_at(theta);
  EXPECT_EQ(v.F1, Q(6));
  EXPECT_TRUE(v.F2.is_zero());

  auto form = obstruction_form(rhs("6*y^2 + x"));
  EXPECT_EQ(form[0], Expr(36));
  EXPECT_EQ(form[1], Expr(0));

  auto flat = obstruction_form(Section::zero());
  EXPECT_TRUE(flat[0].is_zero());
  EXPECT_TRUE(flat[1].is_zero());

  Section q = rhs("p^2/y");
  auto g = obstruction_form(q);
  EXPECT_EQ(is_zero(g[0]).kind, ZeroVerdict::Kind::ProvenZero);
  EXPECT_EQ(is_zero(g[1]).kind, ZeroVerdict::Kind::ProvenZero);
  Rng rng(5);
  for (int n = 0; n < 5; ++n) {
    Point p{Scalar(rng.rational(3, 4)), Scalar(rng.nonzero_rational(3, 4))};
    ObstructionValue w = obstruction_at(jet_eval(q, p, 2));
    EXPECT_TRUE(w.F1.is_zero() && w.F2.is_zero());
  }
}

TEST(Obstruction, FormAgreesWithPointValues) {
  Rng rng(6);
  Section s = random_section(rng, 3);
  auto F = obstruction_form(s);
  for (int n = 0; n < 20; ++n) {
    Point p = random_point(rng);
    ObstructionValue v = obstruction_at(jet_eval(s, p, 2));
    Env env{{"x1", p[0]}, {"x2", p[1]}};
    EXPECT_EQ(eval(F[0], env), v.F1);
    EXPECT_EQ(eval(F[1], env), v.F2);
  }
}

TEST(Linearizable, Verdicts) {
  EXPECT_EQ(linearizable(Section::zero()).kind, Verdict::Kind::Linearizable);
  Verdict v = linearizable(rhs("y^2"));
  EXPECT_EQ(v.kind, Verdict::Kind::NotLinearizable);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness_values[0], Q(6));
  EXPECT_EQ(linearizable(rhs("p^2/y")).kind, Verdict::Kind::Linearizable);
  EXPECT_EQ(linearizable(rhs("-p^3 + x*p")).kind, Verdict::Kind::NotLinearizable);
}

TEST(Linearizable, TransformsOfFlatEquation) {
  Rng rng(7);
  for (int n = 0; n < 20; ++n) {
    Section s = pushforward_equation(random_polynomial_transform(rng), Section::zero());
    EXPECT_EQ(linearizable(s).kind, Verdict::Kind::Linearizable) << s.str();
  }
}

TEST(Linearizable, TranscendentalUsesSampling) {
  Section s = pushforward_equation(PointTransform::parse("x", "y + sin(x)"), Section::zero());
  Verdict v = linearizable(s);
  EXPECT_NE(v.kind, Verdict::Kind::NotLinearizable);
  EXPECT_NE(v.kind, Verdict::Kind::Inconclusive);
}

TEST(Invariance, Identity) {
  Rng rng(8);
  JetPoint theta = random_jet(rng, 2);
  InvarianceReport rep = invariance_check(PointTransform::identity(), theta, 0);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.before.F1, rep.after.F1);
  EXPECT_EQ(rep.before.F2, rep.after.F2);
}

TEST(Invariance, CubicShearAtOrigin) {
  Rng rng(9);
  for (int n = 0; n < 5; ++n) {
    JetPoint theta = random_jet(rng, 2);
    JetPoint at0(2, origin);
    for (int i = 0; i < 4; ++i)
      for (MultiIndex s : MultiIndex::up_to(2)) at0.u(i, s) = theta.u(i, s);
    InvarianceReport rep = invariance_check(PointTransform::parse("x", "y + x^3"), at0, 0);
    EXPECT_EQ(rep.kind, "identity-tangent");
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.deviation, 0);
  }
}

TEST(Invariance, TranslationAndAffine) {
  Rng rng(10);
  for (int n = 0; n < 5; ++n) {
    JetPoint theta = random_jet(rng, 2);
    InvarianceReport t = invariance_check(PointTransform::parse("x + 3", "y - 1/2"), theta, 0);
    EXPECT_TRUE(t.passed);
    EXPECT_EQ(t.before.F1, t.after.F1);
    EXPECT_EQ(t.before.F2, t.after.F2);
    InvarianceReport a = invariance_check(random_affine(rng), theta, 0);
    EXPECT_EQ(a.kind, "affine");
    EXPECT_TRUE(a.passed);
  }
}

TEST(Invariance, GeneralTransformsFactor) {
  Rng rng(11);
  for (int n = 0; n < 5; ++n) {
    JetPoint theta = random_jet(rng, 2, 2, 3);
    InvarianceReport rep = invariance_check(random_polynomial_transform(rng), theta);
    EXPECT_TRUE(rep.kind == "factored" || rep.kind == "affine") << rep.kind;
    EXPECT_TRUE(rep.passed) << rep.deviation;
    EXPECT_LT(rep.deviation, 1e-6);
  }
}

TEST(Invariance, SingularJacobian) {
  EXPECT_THROW(invariance_check(PointTransform::parse("x^2", "y"), JetPoint(2, origin)), SingularJacobianError);
}
