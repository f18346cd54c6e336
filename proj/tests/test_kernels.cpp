#include "support.hpp"

#include "jetlin/kernels.hpp"

using namespace jetlin;
using jetlin::test::E;
using jetlin::test::rhs;

TEST(Kernels, RoutesSerialEqualsParallel) {
  Rng rng(1);
  std::vector<JetPoint> jets;
  for (int n = 0; n < 40; ++n) jets.push_back(random_jet(rng, 2));
  auto a = check_routes_serial(jets), b = check_routes_parallel(jets);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    EXPECT_TRUE(a[n].passed());
    EXPECT_EQ(a[n].passed(), b[n].passed());
    EXPECT_EQ(a[n].closed.F1, b[n].closed.F1);
    EXPECT_EQ(a[n].closed.F2, b[n].closed.F2);
    EXPECT_EQ(a[n].constructive.F1, b[n].constructive.F1);
  }
}

TEST(Kernels, SamplesSerialEqualsParallel) {
  ZeroTestOptions o;
  o.samples = 200;
  auto points = sample_points({"x1", "x2"}, o);
  Expr e = E("exp(x1) / (x2 - 1) + x1^3");
  auto a = evaluate_samples_serial(e, points), b = evaluate_samples_parallel(e, points);
  EXPECT_EQ(a, b);
  std::vector<Env> singular{{{"x1", Scalar(0)}, {"x2", Scalar(1)}}};
  EXPECT_FALSE(evaluate_samples_parallel(e, singular)[0].has_value());
}

TEST(Kernels, AnalyzeSerialEqualsParallel) {
  Rng rng(2);
  Section hopeless;
  hopeless.u[0] = E("x2^3*log(-1 - x1^2 - x2^2)");
  std::vector<Section> eqs{Section::zero(), rhs("y^2"), rhs("p^2/y"), hopeless};
  for (int n = 0; n < 8; ++n) eqs.push_back(pushforward_equation(random_polynomial_transform(rng), Section::zero()));
  auto a = analyze_serial(eqs), b = analyze_parallel(eqs);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    ASSERT_EQ(a[n].verdict.has_value(), b[n].verdict.has_value()) << n;
    EXPECT_EQ(a[n].error, b[n].error);
    if (a[n].verdict) {
      EXPECT_EQ(a[n].verdict->kind, b[n].verdict->kind);
      EXPECT_EQ(a[n].verdict->F[0], b[n].verdict->F[0]);
    }
  }
  EXPECT_EQ(a[1].verdict->kind, Verdict::Kind::NotLinearizable);
  EXPECT_EQ(a[3].verdict->kind, Verdict::Kind::Inconclusive);
  EXPECT_GE(max_threads(), 1);
}
