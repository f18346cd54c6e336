#include "support.hpp"

using namespace jetlin;
using jetlin::test::E;

namespace {

Expr random_tree(Rng& rng, int depth) {
  static const Expr x1 = Expr::variable("x1"), x2 = Expr::variable("x2");
  if (depth == 0 || rng.coin(0.2)) {
    switch (rng.integer(0, 2)) {
      case 0: return x1;
      case 1: return x2;
      default: return Expr(rng.rational(3, 3));
    }
  }
  Expr a = random_tree(rng, depth - 1);
  switch (rng.integer(0, 6)) {
    case 0: return a + random_tree(rng, depth - 1);
    case 1: return a * random_tree(rng, depth - 1);
    case 2: return a - random_tree(rng, depth - 1);
    case 3: return pow(a, rng.integer(2, 3));
    case 4: return exp(a * Expr(ratio(1, 4)));
    case 5: return sin(a);
    default: return a / (Expr(2) + pow(random_tree(rng, depth - 1), 2));
  }
}

Env point(double a, double b) { return {{"x1", Scalar(a)}, {"x2", Scalar(b)}}; }

}  // namespace

TEST(Parse, Constructors) {
  EXPECT_EQ(E("x2^2"), Expr::power(Expr::variable("x2"), 2));
  EXPECT_EQ(E("3/4"), Expr(ratio(3, 4)));
  EXPECT_EQ(E("-x1"), -Expr::variable("x1"));
}

TEST(Parse, Errors) {
  try {
    parse("3*u + 1/2", {"x1", "x2"});
    FAIL();
  } catch (const UnknownIdentifierError& e) {
    EXPECT_EQ(e.name(), "u");
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(E("x1 +"), ParseError);
  EXPECT_THROW(E("(x1"), ParseError);
  EXPECT_THROW(E("x1^x2"), ParseError);
  EXPECT_THROW(E("x1 $ 2"), ParseError);
  EXPECT_THROW(E("exp x1"), Error);
  EXPECT_THROW(E("2^3^2"), ParseError);
}

TEST(Parse, RoundTripRandom) {
  Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    Expr e = random_tree(rng, 4);
    EXPECT_EQ(normalize(E(render(e))), normalize(e)) << render(e);
  }
  Expr painleve = E("6*x2^2 + x1");
  EXPECT_EQ(normalize(E(render(painleve))), normalize(painleve));
}

TEST(Diff, Basics) {
  EXPECT_EQ(normalize(diff(E("x2^2"), "x2")), normalize(E("2*x2")));
  EXPECT_TRUE(diff(E("7/3"), "x1").is_zero());
  EXPECT_TRUE(is_zero(diff(E("exp(x1*x2)"), "x1") - E("x2*exp(x1*x2)")).zero());
}

TEST(Diff, FiniteDifferenceOracle) {
  Rng rng(3);
  Expr e = E("exp(x1*x2)");
  Expr d = diff(e, "x1");
  for (int n = 0; n < 10; ++n) {
    double a = rng.rational(1, 8).get_d(), b = rng.rational(1, 8).get_d(), h = 1e-5;
    double fd = (eval(e, point(a + h, b)).to_double() - eval(e, point(a - h, b)).to_double()) / (2 * h);
    double exact = eval(d, point(a, b)).to_double();
    EXPECT_LT(std::fabs(fd - exact) / std::max(1e-12, std::fabs(exact)), 1e-6);
  }
}

TEST(Diff, LinearAndLeibnizOnRandomTrees) {
  Rng rng(5);
  for (int n = 0; n < 60; ++n) {
    Expr a = random_tree(rng, 3), b = random_tree(rng, 3);
    for (const char* v : {"x1", "x2"}) {
      Expr sum_rule = diff(a + b, v) - diff(a, v) - diff(b, v);
      Expr leibniz = diff(a * b, v) - diff(a, v) * b - a * diff(b, v);
      EXPECT_TRUE(is_zero(sum_rule).zero()) << render(a) << " ; " << render(b);
      EXPECT_TRUE(is_zero(leibniz).zero()) << render(a) << " ; " << render(b);
    }
  }
}

TEST(Diff, ChainRuleAgainstFiniteDifferences) {
  Rng rng(8);
  for (int n = 0; n < 40; ++n) {
    Expr e = random_tree(rng, 3);
    Expr d = diff(e, "x2");
    double a = 0.3, b = -0.2, h = 1e-5;
    try {
      double fd = (eval(e, point(a, b + h)).to_double() - eval(e, point(a, b - h)).to_double()) / (2 * h);
      EXPECT_LT(test::rel_err(fd, eval(d, point(a, b)).to_double()), 1e-5) << render(e);
    } catch (const SingularityError&) {
    }
  }
}

TEST(Eval, ExactAndSingular) {
  Env env{{"x1", Scalar(1)}, {"x2", Scalar(2)}};
  Scalar s = eval(E("x1+x2"), env);
  ASSERT_TRUE(s.is_exact());
  EXPECT_EQ(s.exact(), 3);
  Scalar q = eval(E("x1/3 + x2^2/7"), env);
  ASSERT_TRUE(q.is_exact());
  EXPECT_EQ(q.exact(), ratio(19, 21));
  try {
    eval(E("x2 + 1/x1"), {{"x1", Scalar(0)}, {"x2", Scalar(1)}});
    FAIL();
  } catch (const SingularityError& e) {
    EXPECT_EQ(e.subexpression(), "1/x1");
  }
  EXPECT_THROW(eval(E("log(x1)"), {{"x1", Scalar(-1)}}), SingularityError);
  EXPECT_FALSE(eval(E("exp(x1)"), env).is_exact());
}

TEST(Eval, DegreeFiveAgainstFactoredForm) {
  // product of linear factors, evaluated factor by factor, against the
  // expanded normal form
  Rng rng(21);
  std::vector<std::array<Rational, 3>> factors;
  Expr product(1);
  for (int k = 0; k < 5; ++k) {
    std::array<Rational, 3> f{rng.rational(3, 4), rng.rational(3, 4), rng.rational(3, 4)};
    factors.push_back(f);
    product = product * (Expr(f[0]) * Expr::variable("x1") + Expr(f[1]) * Expr::variable("x2") + Expr(f[2]));
  }
  Expr expanded = normalize(product);
  EXPECT_EQ(normal_form(expanded).numerator().degree(), 5u);
  for (int n = 0; n < 3; ++n) {
    Rational a = rng.rational(5, 7), b = rng.rational(5, 7);
    Rational direct = 1;
    for (const auto& f : factors) direct *= f[0] * a + f[1] * b + f[2];
    Scalar v = eval(expanded, {{"x1", Scalar(a)}, {"x2", Scalar(b)}});
    ASSERT_TRUE(v.is_exact());
    EXPECT_EQ(v.exact(), direct);
  }
}

TEST(Eval, ParsedCorpus) {
  struct Case {
    const char* text;
    Rational value;
  };
  Env env{{"x1", Scalar(ratio(1, 2))}, {"x2", Scalar(-3)}};
  const Case corpus[] = {
      {"x1 - x2 - x1", Rational(3)},
      {"2^3 * x1", Rational(4)},
      {"-x2^2", Rational(-9)},
      {"(-x2)^2", Rational(9)},
      {"x1/x2/2", ratio(-1, 12)},
      {"1/2/x1", Rational(1)},
      {"x2^-2", ratio(1, 9)},
      {"3*x1 + 1/2", Rational(2)},
  };
  for (const Case& c : corpus) EXPECT_EQ(eval(E(c.text), env).exact(), c.value) << c.text;
}

TEST(ZeroTest, Verdicts) {
  EXPECT_EQ(is_zero(E("(x1+x2)^2 - x1^2 - 2*x1*x2 - x2^2")).kind, ZeroVerdict::Kind::ProvenZero);
  EXPECT_EQ(is_zero(E("x1*x2")).kind, ZeroVerdict::Kind::ProvenNonZero);
  EXPECT_EQ(is_zero(E("1/(x1-1) - 1/(x1-1)")).kind, ZeroVerdict::Kind::ProvenZero);
  EXPECT_EQ(is_zero(E("x1/(x1^2 - x1) - 1/(x1 - 1)")).kind, ZeroVerdict::Kind::ProvenZero);
  EXPECT_EQ(is_zero(E("exp(x1)*exp(x2) - exp(x1)*exp(x2)")).kind, ZeroVerdict::Kind::ProvenZero);
  ZeroVerdict trig = is_zero(E("sin(x1)^2 + cos(x1)^2 - 1"));
  EXPECT_EQ(trig.kind, ZeroVerdict::Kind::NumericallyZero);
  EXPECT_EQ(trig.method, "sampling");
  EXPECT_EQ(trig.samples_used, 50);
  EXPECT_EQ(is_zero(E("exp(x1) - 1 - x1")).kind, ZeroVerdict::Kind::ProvenNonZero);
}

TEST(ZeroTest, InconclusiveWhenAllSamplesSingular) {
  EXPECT_THROW(is_zero(E("log(-1 - x1^2) - log(-1 - x1^2) + log(-1 - x1^2)")), InconclusiveError);
}

TEST(ZeroTest, OptionsAreHonoured) {
  ZeroTestOptions o;
  o.samples = 7;
  ZeroVerdict v = is_zero(E("sin(2*x1) - 2*sin(x1)*cos(x1)"), o);
  EXPECT_EQ(v.samples_used, 7);
  for (const Env& env : sample_points({"x1", "x2"}, o)) {
    for (const auto& [k, s] : env) {
      ASSERT_TRUE(s.is_exact());
      EXPECT_LE(abs(s).exact(), o.box);
      EXPECT_LE(s.exact().get_den(), o.max_denominator);
    }
  }
}

TEST(Normalize, Idempotent) {
  Rng rng(17);
  for (int n = 0; n < 100; ++n) {
    Expr e = random_tree(rng, 4);
    Expr once = normalize(e);
    EXPECT_EQ(normalize(once), once) << render(e);
  }
}

TEST(Normalize, RationalExactness) {
  Expr e = E("(x1^2 - x2^2)/(x1 - x2) - x1");
  EXPECT_EQ(normalize(e), Expr::variable("x2"));
  Scalar v = eval(E("1/3 + x1/7"), {{"x1", Scalar(ratio(2, 5))}});
  ASSERT_TRUE(v.is_exact());
  EXPECT_EQ(v.exact(), ratio(41, 105));
}
