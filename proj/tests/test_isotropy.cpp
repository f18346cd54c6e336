#include "support.hpp"

using namespace jetlin;
using jetlin::test::Q;

namespace {
const Point origin{Scalar(0), Scalar(0)};
}

TEST(IsotropyAlgebra, ZeroJets) {
  EXPECT_EQ(isotropy_algebra(JetPoint(0, origin)).dimension(), 6u);
  EXPECT_EQ(isotropy_algebra(JetPoint(2, origin)).dimension(), 6u);
}

TEST(IsotropyAlgebra, FirstOrderPartIsFull) {
  Rng rng(1);
  for (int n = 0; n < 10; ++n) {
    Subspace g = isotropy_algebra(random_jet(rng, 0));
    EXPECT_EQ(g.dimension(), 6u);
    EXPECT_EQ(g.projected(1).dimension(), 4u);
  }
}

TEST(IsotropyAlgebra, RejectsFloatJets) {
  JetPoint theta(1, origin);
  theta.u(0, {1, 0}) = Scalar(0.5);
  EXPECT_THROW(isotropy_algebra(theta), DomainError);
  EXPECT_THROW(isotropy_space(theta), DomainError);
}

TEST(IsotropySpace, Laws) {
  Rng rng(2);
  for (int n = 0; n < 10; ++n) {
    JetPoint theta2 = random_jet(rng, 2);
    JetPoint theta1 = project(theta2, 1), theta0 = project(theta2, 0);
    Subspace a2 = isotropy_space(theta2), a1 = isotropy_space(theta1);
    EXPECT_TRUE(a1.contains(isotropy_algebra(theta0)));
    EXPECT_TRUE(a2.contains(isotropy_algebra(theta1)));
    EXPECT_EQ(a2.projected(2), a1);
    EXPECT_EQ(a1.dimension(), isotropy_algebra(theta0).dimension() + 2);
    EXPECT_EQ(a1.projected(0).dimension(), 2u);
    for (std::size_t i = 0; i < a2.dimension(); ++i)
      for (std::size_t j = i + 1; j < a2.dimension(); ++j) EXPECT_TRUE(a1.contains(bracket(a2.element(i), a2.element(j))));
  }
}

TEST(Symbol, DimensionAndGenerators) {
  Subspace g = symbol_g(JetPoint(0, origin));
  EXPECT_EQ(g.dimension(), 2u);
  EXPECT_EQ(generator_e1(), (Vector{2, 0, 0, 0, 1, 0}));
  EXPECT_EQ(generator_e2(), (Vector{0, 1, 0, 0, 0, 2}));
  EXPECT_TRUE(span_equal(g.basis, {generator_e1(), generator_e2()}, 6));
  Rng rng(3);
  for (int n = 0; n < 10; ++n) EXPECT_EQ(symbol_g(random_jet(rng, 0)), g);
}

TEST(Prolongation, Cases) {
  EXPECT_EQ(prolong(symbol_g(JetPoint(0, origin))).dimension(), 0u);
  EXPECT_EQ(prolong(full_grade(1)).dimension(), 6u);
  Subspace zero = make_subspace(2, 2, origin, {});
  EXPECT_EQ(prolong(zero).dimension(), 0u);
  EXPECT_EQ(prolong(full_grade(2)).dimension(), 8u);
}

TEST(GradeDerivative, DirectionalDerivative) {
  // X^1 = (x1)^2 / 2 in grade 2 has [d_1, X] = x1 d_1
  Vector x{1, 0, 0, 0, 0, 0};
  EXPECT_EQ(grade_derivative(x, 2, 1), (Vector{1, 0, 0, 0}));
  EXPECT_EQ(grade_derivative(x, 2, 2), (Vector{0, 0, 0, 0}));
}

TEST(Spencer, SymbolComplex) {
  SpencerComplex c = symbol_spencer_complex(JetPoint(0, origin));
  EXPECT_EQ(c.dims[0], 0u);
  EXPECT_EQ(c.dims[1], 4u);
  EXPECT_EQ(c.dims[2], 4u);
  EXPECT_EQ(rank(c.d1), 4u);
  EXPECT_EQ(c.cohomology[1], 0u);
  EXPECT_EQ(c.cohomology[2], 0u);
  if (c.d0.rows() > 0 && c.d0.cols() > 0) EXPECT_TRUE((c.d1 * c.d0).is_zero());
}

TEST(Spencer, FullGradesAreExact) {
  SpencerComplex c = spencer_complex(full_grade(3), full_grade(2), full_grade(1));
  EXPECT_EQ(c.dims[0], 8u);
  EXPECT_EQ(c.dims[1], 12u);
  EXPECT_EQ(c.dims[2], 4u);
  EXPECT_TRUE((c.d1 * c.d0).is_zero());
  EXPECT_EQ(c.cohomology[1], 0u);
  EXPECT_EQ(c.cohomology[2], 0u);
}

TEST(Spencer, GradeCompatibilityChecked) {
  Subspace zero1 = make_subspace(1, 1, origin, {});
  EXPECT_THROW(spencer_complex(full_grade(3), full_grade(2), zero1), DomainError);
}

TEST(Orbit, ZeroTwoJet) {
  JetPoint zero2(2, origin);
  std::size_t orbit = orbit_dimension(zero2);
  EXPECT_EQ(orbit, 24u);
  EXPECT_EQ(orbit, VectorFieldJet::vector_size(4) - isotropy_algebra(zero2).dimension());
}
