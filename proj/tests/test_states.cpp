#include "oracles.hpp"

#include "fneg/classify.hpp"
#include "fneg/measures.hpp"
#include "fneg/ptranspose.hpp"
#include "fneg/states.hpp"

#include <gtest/gtest.h>

#include <bit>

using namespace fneg;
using fneg::testing::max_diff;

namespace {

void expect_physical(const FockOperator& rho) {
  EXPECT_TRUE(rho.is_hermitian());
  EXPECT_TRUE(rho.is_parity_even());
  EXPECT_NEAR(std::abs(rho.trace() - Complex(1, 0)), 0.0, 1e-12);
  EXPECT_GE(rho.min_eigenvalue(), -1e-12);
}

}  // namespace

TEST(PureCoeffs, Validation) {
  EXPECT_THROW(PureCoeffs({1, 0, 0}, Sector::even), ValidationError);
  EXPECT_THROW(PureCoeffs({1, 1}, Sector::even), ValidationError);
  EXPECT_NO_THROW(PureCoeffs({Complex(0, 1), 0}, Sector::odd));
  EXPECT_EQ(PureCoeffs({1, 0, 0, 0}, Sector::even).num_modes(), 3);
}

TEST(PureCoeffs, BasisPlacement) {
  EXPECT_EQ(pure_basis_index(2, Sector::even, 1), 3U);
  EXPECT_EQ(pure_basis_index(2, Sector::odd, 0), 1U);
  EXPECT_EQ(pure_basis_index(3, Sector::even, 2), 6U);
  EXPECT_EQ(pure_basis_index(3, Sector::even, 3), 5U);
  EXPECT_EQ(pure_basis_index(3, Sector::odd, 0), 4U);
  EXPECT_EQ(pure_basis_index(3, Sector::odd, 1), 7U);
  const Vector v = PureCoeffs({0.6, Complex(0, 0.8)}, Sector::odd).state_vector();
  EXPECT_EQ(v(1), Complex(0.6, 0));
  EXPECT_EQ(v(2), Complex(0, 0.8));
}

TEST(Canonical, DimerMatrix) {
  Matrix expected = Matrix::Zero(4, 4);
  for (auto [r, c] : {std::pair{0, 0}, {0, 3}, {3, 0}, {3, 3}, {1, 1}, {1, 2}, {2, 1}, {2, 2}})
    expected(r, c) = 0.25;
  EXPECT_EQ(max_diff(majorana_dimer().matrix(), expected), 0.0);
}

TEST(Canonical, PsiPAtFourSevenths) {
  const FockOperator rho = psi_p(4.0 / 7.0);
  EXPECT_NEAR(std::abs(rho.matrix()(7, 7)), 1.0, 1e-14);
  const MeasureReport r = tripartite_report(rho);
  for (const char* k : {"J_ABC", "tau_ABC", "N_ABC", "pi_ABC"}) EXPECT_LE(std::abs(r.at(k)), 1e-12) << k;
}

TEST(Canonical, PsiPEndpoints) {
  EXPECT_LE(max_diff(psi_p(1.0).matrix(), ghz_state().matrix()), 1e-15);
  EXPECT_LE(max_diff(psi_p(0.0).matrix(), w_state().matrix()), 1e-15);
}

TEST(Canonical, WernerZeroIsMaximallyMixed) {
  EXPECT_LE(max_diff(werner(0.0).matrix(), Matrix::Identity(4, 4) / 4.0), 0.0);
  EXPECT_LE(max_diff(werner(1.0).matrix(), singlet().matrix()), 1e-16);
}

TEST(Canonical, AllArePhysical) {
  StateParams half;
  half.p = 0.5;
  for (const char* name : {"singlet", "majorana_dimer", "w", "ghz", "majorana_triple"})
    expect_physical(canonical_state(name));
  expect_physical(canonical_state("werner", half));
  expect_physical(canonical_state("psi_p", half));
  StateParams two;
  two.coeffs = PureCoeffs({0.6, 0.8}, Sector::even);
  expect_physical(canonical_state("two_mode_pure", two));
  StateParams three;
  three.coeffs = ghz_coeffs();
  EXPECT_LE(max_diff(canonical_state("three_mode_pure", three).matrix(), ghz_state().matrix()), 1e-15);
}

TEST(Canonical, Errors) {
  EXPECT_THROW(canonical_state("bogus"), ValidationError);
  EXPECT_THROW(canonical_state("werner"), ValidationError);
  StateParams bad;
  bad.p = 1.5;
  EXPECT_THROW(canonical_state("psi_p", bad), ValidationError);
  EXPECT_THROW(werner(-0.1), ValidationError);
  StateParams wrong;
  wrong.coeffs = ghz_coeffs();
  EXPECT_THROW(canonical_state("two_mode_pure", wrong), ValidationError);
}

TEST(Canonical, GhzAndWVectors) {
  const Vector g = ghz_vector();
  for (int i : {1, 2, 4, 7}) EXPECT_NEAR(std::abs(g(i)), 0.5, 1e-15);
  const Vector w = w_vector();
  for (int i : {1, 2, 4}) EXPECT_NEAR(std::abs(w(i)), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(w(7), Complex(0, 0));
}

TEST(Canonical, MajoranaTripleDirectBuild) {
  // (1/8)[1 + (i/sqrt3)(c1 c2 + c2 c3 + c3 c1)], c_j the f + f^dag Majorana of mode j.
  const ModeLayout l = ModeLayout::tripartite();
  const Matrix c1 = majorana_op(l, 0).matrix();
  const Matrix c2 = majorana_op(l, 2).matrix();
  const Matrix c3 = majorana_op(l, 4).matrix();
  const Matrix expected =
      (Matrix::Identity(8, 8) + Complex(0, 1 / std::sqrt(3.0)) * (c1 * c2 + c2 * c3 + c3 * c1)) / 8.0;
  EXPECT_LE(max_diff(majorana_triple().matrix(), expected), 1e-14);
}

TEST(RandomPure, SectorSupportAndDeterminism) {
  const ModeLayout two = ModeLayout::bipartite(1, 1);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Vector v = random_pure_vector(two, Sector::even, s);
    EXPECT_EQ(v(1), Complex(0, 0));
    EXPECT_EQ(v(2), Complex(0, 0));
    EXPECT_NEAR(v.norm(), 1.0, 1e-14);
  }
  const ModeLayout three = ModeLayout::tripartite();
  const Vector odd = random_pure_vector(three, Sector::odd, 4);
  EXPECT_LE((parity_op(three, three.all_modes()).matrix() * odd + odd).norm(), 1e-15);
  EXPECT_EQ(max_diff(random_pure(three, Sector::odd, 4).matrix(), random_pure(three, Sector::odd, 4).matrix()), 0.0);
}

TEST(RandomPure, FirstNonzeroAmplitudeRealPositive) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Vector v = random_pure_vector(ModeLayout::tripartite(), Sector::even, s);
    Eigen::Index k = 0;
    while (std::abs(v(k)) == 0.0) ++k;
    EXPECT_GT(v(k).real(), 0.0);
    EXPECT_EQ(v(k).imag(), 0.0);
  }
}

TEST(RandomDensity, Constraints) {
  const ModeLayout l = ModeLayout::bipartite(1, 2);
  const SubsystemSpec a = l.modes_of("A");
  for (std::uint64_t s = 0; s < 20; ++s) {
    const FockOperator any = random_density(l, s);
    expect_physical(any);
    const FockOperator t1 = random_density(l, s, DensityConstraint::type_i(a));
    expect_physical(t1);
    EXPECT_LE(subsystem_parity_type(t1, a).commutator_norm, 1e-12);
    const FockOperator t2 = random_density(l, s, DensityConstraint::type_ii(a));
    expect_physical(t2);
    EXPECT_GT(subsystem_parity_type(t2, a).commutator_norm, 1e-6);
  }
}

TEST(RandomDensity, RankAndDeterminism) {
  const ModeLayout l = ModeLayout::bipartite(2, 1);
  const FockOperator r1 = random_density(l, 3, DensityConstraint::any(), 1);
  EXPECT_TRUE(is_pure(r1));
  EXPECT_EQ(max_diff(random_density(l, 3).matrix(), random_density(l, 3).matrix()), 0.0);
  EXPECT_GT(max_diff(random_density(l, 3).matrix(), random_density(l, 4).matrix()), 0.0);
  EXPECT_THROW(random_density(l, 1, DensityConstraint::type_i(SubsystemSpec{5})), ValidationError);
}

TEST(RandomSeparable, VacuumProduct) {
  const ModeLayout l = ModeLayout::bipartite(1, 1);
  Matrix vac = Matrix::Zero(2, 2);
  vac(0, 0) = 1.0;
  const FockOperator rho = separable_from_terms(
      l, {0}, {ProductTerm{1.0, FockOperator(ModeLayout({"A"}), vac), FockOperator(ModeLayout({"B"}), vac)}});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  EXPECT_EQ(max_diff(rho.matrix(), expected), 0.0);
}

TEST(RandomSeparable, TwoModeSamplesAreDiagonal) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const FockOperator rho = random_separable(ModeLayout::bipartite(1, 1), {0}, 1 + static_cast<int>(s % 5), s);
    expect_physical(rho);
    EXPECT_LE(max_off_diagonal(rho.matrix()), 1e-12);
    EXPECT_LE(std::abs(negativity(rho, {0})), 1e-10);
  }
}

TEST(Seeds, DerivedStreamsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
