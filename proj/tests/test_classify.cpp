#include "oracles.hpp"

#include "fneg/classify.hpp"
#include "fneg/measures.hpp"
#include "fneg/ptranspose.hpp"
#include "fneg/states.hpp"

#include <gtest/gtest.h>

using namespace fneg;

namespace {

// 1/2 (f_0^dag |Psi+><Psi+| f_0 + |Psi-><Psi-|), |Psi+-> = (1 +- alpha f_1^dag f_2^dag)|0> / norm.
FockOperator bisep_example(double alpha) {
  const ModeLayout l = ModeLayout::tripartite();
  const Matrix pair = (creation_op(l, 1) * creation_op(l, 2)).matrix();
  Vector vac = Vector::Zero(8);
  vac(0) = 1.0;
  const double norm = std::sqrt(1 + alpha * alpha);
  const Vector plus = (vac + alpha * pair * vac) / norm;
  const Vector minus = (vac - alpha * pair * vac) / norm;
  const Vector moved = creation_op(l, 0).matrix() * plus;
  return FockOperator(l, 0.5 * (moved * moved.adjoint() + minus * minus.adjoint()));
}

}  // namespace

TEST(TwoMode, Examples) {
  EXPECT_EQ(two_mode_separable(FockOperator::identity(ModeLayout::bipartite(1, 1)) * Complex(0.25, 0)).kind,
            ClassKind::separable);
  EXPECT_EQ(two_mode_separable(majorana_dimer()).kind, ClassKind::inseparable);
  for (double p : {0.01, 0.2, 0.5, 1.0}) EXPECT_EQ(two_mode_separable(werner(p)).name(), "inseparable");
  EXPECT_EQ(two_mode_separable(werner(0.0)).name(), "separable");
  EXPECT_THROW(two_mode_separable(w_state()), ValidationError);
}

TEST(TwoMode, Witnesses) {
  const ClassLabel l = two_mode_separable(majorana_dimer());
  EXPECT_NEAR(l.witnesses.at("negativity"), (std::sqrt(2.0) - 1) / 2, 1e-12);
  EXPECT_NEAR(l.witnesses.at("off_diagonal"), 0.25, 1e-15);
  EXPECT_FALSE(l.marginal);
}

TEST(TwoMode, DisagreementOutsideBandThrows) {
  const FockOperator rho = werner(1e-3);
  ClassifyOptions opts;
  opts.structural_threshold = 1.0;
  EXPECT_THROW(two_mode_separable(rho, opts), InconsistencyError);
}

TEST(TwoMode, DisagreementInsideBandIsMarginal) {
  // N is about 2 c^2 here, below the zero threshold while c is not.
  Matrix m = Matrix::Identity(4, 4) / 4.0;
  m(1, 2) = m(2, 1) = 1e-5;
  const FockOperator rho(ModeLayout::bipartite(1, 1), m);
  const ClassLabel l = two_mode_separable(rho);
  EXPECT_EQ(l.kind, ClassKind::separable);
  EXPECT_TRUE(l.marginal);
  EXPECT_NEAR(l.witnesses.at("negativity"), 2e-10, 1e-12);
}

TEST(Pure3, TableOneRows) {
  const double h = 1 / std::sqrt(2.0);
  EXPECT_EQ(pure3_class(PureCoeffs({1, 0, 0, 0}, Sector::even)).name(), "A-B-C");
  EXPECT_EQ(pure3_class(PureCoeffs({h, 0, h, 0}, Sector::even)).name(), "A-BC");
  EXPECT_EQ(pure3_class(PureCoeffs({h, 0, 0, h}, Sector::even)).name(), "B-AC");
  EXPECT_EQ(pure3_class(PureCoeffs({h, h, 0, 0}, Sector::even)).name(), "C-AB");
  EXPECT_EQ(pure3_class(w_coeffs()).name(), "W");
  EXPECT_EQ(pure3_class(ghz_coeffs()).name(), "GHZ");
  EXPECT_EQ(pure3_class(ghz_state()).name(), "GHZ");
}

TEST(Pure3, RejectsMixedAndWrongSize) {
  EXPECT_THROW(pure3_class(majorana_triple()), ValidationError);
  EXPECT_THROW(pure3_class(PureCoeffs({1, 0}, Sector::even)), ValidationError);
}

TEST(Pure3, EveryRandomStateGetsOneLabel) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const FockOperator rho = random_pure(ModeLayout::tripartite(), s % 2 ? Sector::odd : Sector::even, s);
    EXPECT_NO_THROW({
      const ClassLabel l = pure3_class(rho);
      EXPECT_EQ(l.name(), "GHZ");
    });
  }
}

TEST(Mixed3, Examples) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ModeLayout l = ModeLayout::tripartite();
    const FockOperator sep = random_separable(l, {0}, 3, s);
    // random_separable across A | BC is biseparable at worst.
    const ClassLabel c = mixed3_classify(sep);
    EXPECT_TRUE(c.kind == ClassKind::biseparable || c.kind == ClassKind::fully_separable);
  }
  EXPECT_EQ(mixed3_classify(ghz_state()).kind, ClassKind::inseparable_mixed);
  EXPECT_EQ(mixed3_classify(ghz_state()).name(), "inseparable");
  const FockOperator id = FockOperator::identity(ModeLayout::tripartite()) * Complex(0.125, 0);
  EXPECT_EQ(mixed3_classify(id).kind, ClassKind::fully_separable);
}

TEST(Mixed3, BiseparableExample) {
  for (double alpha : {0.3, 1.0, 2.5}) {
    const FockOperator rho = bisep_example(alpha);
    const ClassLabel l = mixed3_classify(rho);
    EXPECT_EQ(l.name(), "biseparable(A)") << alpha;
    EXPECT_EQ(l.part, "A");
    const FockOperator bc = trace_out(rho, {0});
    EXPECT_LE(std::abs(negativity(bc, {0})), 1e-12);
  }
}

TEST(Mixed3, TwoZerosForceTheThird) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const FockOperator rho = random_density(ModeLayout::tripartite(), s);
    const TripartiteNegativities n = tripartite_negativities(rho, Flavor::fermionic, false);
    if (n.n_a_bc <= 1e-9 && n.n_b_ac <= 1e-9) {
      EXPECT_LE(n.n_c_ab, 1e-9);
    }
  }
}

TEST(ParityType, Examples) {
  Eigen::VectorXcd d(4);
  d << 0.1, 0.2, 0.3, 0.4;
  const FockOperator diag(ModeLayout::bipartite(1, 1), Matrix(d.asDiagonal()));
  const ParityTypeResult r = subsystem_parity_type(diag, {0});
  EXPECT_EQ(r.type, ParityType::type_I);
  EXPECT_EQ(r.commutator_norm, 0.0);
  EXPECT_EQ(subsystem_parity_type(majorana_dimer(), {0}).type, ParityType::type_II);
  EXPECT_EQ(to_string(ParityType::type_II), "type_II");
}

TEST(MaxOffDiagonal, IgnoresDiagonal) {
  Matrix m = Matrix::Identity(3, 3) * 5.0;
  m(0, 2) = Complex(0, -0.5);
  EXPECT_EQ(max_off_diagonal(m), 0.5);
}
