#pragma once

// Independent reference computations used only by the tests.

#include "fneg/fock.hpp"
#include "fneg/states.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>

namespace fneg::testing {

/// Tr sqrt(A A^dag) from the Gram eigenvalues. Loses about half the digits on
/// zero singular values, so compare at ~1e-7 for rank-deficient input.
inline double gram_trace_norm(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a * a.adjoint(), Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    total += std::sqrt(std::max(0.0, solver.eigenvalues()(k)));
  return total;
}

/// Majorana product c_S in ascending index order, built from majorana_op.
inline Matrix monomial_matrix(const ModeLayout& layout, std::uint64_t mask) {
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  Matrix out = Matrix::Identity(d, d);
  for (int k = 0; k < 2 * layout.num_modes(); ++k)
    if (mask >> k & 1U) out = out * majorana_op(layout, k).matrix();
  return out;
}

/// X -> sum_S phase(S) x_S c_S with x_S = Tr(c_S^dag X) / D.
template <class Phase>
Matrix majorana_map(const FockOperator& x, Phase phase) {
  const ModeLayout& layout = x.layout();
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  Matrix out = Matrix::Zero(d, d);
  const std::uint64_t count = std::uint64_t{1} << (2 * layout.num_modes());
  for (std::uint64_t s = 0; s < count; ++s) {
    const Matrix c = monomial_matrix(layout, s);
    const Complex coeff = (c.adjoint() * x.matrix()).trace() / static_cast<double>(d);
    if (std::abs(coeff) < 1e-15) continue;
    out += phase(s) * coeff * c;
  }
  return out;
}

/// Mask over Majorana indices belonging to the given modes.
inline std::uint64_t majorana_mask(const SubsystemSpec& spec) {
  std::uint64_t m = 0;
  for (int j : spec.modes()) m |= std::uint64_t{3} << (2 * j);
  return m;
}

/// Random Hermitian parity-even operator, not normalised.
inline Matrix random_even_operator(int num_modes, std::uint64_t seed) {
  Rng rng(seed);
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << num_modes);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      if ((std::popcount(static_cast<std::uint64_t>(r ^ c)) & 1) == 0) m(r, c) = rng.complex_normal();
  return m;
}

inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace fneg::testing
