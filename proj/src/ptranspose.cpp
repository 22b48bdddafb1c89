#include "fneg/ptranspose.hpp"

#include "fneg/kernels.hpp"

#include <algorithm>
#include <bit>

namespace fneg {

PhaseRule PhaseRule::of_element(BasisIndex row, BasisIndex col, BasisIndex mask_a) {
  return {std::popcount(row & mask_a), std::popcount(col & mask_a), std::popcount(row & ~mask_a),
          std::popcount(col & ~mask_a)};
}

Complex PhaseRule::phase() const {
  return kernels::occupation_phase(tau_a, tau_bar_a, tau_b, tau_bar_b);
}

namespace {

// Spec modes first (in the given order), then the rest ascending.
std::vector<int> spec_first_order(const SubsystemSpec& spec, int num_modes) {
  std::vector<int> order = spec.modes();
  for (int j = 0; j < num_modes; ++j)
    if (!spec.contains(j)) order.push_back(j);
  return order;
}

std::vector<int> inverse_order(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inv[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  return inv;
}

}  // namespace

FockOperator fermionic_pt(const FockOperator& rho, const SubsystemSpec& spec) {
  spec.validate(rho.layout());
  require_parity_even(rho, "fermionic_pt");
  const int n = rho.num_modes();
  const int m_a = static_cast<int>(spec.size());
  if (spec.is_leading_block())
    return FockOperator(rho.layout(), kernels::fermionic_pt_leading(rho.matrix(), n, m_a));

  const std::vector<int> order = spec_first_order(spec, n);
  const Matrix moved = kernels::permute_modes(rho.matrix(), order);
  const Matrix pt = kernels::fermionic_pt_leading(moved, n, m_a);
  return FockOperator(rho.layout(), kernels::permute_modes(pt, inverse_order(order)));
}

FockOperator fermionic_pt_majorana(const FockOperator& rho, const SubsystemSpec& spec) {
  spec.validate(rho.layout());
  require_parity_even(rho, "fermionic_pt_majorana");
  return FockOperator(rho.layout(),
                      kernels::fermionic_pt_majorana(rho.matrix(), rho.num_modes(), spec.mask()));
}

FockOperator bosonic_pt(const FockOperator& rho, const SubsystemSpec& spec) {
  spec.validate(rho.layout());
  return FockOperator(rho.layout(), kernels::bosonic_pt(rho.matrix(), spec.mask()));
}

FockOperator partial_transpose(const FockOperator& rho, const SubsystemSpec& spec,
                               Flavor flavor) {
  return flavor == Flavor::fermionic ? fermionic_pt(rho, spec) : bosonic_pt(rho, spec);
}

FockOperator clifford_transpose(const FockOperator& op) {
  require_parity_even(op, "clifford_transpose");
  const int n = op.num_modes();
  std::uint64_t monomial = 0;
  for (int j = 0; j < n; ++j) monomial |= std::uint64_t{1} << (2 * j);
  const Matrix u = majorana_monomial(op.layout(), monomial).matrix();
  return FockOperator(op.layout(), u * op.matrix().transpose() * u.adjoint());
}

FockOperator partial_trace(const FockOperator& rho, const SubsystemSpec& keep) {
  keep.validate(rho.layout());
  std::vector<int> kept = keep.modes();
  std::sort(kept.begin(), kept.end());
  const SubsystemSpec sorted(kept);
  const int n = rho.num_modes();
  const ModeLayout reduced = rho.layout().restricted(sorted);
  if (static_cast<int>(kept.size()) == n) return FockOperator(reduced, rho.matrix());

  const std::vector<int> order = spec_first_order(sorted, n);
  const Matrix moved = kernels::permute_modes(rho.matrix(), order);
  return FockOperator(reduced,
                      kernels::partial_trace_tail(moved, static_cast<int>(kept.size()), n));
}

FockOperator trace_out(const FockOperator& rho, const SubsystemSpec& traced) {
  return partial_trace(rho, rho.layout().complement(traced));
}

ParityProjection parity_project(const FockOperator& rho, const SubsystemSpec& spec, Sector sector,
                                double tolerance) {
  spec.validate(rho.layout());
  const BasisIndex mask = spec.mask();
  const int want = sector == Sector::even ? 0 : 1;
  const auto dim = static_cast<Eigen::Index>(rho.dimension());
  Matrix projected = Matrix::Zero(dim, dim);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < dim; ++i)
    if ((std::popcount(static_cast<BasisIndex>(i) & mask) & 1) == want) keep.push_back(i);
  double weight = 0.0;
  for (auto r : keep) {
    weight += rho.matrix()(r, r).real();
    for (auto c : keep) projected(r, c) = rho.matrix()(r, c);
  }
  ParityProjection out;
  out.weight = weight;
  if (weight > tolerance) out.state = FockOperator(rho.layout(), projected / weight);
  return out;
}

}  // namespace fneg
