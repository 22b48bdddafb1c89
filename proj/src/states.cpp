#include "fneg/states.hpp"

#include "fneg/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace fneg {

namespace {

constexpr double kNormTolerance = 1e-10;

int parity_of(BasisIndex n, BasisIndex mask) { return std::popcount(n & mask) & 1; }

Vector fix_phase(Vector psi) {
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (std::abs(psi(i)) > 1e-14) {
      const double mag = std::abs(psi(i));
      psi *= std::conj(psi(i)) / mag;
      psi(i) = mag;
      break;
    }
  }
  return psi;
}

Vector basis_vector(std::size_t dim, std::initializer_list<std::pair<BasisIndex, Complex>> amps) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& [idx, a] : amps) v(static_cast<Eigen::Index>(idx)) = a;
  return v;
}

void check_probability(double p, std::string_view name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError(std::string(name) + ": p must lie in [0, 1]");
}

Matrix kron(const Matrix& high, const Matrix& low) {
  Matrix out(high.rows() * low.rows(), high.cols() * low.cols());
  for (Eigen::Index i = 0; i < high.rows(); ++i)
    for (Eigen::Index j = 0; j < high.cols(); ++j)
      out.block(i * low.rows(), j * low.cols(), low.rows(), low.cols()) = high(i, j) * low;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- PureCoeffs

PureCoeffs::PureCoeffs(std::vector<Complex> l, Sector sector)
    : lambdas(std::move(l)), parity_sector(sector) {
  if (lambdas.size() != 2 && lambdas.size() != 4)
    throw ValidationError("pure coefficients need 2 (two modes) or 4 (three modes) entries");
  double norm = 0.0;
  for (const auto& x : lambdas) norm += std::norm(x);
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw ValidationError("pure coefficients are not normalised (sum |lambda|^2 = " +
                          std::to_string(norm) + ")");
}

BasisIndex pure_basis_index(int num_modes, Sector sector, int k) {
  static constexpr BasisIndex two_even[] = {0, 3};
  static constexpr BasisIndex two_odd[] = {1, 2};
  static constexpr BasisIndex three_even[] = {0, 3, 6, 5};
  static constexpr BasisIndex three_odd[] = {4, 7, 2, 1};
  const bool even = sector == Sector::even;
  if (num_modes == 2 && k >= 0 && k < 2) return even ? two_even[k] : two_odd[k];
  if (num_modes == 3 && k >= 0 && k < 4) return even ? three_even[k] : three_odd[k];
  throw ValidationError("no pure-state coefficient " + std::to_string(k) + " for " +
                        std::to_string(num_modes) + " modes");
}

Vector PureCoeffs::state_vector() const {
  const int n = num_modes();
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    v(static_cast<Eigen::Index>(pure_basis_index(n, parity_sector, static_cast<int>(k)))) =
        lambdas[k];
  return v;
}

FockOperator PureCoeffs::density() const {
  const ModeLayout layout =
      num_modes() == 2 ? ModeLayout::bipartite(1, 1) : ModeLayout::tripartite();
  return FockOperator::from_pure(layout, state_vector());
}

// ---------------------------------------------------------------- seeds

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 of the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- canonical

FockOperator singlet() {
  const double s = 1.0 / std::sqrt(2.0);
  return FockOperator::from_pure(ModeLayout::bipartite(1, 1), basis_vector(4, {{1, s}, {2, -s}}));
}

FockOperator werner(double p) {
  check_probability(p, "werner");
  const ModeLayout layout = ModeLayout::bipartite(1, 1);
  return FockOperator(layout, (1.0 - p) / 4.0 * Matrix::Identity(4, 4) + p * singlet().matrix());
}

FockOperator majorana_dimer() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.25;
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = 0.25;
  return FockOperator(ModeLayout::bipartite(1, 1), m);
}

PureCoeffs ghz_coeffs() { return PureCoeffs({0.5, 0.5, 0.5, 0.5}, Sector::odd); }

PureCoeffs w_coeffs() {
  const double s = 1.0 / std::sqrt(3.0);
  return PureCoeffs({s, 0.0, s, s}, Sector::odd);
}

Vector ghz_vector() { return ghz_coeffs().state_vector(); }
Vector w_vector() { return w_coeffs().state_vector(); }

FockOperator w_state() { return w_coeffs().density(); }
FockOperator ghz_state() { return ghz_coeffs().density(); }

FockOperator majorana_triple() {
  // Ground space of H = i(a2 a1 + a3 a2 + a1 a3), a_j = f_j + f_j^dag; the
  // other Majorana of each mode is unpaired, so the ground space is 4-fold.
  const ModeLayout layout = ModeLayout::tripartite();
  const Matrix a1 = majorana_op(layout, 0).matrix();
  const Matrix a2 = majorana_op(layout, 2).matrix();
  const Matrix a3 = majorana_op(layout, 4).matrix();
  const Complex i(0.0, 1.0);
  const Matrix h = i * (a2 * a1 + a3 * a2 + a1 * a3);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  const double ground = solver.eigenvalues()(0);
  Matrix rho = Matrix::Zero(8, 8);
  int count = 0;
  for (Eigen::Index k = 0; k < 8; ++k) {
    if (std::abs(solver.eigenvalues()(k) - ground) < 1e-8) {
      rho += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
      ++count;
    }
  }
  return FockOperator(layout, rho / static_cast<double>(count));
}

Vector psi_p_vector(double p) {
  check_probability(p, "psi_p");
  const Vector v = std::sqrt(p) * ghz_vector() - std::sqrt(1.0 - p) * w_vector();
  return v / v.norm();
}

FockOperator psi_p(double p) {
  return FockOperator::from_pure(ModeLayout::tripartite(), psi_p_vector(p));
}

FockOperator canonical_state(std::string_view name, const StateParams& params) {
  auto need_p = [&]() {
    if (!params.p) throw ValidationError(std::string(name) + " needs parameter p");
    return *params.p;
  };
  auto need_coeffs = [&](std::size_t len) -> const PureCoeffs& {
    if (!params.coeffs || params.coeffs->lambdas.size() != len)
      throw ValidationError(std::string(name) + " needs " + std::to_string(len) +
                            " coefficients");
    return *params.coeffs;
  };
  if (name == "singlet") return singlet();
  if (name == "werner") return werner(need_p());
  if (name == "majorana_dimer") return majorana_dimer();
  if (name == "w") return w_state();
  if (name == "ghz") return ghz_state();
  if (name == "majorana_triple") return majorana_triple();
  if (name == "psi_p") return psi_p(need_p());
  if (name == "two_mode_pure") return need_coeffs(2).density();
  if (name == "three_mode_pure") return need_coeffs(4).density();
  throw ValidationError("unknown state '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- random

Vector random_pure_vector(const ModeLayout& layout, Sector sector, std::uint64_t seed) {
  Rng rng(seed);
  const auto dim = layout.dimension();
  const BasisIndex all = dim - 1;
  const int want = sector == Sector::even ? 0 : 1;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (BasisIndex n = 0; n < dim; ++n)
    if (parity_of(n, all) == want) v(static_cast<Eigen::Index>(n)) = rng.complex_normal();
  return fix_phase(v / v.norm());
}

FockOperator random_pure(const ModeLayout& layout, Sector sector, std::uint64_t seed) {
  return FockOperator::from_pure(layout, random_pure_vector(layout, sector, seed));
}

namespace {

Matrix sample_density(std::size_t dim, BasisIndex a_mask, bool block_a, int rank, Rng& rng) {
  const BasisIndex all = dim - 1;
  const auto d = static_cast<Eigen::Index>(dim);
  const Eigen::Index cols = rank > 0 ? std::min<Eigen::Index>(rank, d) : d;
  Matrix g = Matrix::Zero(d, cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    // Each column lives in the parity block of a label state.
    const BasisIndex label =
        cols == d ? static_cast<BasisIndex>(k)
                  : static_cast<BasisIndex>(rng.uniform_int(0, static_cast<int>(dim) - 1));
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto ur = static_cast<BasisIndex>(r);
      if (parity_of(ur, all) != parity_of(label, all)) continue;
      if (block_a && parity_of(ur, a_mask) != parity_of(label, a_mask)) continue;
      g(r, k) = rng.complex_normal();
    }
  }
  Matrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

constexpr int kResampleBudget = 100;
constexpr double kTypeIIThreshold = 1e-6;

}  // namespace

FockOperator random_density(const ModeLayout& layout, std::uint64_t seed,
                            const DensityConstraint& constraint, int rank) {
  Rng rng(seed);
  using Kind = DensityConstraint::Kind;
  BasisIndex a_mask = 0;
  if (constraint.kind != Kind::any_physical) {
    if (!constraint.spec) throw ValidationError("type_I/type_II constraint needs a subsystem");
    constraint.spec->validate(layout);
    a_mask = constraint.spec->mask();
  }
  if (constraint.kind == Kind::type_I)
    return FockOperator(layout, sample_density(layout.dimension(), a_mask, true, rank, rng));
  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    Matrix rho = sample_density(layout.dimension(), a_mask, false, rank, rng);
    if (constraint.kind == Kind::any_physical ||
        parity_commutator_norm(rho, a_mask) > kTypeIIThreshold)
      return FockOperator(layout, std::move(rho));
  }
  throw ValidationError("random_density: resampling budget exhausted for type_II constraint");
}

FockOperator separable_from_terms(const ModeLayout& layout, const SubsystemSpec& spec,
                                  const std::vector<ProductTerm>& terms) {
  if (terms.empty()) throw ValidationError("separable state needs at least one term");
  const SubsystemSpec rest = layout.complement(spec);
  std::vector<int> inner = spec.modes();
  std::sort(inner.begin(), inner.end());
  const int n = layout.num_modes();
  std::vector<int> position(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < inner.size(); ++k)
    position[static_cast<std::size_t>(inner[k])] = static_cast<int>(k);
  for (std::size_t k = 0; k < rest.size(); ++k)
    position[static_cast<std::size_t>(rest.modes()[k])] = static_cast<int>(inner.size() + k);

  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  Matrix total = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    if (t.on_spec.num_modes() != static_cast<int>(inner.size()) ||
        t.on_rest.num_modes() != static_cast<int>(rest.size()))
      throw ValidationError("product term factor sizes do not match the split");
    require_parity_even(t.on_spec, "separable term");
    require_parity_even(t.on_rest, "separable term");
    total += t.weight * kron(t.on_rest.matrix(), t.on_spec.matrix());
  }
  return FockOperator(layout, kernels::permute_modes(total, position));
}

FockOperator random_separable(const ModeLayout& layout, const SubsystemSpec& spec, int num_terms,
                              std::uint64_t seed) {
  if (num_terms < 1) throw ValidationError("random_separable needs num_terms >= 1");
  Rng rng(seed);
  const ModeLayout la = layout.restricted(spec);
  const ModeLayout lb = layout.restricted(layout.complement(spec));
  std::vector<double> w(static_cast<std::size_t>(num_terms));
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  std::vector<ProductTerm> terms;
  for (int i = 0; i < num_terms; ++i) {
    const int rank_a = rng.uniform_int(1, static_cast<int>(la.dimension()));
    const int rank_b = rng.uniform_int(1, static_cast<int>(lb.dimension()));
    const std::uint64_t sa = rng.engine()();
    const std::uint64_t sb = rng.engine()();
    terms.push_back({w[static_cast<std::size_t>(i)] / sum,
                     random_density(la, sa, DensityConstraint::any(), rank_a),
                     random_density(lb, sb, DensityConstraint::any(), rank_b)});
  }
  return separable_from_terms(layout, spec, terms);
}

}  // namespace fneg
