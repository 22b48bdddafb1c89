#include "fneg/fock.hpp"

#include "fneg/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <sstream>

namespace fneg {

std::string to_string(Flavor flavor) {
  return flavor == Flavor::fermionic ? "fermionic" : "bosonic";
}

std::string to_string(Sector sector) { return sector == Sector::even ? "even" : "odd"; }

// ---------------------------------------------------------------- SubsystemSpec

SubsystemSpec::SubsystemSpec(std::initializer_list<int> modes)
    : SubsystemSpec(std::vector<int>(modes)) {}

SubsystemSpec::SubsystemSpec(std::vector<int> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw ValidationError("subsystem spec is empty");
  std::set<int> seen;
  for (int m : modes_) {
    if (m < 0) throw ValidationError("negative mode index " + std::to_string(m));
    if (!seen.insert(m).second)
      throw ValidationError("duplicate mode index " + std::to_string(m));
  }
}

bool SubsystemSpec::contains(int mode) const {
  return std::find(modes_.begin(), modes_.end(), mode) != modes_.end();
}

BasisIndex SubsystemSpec::mask() const {
  BasisIndex m = 0;
  for (int j : modes_) m |= BasisIndex{1} << j;
  return m;
}

bool SubsystemSpec::is_leading_block() const {
  return mask() == (BasisIndex{1} << modes_.size()) - 1;
}

void SubsystemSpec::validate(const ModeLayout& layout) const {
  for (int m : modes_) {
    if (m >= layout.num_modes())
      throw ValidationError("mode index " + std::to_string(m) + " outside layout of " +
                            std::to_string(layout.num_modes()) + " modes");
  }
}

// ---------------------------------------------------------------- ModeLayout

ModeLayout::ModeLayout(std::vector<std::string> labels, int max_modes)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("layout needs at least one mode");
  if (static_cast<int>(labels_.size()) > max_modes)
    throw ValidationError("layout has " + std::to_string(labels_.size()) +
                          " modes, maximum is " + std::to_string(max_modes));
  std::set<std::string> closed;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (labels_[j].empty()) throw ValidationError("empty mode label");
    if (j > 0 && labels_[j] != labels_[j - 1]) closed.insert(labels_[j - 1]);
    if (closed.count(labels_[j]))
      throw ValidationError("modes labelled '" + labels_[j] + "' are not contiguous");
  }
}

ModeLayout ModeLayout::bipartite(int m_a, int m_b) {
  if (m_a < 1 || m_b < 1) throw ValidationError("bipartite layout needs m_A, m_B >= 1");
  std::vector<std::string> labels(static_cast<std::size_t>(m_a), "A");
  labels.insert(labels.end(), static_cast<std::size_t>(m_b), "B");
  return ModeLayout(std::move(labels));
}

ModeLayout ModeLayout::tripartite(int m_a, int m_b, int m_c) {
  if (m_a < 1 || m_b < 1 || m_c < 1)
    throw ValidationError("tripartite layout needs every party non-empty");
  std::vector<std::string> labels(static_cast<std::size_t>(m_a), "A");
  labels.insert(labels.end(), static_cast<std::size_t>(m_b), "B");
  labels.insert(labels.end(), static_cast<std::size_t>(m_c), "C");
  return ModeLayout(std::move(labels));
}

ModeLayout ModeLayout::single_party(int num_modes, const std::string& label) {
  if (num_modes < 1) throw ValidationError("layout needs at least one mode");
  return ModeLayout(std::vector<std::string>(static_cast<std::size_t>(num_modes), label));
}

std::vector<std::string> ModeLayout::parties() const {
  std::vector<std::string> out;
  for (const auto& l : labels_)
    if (out.empty() || out.back() != l) out.push_back(l);
  return out;
}

SubsystemSpec ModeLayout::modes_of(std::string_view label) const {
  std::vector<int> modes;
  for (int j = 0; j < num_modes(); ++j)
    if (labels_[static_cast<std::size_t>(j)] == label) modes.push_back(j);
  if (modes.empty()) throw ValidationError("no modes labelled '" + std::string(label) + "'");
  return SubsystemSpec(std::move(modes));
}

SubsystemSpec ModeLayout::all_modes() const {
  std::vector<int> modes(labels_.size());
  for (std::size_t j = 0; j < modes.size(); ++j) modes[j] = static_cast<int>(j);
  return SubsystemSpec(std::move(modes));
}

SubsystemSpec ModeLayout::complement(const SubsystemSpec& spec) const {
  spec.validate(*this);
  std::vector<int> modes;
  for (int j = 0; j < num_modes(); ++j)
    if (!spec.contains(j)) modes.push_back(j);
  if (modes.empty()) throw ValidationError("subsystem covers every mode; complement is empty");
  return SubsystemSpec(std::move(modes));
}

ModeLayout ModeLayout::restricted(const SubsystemSpec& spec) const {
  spec.validate(*this);
  std::vector<int> modes = spec.modes();
  std::sort(modes.begin(), modes.end());
  std::vector<std::string> labels;
  for (int m : modes) labels.push_back(labels_[static_cast<std::size_t>(m)]);
  return ModeLayout(std::move(labels));
}

// ---------------------------------------------------------------- FockOperator

struct FockOperator::Cache {
  std::once_flag basic_once;
  bool hermitian = false;
  bool parity_even = false;
  bool unit_trace = false;
  std::once_flag spectrum_once;
  double min_eigenvalue = 0.0;
};

FockOperator::FockOperator(ModeLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), cache_(std::make_shared<Cache>()) {
  const auto dim = static_cast<Eigen::Index>(layout_.dimension());
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    std::ostringstream msg;
    msg << "matrix is " << matrix_.rows() << "x" << matrix_.cols() << ", layout needs " << dim
        << "x" << dim;
    throw ValidationError(msg.str());
  }
}

FockOperator FockOperator::identity(const ModeLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  return FockOperator(layout, Matrix::Identity(d, d));
}

FockOperator FockOperator::zero(const ModeLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.dimension());
  return FockOperator(layout, Matrix::Zero(d, d));
}

FockOperator FockOperator::from_pure(const ModeLayout& layout, const Vector& psi) {
  if (psi.size() != static_cast<Eigen::Index>(layout.dimension()))
    throw ValidationError("state vector length does not match layout dimension");
  return FockOperator(layout, psi * psi.adjoint());
}

const FockOperator::Cache& FockOperator::cache() const {
  Cache& c = *cache_;
  std::call_once(c.basic_once, [&] {
    c.hermitian = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= kFlagTolerance;
    c.parity_even = parity_commutator_norm(matrix_, (BasisIndex{1} << num_modes()) - 1) <=
                    kFlagTolerance;
    c.unit_trace = std::abs(matrix_.trace() - Complex(1.0)) <= kFlagTolerance;
  });
  return c;
}

bool FockOperator::is_hermitian() const { return cache().hermitian; }
bool FockOperator::is_parity_even() const { return cache().parity_even; }
bool FockOperator::has_unit_trace() const { return cache().unit_trace; }

double FockOperator::min_eigenvalue() const {
  Cache& c = *cache_;
  std::call_once(c.spectrum_once, [&] {
    const Matrix herm = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = solver.eigenvalues().minCoeff();
  });
  return c.min_eigenvalue;
}

bool FockOperator::is_density_matrix() const {
  return is_hermitian() && has_unit_trace() && is_parity_even() &&
         min_eigenvalue() >= -kFlagTolerance;
}

FockOperator FockOperator::adjoint() const { return FockOperator(layout_, matrix_.adjoint()); }

namespace {
void require_same_layout(const ModeLayout& a, const ModeLayout& b) {
  if (!(a == b)) throw ValidationError("operators live on different layouts");
}
}  // namespace

FockOperator FockOperator::operator+(const FockOperator& other) const {
  require_same_layout(layout_, other.layout_);
  return FockOperator(layout_, matrix_ + other.matrix_);
}

FockOperator FockOperator::operator-(const FockOperator& other) const {
  require_same_layout(layout_, other.layout_);
  return FockOperator(layout_, matrix_ - other.matrix_);
}

FockOperator FockOperator::operator*(const FockOperator& other) const {
  require_same_layout(layout_, other.layout_);
  return FockOperator(layout_, matrix_ * other.matrix_);
}

FockOperator FockOperator::operator*(Complex scale) const {
  return FockOperator(layout_, matrix_ * scale);
}

void require_parity_even(const FockOperator& op, std::string_view context) {
  if (!op.is_parity_even())
    throw ValidationError(std::string(context) + ": operator is not parity-even");
}

void require_density_matrix(const FockOperator& op, bool require_even, std::string_view context) {
  const std::string ctx(context);
  if (!op.is_hermitian()) throw ValidationError(ctx + ": matrix is not Hermitian");
  if (!op.has_unit_trace()) throw ValidationError(ctx + ": trace is not 1");
  if (op.min_eigenvalue() < -kFlagTolerance)
    throw ValidationError(ctx + ": matrix has a negative eigenvalue");
  if (require_even) require_parity_even(op, context);
}

double parity_commutator_norm(const Matrix& m, BasisIndex parity_mask) {
  // (-1)^F M (-1)^F - M is -2 M on entries whose parities differ.
  double worst = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const int pc = std::popcount(static_cast<BasisIndex>(c) & parity_mask) & 1;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const int pr = std::popcount(static_cast<BasisIndex>(r) & parity_mask) & 1;
      if (pr != pc) worst = std::max(worst, 2.0 * std::abs(m(r, c)));
    }
  }
  return worst;
}

// ---------------------------------------------------------------- operators

namespace {

int jw_sign(BasisIndex state, int mode) {
  const BasisIndex below = (BasisIndex{1} << mode) - 1;
  return (std::popcount(state & below) & 1) ? -1 : 1;
}

void check_mode(const ModeLayout& layout, int mode) {
  if (mode < 0 || mode >= layout.num_modes())
    throw ValidationError("mode index " + std::to_string(mode) + " out of range [0, " +
                          std::to_string(layout.num_modes()) + ")");
}

}  // namespace

FockOperator creation_op(const ModeLayout& layout, int mode) {
  check_mode(layout, mode);
  const auto dim = layout.dimension();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const BasisIndex bit = BasisIndex{1} << mode;
  for (BasisIndex n = 0; n < dim; ++n) {
    if (n & bit) continue;
    m(static_cast<Eigen::Index>(n | bit), static_cast<Eigen::Index>(n)) = jw_sign(n, mode);
  }
  return FockOperator(layout, std::move(m));
}

FockOperator annihilation_op(const ModeLayout& layout, int mode) {
  return creation_op(layout, mode).adjoint();
}

FockOperator majorana_op(const ModeLayout& layout, int k) {
  if (k < 0 || k >= 2 * layout.num_modes())
    throw ValidationError("Majorana index " + std::to_string(k) + " out of range [0, " +
                          std::to_string(2 * layout.num_modes()) + ")");
  return majorana_monomial(layout, std::uint64_t{1} << k);
}

FockOperator parity_op(const ModeLayout& layout, const SubsystemSpec& spec) {
  spec.validate(layout);
  const auto dim = layout.dimension();
  const BasisIndex mask = spec.mask();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (BasisIndex n = 0; n < dim; ++n)
    m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) =
        (std::popcount(n & mask) & 1) ? -1.0 : 1.0;
  return FockOperator(layout, std::move(m));
}

FockOperator number_op(const ModeLayout& layout, int mode) {
  check_mode(layout, mode);
  const auto dim = layout.dimension();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (BasisIndex n = 0; n < dim; ++n)
    if ((n >> mode) & 1) m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = 1.0;
  return FockOperator(layout, std::move(m));
}

BasisImage apply_majorana_monomial(std::uint64_t monomial, BasisIndex state, int num_modes) {
  Complex amp(1.0, 0.0);
  for (int p = 2 * num_modes - 1; p >= 0; --p) {
    if (!((monomial >> p) & 1)) continue;
    const int mode = p / 2;
    const BasisIndex bit = BasisIndex{1} << mode;
    Complex factor(jw_sign(state, mode), 0.0);
    if (p & 1) factor *= (state & bit) ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
    amp *= factor;
    state ^= bit;
  }
  return {state, amp};
}

FockOperator majorana_monomial(const ModeLayout& layout, std::uint64_t monomial) {
  const int n_modes = layout.num_modes();
  if (n_modes < 32 && (monomial >> (2 * n_modes)) != 0)
    throw ValidationError("Majorana monomial references modes outside the layout");
  const auto dim = layout.dimension();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (BasisIndex n = 0; n < dim; ++n) {
    const BasisImage img = apply_majorana_monomial(monomial, n, n_modes);
    m(static_cast<Eigen::Index>(img.state), static_cast<Eigen::Index>(n)) = img.amplitude;
  }
  return FockOperator(layout, std::move(m));
}

FockOperator permute_modes(const FockOperator& op, std::span<const int> new_order) {
  const int n = op.num_modes();
  if (static_cast<int>(new_order.size()) != n)
    throw ValidationError("permutation length does not match number of modes");
  std::vector<int> sorted(new_order.begin(), new_order.end());
  std::sort(sorted.begin(), sorted.end());
  for (int j = 0; j < n; ++j)
    if (sorted[static_cast<std::size_t>(j)] != j)
      throw ValidationError("mode order is not a permutation");
  std::vector<std::string> labels;
  for (int old : new_order) labels.push_back(op.layout().label(old));
  return FockOperator(ModeLayout(std::move(labels)), kernels::permute_modes(op.matrix(), new_order));
}

namespace {

Matrix kron(const Matrix& high, const Matrix& low) {
  Matrix out(high.rows() * low.rows(), high.cols() * low.cols());
  for (Eigen::Index i = 0; i < high.rows(); ++i)
    for (Eigen::Index j = 0; j < high.cols(); ++j)
      out.block(i * low.rows(), j * low.cols(), low.rows(), low.cols()) = high(i, j) * low;
  return out;
}

}  // namespace

FockOperator graded_tensor(const FockOperator& lhs, const FockOperator& rhs) {
  require_parity_even(lhs, "graded_tensor lhs");
  require_parity_even(rhs, "graded_tensor rhs");
  const int n1 = lhs.num_modes();
  const int n2 = rhs.num_modes();

  // Even operators need no Jordan-Wigner string: lhs sits on the low bits.
  const Matrix raw = kron(rhs.matrix(), lhs.matrix());

  std::vector<std::string> joint;
  for (const auto& l : lhs.layout().labels()) joint.push_back(l);
  for (const auto& l : rhs.layout().labels()) joint.push_back(l);
  std::vector<std::string> order;
  for (const auto& l : joint)
    if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);

  std::vector<int> new_order;
  std::vector<std::string> labels;
  for (const auto& party : order) {
    for (int j = 0; j < n1 + n2; ++j) {
      if (joint[static_cast<std::size_t>(j)] == party) {
        new_order.push_back(j);
        labels.push_back(party);
      }
    }
  }
  return FockOperator(ModeLayout(std::move(labels)), kernels::permute_modes(raw, new_order));
}

FockOperator embed_local(const FockOperator& local_op, const ModeLayout& layout,
                         const SubsystemSpec& spec) {
  spec.validate(layout);
  require_parity_even(local_op, "embed_local");
  if (local_op.num_modes() != static_cast<int>(spec.size()))
    throw ValidationError("local operator size does not match subsystem");
  const int n = layout.num_modes();
  std::vector<int> inner = spec.modes();
  std::sort(inner.begin(), inner.end());
  std::vector<int> rest;
  for (int j = 0; j < n; ++j)
    if (!spec.contains(j)) rest.push_back(j);

  const auto rest_dim = static_cast<Eigen::Index>(BasisIndex{1} << rest.size());
  const Matrix raw = kron(Matrix::Identity(rest_dim, rest_dim), local_op.matrix());

  // raw has the spec modes first; move every mode back to its layout slot.
  std::vector<int> position(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < inner.size(); ++k)
    position[static_cast<std::size_t>(inner[k])] = static_cast<int>(k);
  for (std::size_t k = 0; k < rest.size(); ++k)
    position[static_cast<std::size_t>(rest[k])] = static_cast<int>(inner.size() + k);
  return FockOperator(layout, kernels::permute_modes(raw, position));
}

}  // namespace fneg
