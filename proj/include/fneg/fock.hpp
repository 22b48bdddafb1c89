#pragma once

#include "fneg/types.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fneg {

class ModeLayout;

/// Ordered subset of mode indices (0-based).
class SubsystemSpec {
 public:
  SubsystemSpec(std::initializer_list<int> modes);
  explicit SubsystemSpec(std::vector<int> modes);

  const std::vector<int>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  bool contains(int mode) const;
  /// Bit mask with bit j set for every mode j in the subset.
  BasisIndex mask() const;
  /// True when the subset is exactly {0, 1, ..., size-1}, in any order.
  bool is_leading_block() const;
  /// Throws ValidationError if a mode is outside the layout.
  void validate(const ModeLayout& layout) const;

  bool operator==(const SubsystemSpec&) const = default;

 private:
  std::vector<int> modes_;
};

/// Number of modes plus one subsystem label per mode. Modes sharing a label
/// must be contiguous. Basis index is sum_j n_j 2^j.
class ModeLayout {
 public:
  explicit ModeLayout(std::vector<std::string> labels, int max_modes = kDefaultMaxModes);

  static ModeLayout bipartite(int m_a, int m_b);
  static ModeLayout tripartite(int m_a = 1, int m_b = 1, int m_c = 1);
  static ModeLayout single_party(int num_modes, const std::string& label = "A");

  int num_modes() const { return static_cast<int>(labels_.size()); }
  std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
  const std::string& label(int mode) const { return labels_.at(static_cast<std::size_t>(mode)); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Distinct labels in mode order.
  std::vector<std::string> parties() const;
  SubsystemSpec modes_of(std::string_view label) const;
  SubsystemSpec all_modes() const;
  /// Modes not in spec, ascending. Throws if spec covers every mode.
  SubsystemSpec complement(const SubsystemSpec& spec) const;
  /// Layout of the given modes taken in ascending order.
  ModeLayout restricted(const SubsystemSpec& spec) const;

  bool operator==(const ModeLayout&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// Dense operator on the Fock space of a layout. Immutable. The
/// hermitian/parity/trace flags and the spectrum check are computed on first
/// use and shared between copies.
class FockOperator {
 public:
  FockOperator(ModeLayout layout, Matrix matrix);

  static FockOperator identity(const ModeLayout& layout);
  static FockOperator zero(const ModeLayout& layout);
  /// |psi><psi| for a state vector of length 2^N.
  static FockOperator from_pure(const ModeLayout& layout, const Vector& psi);

  const ModeLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  int num_modes() const { return layout_.num_modes(); }
  std::size_t dimension() const { return layout_.dimension(); }

  bool is_hermitian() const;
  bool is_parity_even() const;
  bool has_unit_trace() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  bool is_density_matrix() const;
  double flag_tolerance() const { return kFlagTolerance; }

  Complex trace() const { return matrix_.trace(); }
  FockOperator adjoint() const;

  FockOperator operator+(const FockOperator& other) const;
  FockOperator operator-(const FockOperator& other) const;
  FockOperator operator*(const FockOperator& other) const;
  FockOperator operator*(Complex scale) const;

 private:
  struct Cache;
  const Cache& cache() const;

  ModeLayout layout_;
  Matrix matrix_;
  std::shared_ptr<Cache> cache_;
};

/// Throws ValidationError unless op is Hermitian, unit-trace, PSD and (when
/// require_parity_even) commutes with the global parity.
void require_density_matrix(const FockOperator& op, bool require_parity_even,
                            std::string_view context);
/// Throws ValidationError unless op commutes with the global parity.
void require_parity_even(const FockOperator& op, std::string_view context);

/// Max-norm of (-1)^F M (-1)^F - M with F counted over spec.
double parity_commutator_norm(const Matrix& m, BasisIndex parity_mask);

FockOperator creation_op(const ModeLayout& layout, int mode);
FockOperator annihilation_op(const ModeLayout& layout, int mode);
/// Majorana 2j = f_j^dag + f_j, Majorana 2j+1 = -i(f_j^dag - f_j).
FockOperator majorana_op(const ModeLayout& layout, int k);
FockOperator parity_op(const ModeLayout& layout, const SubsystemSpec& spec);
FockOperator number_op(const ModeLayout& layout, int mode);

/// Image of a basis state under a Majorana monomial.
struct BasisImage {
  BasisIndex state;
  Complex amplitude;
};

/// Applies c_{p1} c_{p2} ... c_{pk} (ascending p, bit p of monomial set) to |state>.
BasisImage apply_majorana_monomial(std::uint64_t monomial, BasisIndex state, int num_modes);
FockOperator majorana_monomial(const ModeLayout& layout, std::uint64_t monomial);

/// Reorders modes: new mode k is old mode new_order[k]. Labels travel with
/// their modes, and Jordan-Wigner signs are applied to the basis states.
FockOperator permute_modes(const FockOperator& op, std::span<const int> new_order);

/// Graded tensor product of two parity-even operators. Modes are grouped by
/// label (labels ordered by first appearance, lhs before rhs); within a group
/// lhs modes precede rhs modes.
FockOperator graded_tensor(const FockOperator& lhs, const FockOperator& rhs);

/// Embeds a parity-even operator on layout.restricted(spec) into the full
/// layout as local_op (x) identity.
FockOperator embed_local(const FockOperator& local_op, const ModeLayout& layout,
                         const SubsystemSpec& spec);

}  // namespace fneg
