#pragma once

#include "fneg/fock.hpp"
#include "fneg/states.hpp"

#include <map>
#include <string>

namespace fneg {

enum class ClassKind {
  // pure three-mode
  a_b_c,
  a_bc,
  b_ac,
  c_ab,
  w,
  ghz,
  // two-mode
  separable,
  inseparable,
  // mixed three-mode
  fully_separable,
  biseparable,
  inseparable_mixed,
};

struct ClassLabel {
  ClassKind kind = ClassKind::a_b_c;
  /// Party that splits off, for biseparable.
  std::string part;
  /// Negativities (and J_ABC where relevant) the verdict was read from.
  std::map<std::string, double> witnesses;
  double threshold = 0.0;
  /// Some witness sat within a factor marginal_factor of the threshold, or
  /// two tests disagreed inside the declared band.
  bool marginal = false;

  std::string name() const;
};

struct ClassifyOptions {
  /// A negativity counts as positive above this.
  double zero_threshold = 1e-9;
  /// Two-mode structural test: off-diagonal max-norm above this is entangled.
  double structural_threshold = 1e-9;
  double marginal_factor = 10.0;
};

/// Two-mode verdict from the negativity, cross-checked against the
/// off-diagonal structure. Throws InconsistencyError if they disagree outside
/// the marginal band.
ClassLabel two_mode_separable(const FockOperator& rho, const ClassifyOptions& opts = {});

ClassLabel pure3_class(const PureCoeffs& psi, const ClassifyOptions& opts = {});
/// Pure three-mode density matrix; throws ValidationError if mixed.
ClassLabel pure3_class(const FockOperator& rho, const ClassifyOptions& opts = {});

/// Three-mode verdict from the one-vs-rest negativities.
ClassLabel mixed3_classify(const FockOperator& rho, const ClassifyOptions& opts = {});

enum class ParityType { type_I, type_II };

struct ParityTypeResult {
  ParityType type = ParityType::type_I;
  double commutator_norm = 0.0;
};

std::string to_string(ParityType type);

/// type_I iff ||[(-1)^{F_A}, rho]||_max <= threshold.
ParityTypeResult subsystem_parity_type(const FockOperator& rho, const SubsystemSpec& spec,
                                       double threshold = 1e-9);

/// Largest |rho(r,c)| with r != c.
double max_off_diagonal(const Matrix& m);

}  // namespace fneg
