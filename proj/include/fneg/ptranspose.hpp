#pragma once

#include "fneg/fock.hpp"

#include <optional>

namespace fneg {

/// Occupation counts of one matrix element (ket/bra side, A/B part).
struct PhaseRule {
  int tau_a = 0;
  int tau_bar_a = 0;
  int tau_b = 0;
  int tau_bar_b = 0;

  static PhaseRule of_element(BasisIndex row, BasisIndex col, BasisIndex mask_a);
  /// Phase applied by the occupation rule.
  Complex phase() const;
};

/// rho^{T_A} via the occupation-basis rule plus the U_A conjugation. Equal to
/// fermionic_pt_majorana elementwise. Input must be parity-even.
FockOperator fermionic_pt(const FockOperator& rho, const SubsystemSpec& spec);

/// rho^{T_A} via the Majorana expansion: each monomial picks up i^{k1}, with k1
/// the number of its Majoranas on spec. Limited to 10 modes.
FockOperator fermionic_pt_majorana(const FockOperator& rho, const SubsystemSpec& spec);

/// Plain partial transposition of the occupation-basis matrix.
FockOperator bosonic_pt(const FockOperator& rho, const SubsystemSpec& spec);

FockOperator partial_transpose(const FockOperator& rho, const SubsystemSpec& spec,
                               Flavor flavor);

/// Full fermionic transpose (reversal of Majorana products). Parity-even input.
FockOperator clifford_transpose(const FockOperator& op);

/// Reduced operator on the kept modes (taken in ascending order).
FockOperator partial_trace(const FockOperator& rho, const SubsystemSpec& keep);
/// Reduced operator after tracing out the given modes.
FockOperator trace_out(const FockOperator& rho, const SubsystemSpec& traced);

struct ParityProjection {
  /// P rho P / weight; empty when the weight is below tolerance.
  std::optional<FockOperator> state;
  double weight = 0.0;
};

ParityProjection parity_project(const FockOperator& rho, const SubsystemSpec& spec,
                                Sector sector, double tolerance = kFlagTolerance);

}  // namespace fneg
