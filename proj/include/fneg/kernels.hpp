#pragma once

#include "fneg/types.hpp"

#include <span>

// Raw-matrix kernels. The functions in fneg::kernels are OpenMP-parallel over
// output rows; fneg::kernels::reference holds straightforward serial versions
// that the tests and the benchmark compare against.
namespace fneg::kernels {

/// Fermionic partial transpose over the leading m_a modes by the occupation
/// rule followed by the U_A conjugation.
Matrix fermionic_pt_leading(const Matrix& rho, int num_modes, int m_a);

/// Fermionic partial transpose over any mode mask by Majorana expansion.
Matrix fermionic_pt_majorana(const Matrix& rho, int num_modes, BasisIndex mode_mask);

/// Swaps ket/bra occupations of the masked modes, no phase.
Matrix bosonic_pt(const Matrix& rho, BasisIndex mode_mask);

/// New mode k is old mode new_order[k]; basis states pick up the sign of the
/// reordering of their occupied creation operators.
Matrix permute_modes(const Matrix& op, std::span<const int> new_order);

/// Traces out every mode at position >= keep_modes.
Matrix partial_trace_tail(const Matrix& op, int keep_modes, int num_modes);

namespace reference {

Matrix fermionic_pt_leading(const Matrix& rho, int num_modes, int m_a);
Matrix fermionic_pt_majorana(const Matrix& rho, int num_modes, BasisIndex mode_mask);
Matrix bosonic_pt(const Matrix& rho, BasisIndex mode_mask);
Matrix permute_modes(const Matrix& op, std::span<const int> new_order);
Matrix partial_trace_tail(const Matrix& op, int keep_modes, int num_modes);

}  // namespace reference

/// (-i)^k (-1)^{(tau_a+tau_bar_a)(tau_b+tau_bar_b)} with k = (tau_a+tau_bar_a) mod 2.
Complex occupation_phase(int tau_a, int tau_bar_a, int tau_b, int tau_bar_b);

/// Sign picked up by |n> when modes are reordered by new_order.
int reorder_sign(BasisIndex state, std::span<const int> new_order);
/// Maps an old basis index to the new one under new_order.
BasisIndex reorder_index(BasisIndex state, std::span<const int> new_order);

}  // namespace fneg::kernels
