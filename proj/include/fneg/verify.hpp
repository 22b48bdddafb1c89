#pragma once

#include "fneg/fock.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fneg {

struct TrialDiagnostic {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string fingerprint;
  /// Identity family or inequality that produced the worst violation.
  std::string family;
  double lhs = 0.0;
  double rhs = 0.0;
  double violation = 0.0;
};

struct CheckReport {
  std::string check_name;
  int trials = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  /// pass <=> max_violation <= tolerance
  bool pass = true;
  int violations = 0;
  std::map<std::string, double> family_max;
  /// Check-specific summary numbers.
  std::map<std::string, double> stats;
  std::vector<TrialDiagnostic> diagnostics;
  /// JSON state dumps of counterexample candidates.
  std::vector<std::string> dumps;
};

/// FNV-1a hash of the matrix entries, hex.
std::string fingerprint(const Matrix& m);
/// State in the CLI state-file JSON format.
std::string dump_state(const FockOperator& rho);

/// Random Hermitian parity-even matrix on a sub-layout.
Matrix random_even_hermitian(int num_modes, std::uint64_t seed);
/// exp(iH) for a random parity-even Hermitian H.
Matrix random_even_unitary(int num_modes, std::uint64_t seed);

/// Partial-transpose product rules for local factors, consistency checks 1-4
/// and the involution rules.
/// Trials cycle through `modes` (total modes, each >= 2).
CheckReport check_identity_suite(std::uint64_t seed, int trials,
                                 const std::vector<int>& modes = {2, 3, 4},
                                 double tolerance = 1e-11);

/// Local-unitary invariance, ancilla append, projective measurement,
/// ancilla entangle-and-measure, additivity.
CheckReport check_locc_monotonicity(std::uint64_t seed, int trials,
                                    const std::vector<int>& modes = {2, 3},
                                    double tolerance = 1e-10);

struct PerturbationOptions {
  std::vector<double> epsilons = {1e-2, 5e-3, 2.5e-3};
  /// Modes in the complement of the single-mode A.
  int env_modes = 2;
  double ratio_low = 6.0;
  double ratio_high = 10.0;
  double required_fraction = 0.9;
  /// Instances whose smallest denominator w0 mu_j + w1 nu_k is below this are resampled.
  double min_denominator = 2e-2;
};

/// Residual of the second-order trace-norm expansion; the instance ratio is
/// residual(eps[n-2]) / residual(eps[n-1]). max_violation is the shortfall of
/// the in-window fraction below required_fraction (tolerance 0).
CheckReport check_perturbation_expansion(std::uint64_t seed, int trials,
                                         const PerturbationOptions& opts = {});

/// Second-order prediction 1 + 2 eps^2 sum |<psi_j|d|phi_k>|^2 / (w0 mu_j + w1 nu_k).
double perturbation_prediction(double w0, const Matrix& rho0, const Matrix& rho1,
                               const Matrix& delta, double eps);
/// State with w0 rho0 on A-empty, w1 rho1 on A-occupied and eps*delta coupling.
FockOperator perturbation_state(double w0, const Matrix& rho0, const Matrix& rho1,
                                const Matrix& delta, double eps);

/// Random type-II states (commutator > 1e-6) on bipartite layouts with the
/// given total mode counts; counterexample candidates have N < tolerance.
CheckReport conjecture_scan(std::uint64_t seed, int samples, const std::vector<int>& modes = {2, 3},
                            double tolerance = 1e-10);

/// Monitored N_XY^2 + N_XZ^2 <= N_X(YZ)^2 on random three-mode states; never fails.
CheckReport pi_inequality_scan(std::uint64_t seed, int samples, Flavor flavor = Flavor::fermionic);

}  // namespace fneg
