#pragma once

#include "fneg/fock.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace fneg {

/// Named scalar results plus the tolerance and transpose flavor used.
struct MeasureReport {
  std::map<std::string, double> entries;
  double tolerance = kFlagTolerance;
  Flavor flavor = Flavor::fermionic;

  /// Throws ValidationError for an unknown name.
  double at(const std::string& name) const;
};

/// Descending. Hermitian input goes through the eigensolver, anything else
/// through the Hermitian dilation.
std::vector<double> singular_values(const Matrix& m);
double trace_norm(const Matrix& m);
double trace_norm(const FockOperator& op);

/// Singular values of rho^{T_A}; the fermionic case diagonalises the
/// Hermitian rho^{T_A} (-1)^{F_A}.
std::vector<double> pt_singular_values(const FockOperator& rho, const SubsystemSpec& spec,
                                       Flavor flavor = Flavor::fermionic);

/// Entries "trace_norm", "negativity", "log_negativity".
MeasureReport negativity_report(const FockOperator& rho, const SubsystemSpec& spec,
                                Flavor flavor = Flavor::fermionic,
                                double tolerance = kFlagTolerance);
double negativity(const FockOperator& rho, const SubsystemSpec& spec,
                  Flavor flavor = Flavor::fermionic);
double log_negativity(const FockOperator& rho, const SubsystemSpec& spec,
                      Flavor flavor = Flavor::fermionic);

/// log Tr of the alternating product X X^dag X ... (n factors), X = rho^{T_A}.
/// Even n uses singular values; odd n multiplies out and takes log|Tr|.
double pt_moment(const FockOperator& rho, const SubsystemSpec& spec, int n,
                 Flavor flavor = Flavor::fermionic);

struct EntropyOrder {
  bool von_neumann = true;
  double alpha = 1.0;

  static EntropyOrder vn() { return {true, 1.0}; }
  /// Throws ValidationError for alpha <= 0 or alpha == 1.
  static EntropyOrder renyi(double alpha);
};

double entropy(const FockOperator& rho, EntropyOrder order = EntropyOrder::vn());
/// S(rho_A) + S(rho_B) - S(rho) with B the complement of spec.
double mutual_information(const FockOperator& rho, const SubsystemSpec& spec,
                          EntropyOrder order = EntropyOrder::vn());

struct JResult {
  double value = 0.0;
  double n_even = 0.0;
  double n_odd = 0.0;
  double weight_even = 0.0;
  double weight_odd = 0.0;
  /// A parity sector of `third` had zero weight; value is 0.
  bool degenerate = false;
};

/// J = N_{AB,e} N_{AB,o}: project `third` onto each parity, trace it out and
/// take the negativity of the remaining pair.
JResult j_abc(const FockOperator& rho, const SubsystemSpec& pair, const SubsystemSpec& third,
              Flavor flavor = Flavor::fermionic);
/// j_abc with pair = A u B, third = C of a three-party layout.
JResult j_abc(const FockOperator& rho, Flavor flavor = Flavor::fermionic);

/// a(i,j,k) stored at i + 2j + 4k, i the occupation of the first mode.
using Hypermatrix = std::array<Complex, 8>;

Complex cayley_hdet(const Hypermatrix& a);
Hypermatrix amplitudes_of(const Vector& psi);
/// Amplitudes of a pure three-mode density matrix (global phase arbitrary).
Hypermatrix amplitudes_of(const FockOperator& pure);
double three_tangle(const Hypermatrix& a);
/// Throws ValidationError unless rho is a pure three-mode state.
double three_tangle(const FockOperator& pure);

/// One-vs-rest and pairwise negativities of a three-party state.
struct TripartiteNegativities {
  double n_a_bc = 0.0;
  double n_b_ac = 0.0;
  double n_c_ab = 0.0;
  double n_ab = 0.0;
  double n_ac = 0.0;
  double n_bc = 0.0;

  double pi_a() const { return n_a_bc * n_a_bc - n_ab * n_ab - n_ac * n_ac; }
  double pi_b() const { return n_b_ac * n_b_ac - n_ab * n_ab - n_bc * n_bc; }
  double pi_c() const { return n_c_ab * n_c_ab - n_ac * n_ac - n_bc * n_bc; }
  double pi_abc() const { return (pi_a() + pi_b() + pi_c()) / 3.0; }
  /// Geometric mean of the one-vs-rest negativities, clamped at 0.
  double n_abc() const;
};

/// Requires a layout with exactly three parties.
TripartiteNegativities tripartite_negativities(const FockOperator& rho,
                                               Flavor flavor = Flavor::fermionic,
                                               bool with_pairs = true);
double n_abc(const FockOperator& rho, Flavor flavor = Flavor::fermionic);
double pi_abc(const FockOperator& rho, Flavor flavor = Flavor::fermionic);

/// N_ABC, pi_ABC, pi_A/B/C, J_ABC and (for pure states) tau_ABC.
MeasureReport tripartite_report(const FockOperator& rho, Flavor flavor = Flavor::fermionic,
                                double tolerance = kFlagTolerance);

/// True when Tr rho^2 is 1 within tolerance.
bool is_pure(const FockOperator& rho, double tolerance = kFlagTolerance);

}  // namespace fneg
