#pragma once

#include "fneg/fock.hpp"

#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace fneg {

/// Amplitudes of a two- or three-mode pure state in one parity sector.
///
/// Two modes, even: l0 + l1 f1+ f2+; odd: l0 f1+ + l1 f2+.
/// Three modes, even: l0 + l1 f1+f2+ + l2 f2+f3+ + l3 f1+f3+;
/// odd: l0 f3+ + l1 f1+f2+f3+ + l2 f2+ + l3 f1+.
struct PureCoeffs {
  std::vector<Complex> lambdas;
  Sector parity_sector = Sector::even;

  /// Throws ValidationError unless length is 2 or 4 and sum |l|^2 = 1.
  PureCoeffs(std::vector<Complex> lambdas, Sector sector);

  int num_modes() const { return lambdas.size() == 2 ? 2 : 3; }
  Vector state_vector() const;
  FockOperator density() const;
};

/// Basis index that carries lambda_k.
BasisIndex pure_basis_index(int num_modes, Sector sector, int k);

// Seeded randomness.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Canonical states.
FockOperator singlet();
FockOperator werner(double p);
FockOperator majorana_dimer();
FockOperator w_state();
FockOperator ghz_state();
FockOperator majorana_triple();
Vector ghz_vector();
Vector w_vector();
/// sqrt(p) GHZ - sqrt(1-p) W, normalised.
Vector psi_p_vector(double p);
FockOperator psi_p(double p);
PureCoeffs ghz_coeffs();
PureCoeffs w_coeffs();

struct StateParams {
  std::optional<double> p;
  std::optional<PureCoeffs> coeffs;
};

/// name in {singlet, werner, majorana_dimer, w, ghz, majorana_triple, psi_p,
/// two_mode_pure, three_mode_pure}.
FockOperator canonical_state(std::string_view name, const StateParams& params = {});

/// Haar-random unit vector supported on one global parity sector.
Vector random_pure_vector(const ModeLayout& layout, Sector sector, std::uint64_t seed);
FockOperator random_pure(const ModeLayout& layout, Sector sector, std::uint64_t seed);

struct DensityConstraint {
  enum class Kind { any_physical, type_I, type_II };
  Kind kind = Kind::any_physical;
  std::optional<SubsystemSpec> spec;

  static DensityConstraint any() { return {}; }
  static DensityConstraint type_i(SubsystemSpec spec) { return {Kind::type_I, std::move(spec)}; }
  static DensityConstraint type_ii(SubsystemSpec spec) { return {Kind::type_II, std::move(spec)}; }
};

/// rho = G G^dag / Tr, G complex Gaussian with `rank` columns (0 = full rank)
/// and entries restricted to the allowed parity blocks.
FockOperator random_density(const ModeLayout& layout, std::uint64_t seed,
                            const DensityConstraint& constraint = DensityConstraint::any(),
                            int rank = 0);

struct ProductTerm {
  double weight;
  FockOperator on_spec;
  FockOperator on_rest;
};

/// sum_i w_i rho_{spec,i} (x) rho_{rest,i} placed on the layout. Factors live
/// on layout.restricted(spec) and layout.restricted(complement).
FockOperator separable_from_terms(const ModeLayout& layout, const SubsystemSpec& spec,
                                  const std::vector<ProductTerm>& terms);

/// Random separable state across spec | rest with random-rank local factors.
FockOperator random_separable(const ModeLayout& layout, const SubsystemSpec& spec, int num_terms,
                              std::uint64_t seed);

}  // namespace fneg
