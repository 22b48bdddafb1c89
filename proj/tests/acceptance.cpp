// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include "cli_app.hpp"
#include "oracles.hpp"

#include "fneg/classify.hpp"
#include "fneg/measures.hpp"
#include "fneg/ptranspose.hpp"
#include "fneg/states.hpp"
#include "fneg/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fneg;

namespace {

constexpr double kClosedFormTol = 1e-9;
constexpr double kPureFormulaTol = 1e-10;
constexpr double kRuleAgreementTol = 1e-12;
constexpr double kIdentityTol = 1e-11;
constexpr double kLoccSlack = 1e-10;
constexpr double kZero = 1e-9;
constexpr double kStructuralThreshold = 1e-8;
constexpr double kNegativityFloor = 1e-10;
constexpr double kConjectureFloor = 1e-10;
constexpr double kSweepTol = 1e-9;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double log_neg(const FockOperator& rho, const SubsystemSpec& a, Flavor fl = Flavor::fermionic) {
  return log_negativity(rho, a, fl);
}

Outcome criterion1() {
  double worst = 0.0;
  std::string where;
  auto check = [&](const std::string& name, double got, double want) {
    const double d = std::abs(got - want);
    if (d > worst || !std::isfinite(d)) {
      worst = std::isfinite(d) ? d : INFINITY;
      where = name;
    }
  };
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    const FockOperator rho = werner(p);
    check("werner_f", log_neg(rho, {0}), std::log(0.5 * (1 + p) + 0.5 * std::sqrt(5 * p * p - 2 * p + 1)));
    check("werner_b", log_neg(rho, {0}, Flavor::bosonic),
          std::log(0.75 * (1 + p) + 0.25 * std::abs(1 - 3 * p)));
  }
  check("dimer_f", log_neg(majorana_dimer(), {0}), std::log(std::sqrt(2.0)));
  check("dimer_b", log_neg(majorana_dimer(), {0}, Flavor::bosonic), 0.0);
  const FockOperator w = w_state(), g = ghz_state(), t = majorana_triple();
  check("W_A(BC)", log_neg(w, {0}), std::log(1 + 2 * std::sqrt(2.0) / 3));
  check("W_AB", log_neg(trace_out(w, {2}), {0}), std::log((2 + std::sqrt(5.0)) / 3));
  check("GHZ_A(BC)", log_neg(g, {0}), std::log(2.0));
  check("GHZ_AB_f", log_neg(trace_out(g, {2}), {0}), std::log(std::sqrt(2.0)));
  check("GHZ_AB_b", log_neg(trace_out(g, {2}), {0}, Flavor::bosonic), 0.0);
  check("triple_A(BC)", log_neg(t, {0}), std::log(std::sqrt(5.0 / 3.0)));
  check("triple_AB", log_neg(trace_out(t, {2}), {0}), std::log(2 / std::sqrt(3.0)));
  check("pi_W", pi_abc(w), (std::sqrt(5.0) - 1) / 9);
  check("pi_GHZ_f", pi_abc(g), (4 * std::sqrt(2.0) - 5) / 4);
  check("pi_GHZ_b", pi_abc(g, Flavor::bosonic), 0.25);
  return {worst <= kClosedFormTol, fmt("max |delta| = %.3g", worst) + " at " + where};
}

Outcome criterion2() {
  double two = 0.0, three = 0.0, tangle = 0.0;
  const ModeLayout l2 = ModeLayout::bipartite(1, 1);
  const ModeLayout l3 = ModeLayout::tripartite();
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Sector sec = s % 2 ? Sector::odd : Sector::even;
    const Vector v2 = random_pure_vector(l2, sec, derive_seed(kSeed, s));
    const double want2 = std::abs(v2(pure_basis_index(2, sec, 0)) * v2(pure_basis_index(2, sec, 1)));
    two = std::max(two, std::abs(negativity(FockOperator::from_pure(l2, v2), {0}) - want2));

    const Vector v3 = random_pure_vector(l3, sec, derive_seed(kSeed + 1, s));
    double m[4];
    for (int k = 0; k < 4; ++k) m[k] = std::abs(v3(pure_basis_index(3, sec, k)));
    const double want3 = std::sqrt((m[0] * m[0] + m[2] * m[2]) * (m[1] * m[1] + m[3] * m[3]));
    three = std::max(three, std::abs(negativity(FockOperator::from_pure(l3, v3), {0}) - want3));
    tangle = std::max(tangle, std::abs(three_tangle(amplitudes_of(v3)) - 4 * m[0] * m[1] * m[2] * m[3]));
  }
  const double worst = std::max({two, three, tangle});
  return {worst <= kPureFormulaTol, fmt("two-mode %.3g, N_A(BC) %.3g, tau %.3g", two, three, tangle)};
}

Outcome criterion3() {
  double worst = 0.0;
  Rng rng(kSeed);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 3;
    const ModeLayout l = ModeLayout::single_party(n);
    const FockOperator x(l, fneg::testing::random_even_operator(n, derive_seed(kSeed, t)));
    std::vector<int> modes;
    while (modes.empty())
      for (int j = 0; j < n; ++j)
        if (rng.uniform() < 0.5) modes.push_back(j);
    const SubsystemSpec a(modes);
    worst = std::max(worst, fneg::testing::max_diff(fermionic_pt(x, a).matrix(),
                                                      fermionic_pt_majorana(x, a).matrix()));
  }
  return {worst <= kRuleAgreementTol, fmt("max elementwise difference %.3g over 1000 operators", worst)};
}

Outcome criterion4() {
  const CheckReport r3 = check_identity_suite(kSeed, 100, {3}, kIdentityTol);
  const CheckReport r4 = check_identity_suite(kSeed + 1, 50, {4}, kIdentityTol);
  const bool ok = r3.violations == 0 && r4.violations == 0 && r3.pass && r4.pass;
  return {ok, fmt("N=3 max %.3g, N=4 max %.3g, violations %g", r3.max_violation, r4.max_violation,
                  r3.violations + r4.violations)};
}

Outcome criterion5() {
  const CheckReport r = check_locc_monotonicity(kSeed, 200, {2, 3}, kLoccSlack);
  std::string worst_family;
  double worst = -1;
  for (const auto& [f, v] : r.family_max)
    if (v > worst) worst = v, worst_family = f;
  return {r.pass && r.violations == 0,
          fmt("max violation %.3g, violations %g", r.max_violation, r.violations) + " (" + worst_family + ")"};
}

Outcome criterion6() {
  const ModeLayout l = ModeLayout::bipartite(1, 1);
  int disagreements = 0, entangled = 0;
  Rng rng(kSeed);
  for (int t = 0; t < 10000; ++t) {
    FockOperator rho = FockOperator::zero(l);
    const std::uint64_t seed = derive_seed(kSeed, t);
    switch (t % 4) {
      case 0: {
        Eigen::VectorXcd d(4);
        for (int k = 0; k < 4; ++k) d(k) = rng.uniform();
        rho = FockOperator(l, Matrix(d.asDiagonal()) / d.sum());
        break;
      }
      case 1: rho = random_density(l, seed); break;
      case 2: rho = random_density(l, seed, DensityConstraint::any(), 1 + t % 3); break;
      default: rho = random_separable(l, {0}, 1 + t % 4, seed); break;
    }
    const bool structural = max_off_diagonal(rho.matrix()) > kStructuralThreshold;
    const bool by_negativity = negativity(rho, {0}) > kNegativityFloor;
    bool agree = structural == by_negativity;
    try {
      const ClassLabel c = two_mode_separable(rho);
      agree = agree && ((c.kind == ClassKind::inseparable) == by_negativity);
    } catch (const InconsistencyError&) {
      agree = false;
    }
    disagreements += agree ? 0 : 1;
    entangled += by_negativity ? 1 : 0;
  }
  return {disagreements == 0, fmt("%g disagreements, %g of 10000 entangled", disagreements, entangled)};
}

FockOperator single(const std::string& label, std::uint64_t seed) {
  return random_density(ModeLayout({label}), seed);
}

// Product state with `split` alone and the other two parties in an
// entangled pair, reordered to modes A, B, C.
FockOperator biseparable_sample(int split, std::uint64_t seed) {
  static const std::vector<std::string> names = {"A", "B", "C"};
  std::vector<std::string> rest;
  for (int k = 0; k < 3; ++k)
    if (k != split) rest.push_back(names[k]);
  const FockOperator pair = random_density(ModeLayout(rest), derive_seed(seed, 1));
  const FockOperator prod = graded_tensor(single(names[split], derive_seed(seed, 2)), pair);
  std::vector<int> order(3);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j)
      if (prod.layout().label(j) == names[k]) order[k] = j;
  return permute_modes(prod, order);
}

FockOperator fully_separable_sample(std::uint64_t seed) {
  Rng rng(seed);
  const int terms = rng.uniform_int(1, 4);
  FockOperator acc = FockOperator::zero(ModeLayout::tripartite());
  double total = 0.0;
  std::vector<double> w(terms);
  for (double& x : w) total += (x = rng.uniform() + 1e-3);
  for (int k = 0; k < terms; ++k) {
    const std::uint64_t s = derive_seed(seed, k);
    const FockOperator p =
        graded_tensor(graded_tensor(single("A", derive_seed(s, 0)), single("B", derive_seed(s, 1))),
                      single("C", derive_seed(s, 2)));
    acc = acc + p * Complex(w[k] / total, 0);
  }
  return acc;
}

FockOperator section_example(double alpha) {
  const ModeLayout l = ModeLayout::tripartite();
  const Matrix pair = (creation_op(l, 1) * creation_op(l, 2)).matrix();
  Vector vac = Vector::Zero(8);
  vac(0) = 1.0;
  const double norm = std::sqrt(1 + alpha * alpha);
  const Vector plus = (vac + alpha * pair * vac) / norm;
  const Vector minus = (vac - alpha * pair * vac) / norm;
  const Vector moved = creation_op(l, 0).matrix() * plus;
  return FockOperator(l, 0.5 * (moved * moved.adjoint() + minus * minus.adjoint()));
}

Outcome criterion7() {
  static const char* names[] = {"A", "B", "C"};
  int wrong_full = 0, wrong_bi = 0;
  for (int t = 0; t < 1000; ++t) {
    const ClassLabel c = mixed3_classify(fully_separable_sample(derive_seed(kSeed, t)));
    wrong_full += c.kind == ClassKind::fully_separable ? 0 : 1;
    const int split = t % 3;
    const ClassLabel b = mixed3_classify(biseparable_sample(split, derive_seed(kSeed + 7, t)));
    wrong_bi += (b.kind == ClassKind::biseparable && b.part == names[split]) ? 0 : 1;
  }
  const FockOperator ex = section_example(0.7);
  const ClassLabel e = mixed3_classify(ex);
  const double n_bc = negativity(trace_out(ex, {0}), {0});
  const bool ex_ok = e.name() == "biseparable(A)" && n_bc <= kZero;
  return {wrong_full == 0 && wrong_bi == 0 && ex_ok,
          fmt("misclassified fully separable %g, biseparable %g; example N_BC = %.3g", wrong_full, wrong_bi,
              n_bc) +
              ", label " + e.name()};
}

Outcome criterion8() {
  PerturbationOptions opts;
  opts.ratio_low = 6.0;
  opts.ratio_high = 10.0;
  opts.required_fraction = 0.9;
  const CheckReport r = check_perturbation_expansion(kSeed, 50, opts);
  return {r.pass, fmt("in-window fraction %.3g, median ratio %.4g, fitted order %.3g",
                      r.stats.at("fraction_in_window"), r.stats.at("median_ratio"), r.stats.at("fitted_order"))};
}

Outcome criterion9() {
  const CheckReport r = conjecture_scan(kSeed, 10000, {2, 3}, kConjectureFloor);
  for (const std::string& d : r.dumps) std::cerr << "counterexample candidate: " << d << '\n';
  return {r.pass && r.violations == 0,
          fmt("min N = %.3g over 10000 type-II states, rejected %g, candidates %g", r.stats.at("min_negativity"),
              r.stats.count("rejected") ? r.stats.at("rejected") : 0.0, r.violations)};
}

std::vector<std::vector<double>> sweep_rows(const std::vector<std::string>& args, std::vector<std::string>& header) {
  std::ostringstream out, err;
  if (cli::run(args, out, err) != cli::kOk) throw std::runtime_error("sweep failed: " + err.str());
  std::istringstream in(out.str());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::getline(in, line);
  header.clear();
  {
    std::istringstream hs(line);
    for (std::string c; std::getline(hs, c, ',');) header.push_back(c);
  }
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');)
      if (c != "fermionic" && c != "bosonic") row.push_back(std::stod(c));
    rows.push_back(row);
  }
  return rows;
}

Outcome criterion10() {
  std::vector<std::string> header;
  const auto grid = sweep_rows({"sweep", "psi_p", "--min", "0", "--max", "1", "--steps", "101", "--normalized"}, header);
  const auto sep = sweep_rows(
      {"sweep", "psi_p", "--min", "0.5714285714285714", "--max", "0.5714285714285714", "--steps", "1", "--normalized"},
      header);
  double at_one = 0.0, at_sep = 0.0, w_class = 0.0;
  int w_points = 0;
  for (int c = 1; c <= 4; ++c) {
    at_one = std::max(at_one, std::abs(grid.back()[c] - 1.0));
    at_sep = std::max(at_sep, std::abs(sep.front()[c]));
  }
  for (const auto& row : grid) {
    if (pure3_class(psi_p(row[0])).kind != ClassKind::w) continue;
    ++w_points;
    w_class = std::max({w_class, std::abs(row[1]), std::abs(row[2])});
  }
  const bool ok = at_one <= kSweepTol && at_sep <= kSweepTol && w_class <= kSweepTol && w_points > 0;
  return {ok, fmt("|m-1| at p=1 %.3g, max at p=4/7 %.3g, J/tau on W-class %.3g", at_one, at_sep, w_class) +
                  " (" + std::to_string(w_points) + " W-class points)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form regression", criterion1},
      {"pure-state formulas", criterion2},
      {"occupation vs Majorana rule", criterion3},
      {"identity suite", criterion4},
      {"LOCC monotonicity", criterion5},
      {"two-mode biconditional", criterion6},
      {"three-mode mixed classification", criterion7},
      {"perturbative expansion ratio", criterion8},
      {"type-II negativity scan", criterion9},
      {"psi_p sweep", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
