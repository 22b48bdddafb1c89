#include "fneg/verify.hpp"

#include "fneg/measures.hpp"
#include "fneg/ptranspose.hpp"
#include "fneg/states.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

namespace fneg {

namespace {

struct TrialOutcome {
  std::map<std::string, double> family_violation;
  TrialDiagnostic worst;
  std::map<std::string, double> stats;
  std::string dump;
  std::string error;
};

Matrix random_even_matrix(int num_modes, Rng& rng) {
  const Eigen::Index d = Eigen::Index{1} << num_modes;
  Matrix m = Matrix::Zero(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      if ((std::popcount(static_cast<BasisIndex>(r ^ c)) & 1) == 0)
        m(r, c) = scale * rng.complex_normal();
  return m;
}

Matrix random_odd_matrix(int num_modes, Rng& rng) {
  const Eigen::Index d = Eigen::Index{1} << num_modes;
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      if (std::popcount(static_cast<BasisIndex>(r ^ c)) & 1) m(r, c) = rng.complex_normal();
  return m;
}

double max_abs_diff(const FockOperator& a, const FockOperator& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

void record(TrialOutcome& out, const std::string& family, double lhs, double rhs, double violation) {
  auto& slot = out.family_violation[family];
  slot = std::max(slot, violation);
  if (out.worst.family.empty() || violation > out.worst.violation) {
    out.worst.family = family;
    out.worst.lhs = lhs;
    out.worst.rhs = rhs;
    out.worst.violation = violation;
  }
}

// Runs trials in parallel and merges them by max / count reduction.
CheckReport run_trials(const std::string& name, std::uint64_t seed, int trials, double tolerance,
                       const std::function<TrialOutcome(int, std::uint64_t)>& body) {
  if (trials < 1) throw ValidationError(name + ": trials must be >= 1");
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    try {
      outcomes[static_cast<std::size_t>(t)] = body(t, s);
    } catch (const std::exception& e) {
      outcomes[static_cast<std::size_t>(t)].error = e.what();
    }
    outcomes[static_cast<std::size_t>(t)].worst.trial = t;
    outcomes[static_cast<std::size_t>(t)].worst.seed = s;
  }

  CheckReport report;
  report.check_name = name;
  report.trials = trials;
  report.tolerance = tolerance;
  for (auto& o : outcomes) {
    if (!o.error.empty())
      throw InconsistencyError(name + ": trial " + std::to_string(o.worst.trial) + " failed: " +
                               o.error);
    for (const auto& [fam, v] : o.family_violation) {
      auto& slot = report.family_max[fam];
      slot = std::max(slot, v);
    }
    report.max_violation = std::max(report.max_violation, o.worst.violation);
    if (o.worst.violation > tolerance) ++report.violations;
    if (!o.dump.empty()) report.dumps.push_back(o.dump);
    report.diagnostics.push_back(o.worst);
  }
  report.pass = report.max_violation <= tolerance;
  return report;
}

// Spectral decomposition of an even Hermitian matrix, one parity block at a time
// so every eigenvector has definite parity.
std::vector<Vector> even_eigenvectors(const Matrix& h) {
  const Eigen::Index d = h.rows();
  std::vector<Vector> vecs;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < d; ++i)
      if ((std::popcount(static_cast<BasisIndex>(i)) & 1) == parity) idx.push_back(i);
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix block(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
      for (Eigen::Index c = 0; c < k; ++c) block(r, c) = h(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    for (Eigen::Index c = 0; c < k; ++c) {
      Vector v = Vector::Zero(d);
      for (Eigen::Index r = 0; r < k; ++r) v(idx[r]) = solver.eigenvectors()(r, c);
      vecs.push_back(v);
    }
  }
  return vecs;
}

// Complete orthogonal set of even projectors grouping eigenvectors of a random H.
std::vector<Matrix> random_projectors(int num_modes, Rng& rng) {
  const Matrix h = random_even_hermitian(num_modes, rng.engine()());
  const std::vector<Vector> vecs = even_eigenvectors(h);
  const int groups = rng.uniform_int(1, static_cast<int>(vecs.size()));
  const auto d = static_cast<Eigen::Index>(vecs.size());
  std::vector<Matrix> proj(static_cast<std::size_t>(groups), Matrix::Zero(d, d));
  for (const auto& v : vecs)
    proj[static_cast<std::size_t>(rng.uniform_int(0, groups - 1))] += v * v.adjoint();
  std::vector<Matrix> out;
  for (auto& p : proj)
    if (p.cwiseAbs().maxCoeff() > 0.0) out.push_back(std::move(p));
  return out;
}

FockOperator single_mode_state(double q, const std::string& label) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = q;
  m(1, 1) = 1.0 - q;
  return FockOperator(ModeLayout({label}), m);
}

}  // namespace

std::string fingerprint(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
  const std::size_t n = static_cast<std::size_t>(m.size()) * sizeof(Complex);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string dump_state(const FockOperator& rho) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"num_modes\": " << rho.num_modes() << ", \"labels\": [";
  for (int j = 0; j < rho.num_modes(); ++j)
    os << (j ? ", " : "") << '"' << rho.layout().label(j) << '"';
  os << "], \"matrix\": [";
  const Matrix& m = rho.matrix();
  bool first = true;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      os << (first ? "" : ", ") << '[' << m(r, c).real() << ", " << m(r, c).imag() << ']';
      first = false;
    }
  }
  os << "]}";
  return os.str();
}

Matrix random_even_hermitian(int num_modes, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = random_even_matrix(num_modes, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_even_unitary(int num_modes, std::uint64_t seed) {
  const Matrix h = random_even_hermitian(num_modes, seed);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::VectorXd ev = solver.eigenvalues();
  Vector phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) phases(k) = std::polar(1.0, 3.0 * ev(k));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// ---------------------------------------------------------------- identities

CheckReport check_identity_suite(std::uint64_t seed, int trials, const std::vector<int>& modes,
                                 double tolerance) {
  if (modes.empty()) throw ValidationError("identity suite needs at least one mode count");
  for (int n : modes)
    if (n < 2) throw ValidationError("identity suite needs at least two modes per trial");

  return run_trials("identities", seed, trials, tolerance, [&](int t, std::uint64_t s) {
    Rng rng(s);
    const int n = modes[static_cast<std::size_t>(t) % modes.size()];
    const int m_a = rng.uniform_int(1, n - 1);
    const ModeLayout layout = ModeLayout::bipartite(m_a, n - m_a);
    const SubsystemSpec a = layout.modes_of("A");
    const SubsystemSpec b = layout.modes_of("B");
    const FockOperator rho = random_density(layout, rng.engine()());
    auto local = [&](const SubsystemSpec& spec) {
      const ModeLayout sub = layout.restricted(spec);
      return embed_local(FockOperator(sub, random_even_matrix(sub.num_modes(), rng)), layout, spec);
    };
    const FockOperator xa = local(a), ya = local(a), xb = local(b), yb = local(b);
    auto ta = [&](const FockOperator& op) { return fermionic_pt(op, a); };
    auto tb = [&](const FockOperator& op) { return fermionic_pt(op, b); };
    auto tr = [](const FockOperator& op) { return clifford_transpose(op); };
    const FockOperator pa = parity_op(layout, a);
    const FockOperator rho_ta = ta(rho);
    const FockOperator rho_tb = tb(rho);

    TrialOutcome out;
    out.worst.fingerprint = fingerprint(rho.matrix());
    auto eq = [&](const std::string& fam, const FockOperator& lhs, const FockOperator& rhs) {
      const double v = max_abs_diff(lhs, rhs);
      record(out, fam, lhs.matrix().cwiseAbs().maxCoeff(), rhs.matrix().cwiseAbs().maxCoeff(), v);
    };
    eq("BrT_1", ta(rho * xb), rho_ta * xb);
    eq("BrT_2", ta(xb * rho), xb * rho_ta);
    eq("ArT_1", ta(rho * xa), tr(xa) * rho_ta);
    eq("ArT_2", ta(xa * rho), rho_ta * tr(xa));
    eq("ABrT_1", ta(rho * xa * xb), tr(xa) * rho_ta * xb);
    eq("ABrT_2", ta(xa * xb * rho), xb * rho_ta * tr(xa));
    const FockOperator sandwich = xa * xb * rho * ya * yb;
    eq("ABCDrT_1", ta(sandwich), tr(ya) * xb * rho_ta * tr(xa) * yb);
    eq("ABCDrT_2", tb(sandwich), xa * tr(yb) * rho_tb * ya * tr(xb));
    eq("check_1", tb(ta(rho * xb)), tr(rho * xb));
    eq("check_2", tb(ta(rho * xa)), tr(rho * xa));
    eq("check_3", tb(ta(rho * xa * xb)), tr(rho * xa * xb));
    eq("check_4", tb(ta(sandwich)), tr(sandwich));
    eq("TA_TB", tb(rho_ta), tr(rho));
    eq("TA_TA", ta(rho_ta), pa * rho * pa);
    return out;
  });
}

// ---------------------------------------------------------------- LOCC

CheckReport check_locc_monotonicity(std::uint64_t seed, int trials, const std::vector<int>& modes,
                                    double tolerance) {
  if (modes.empty()) throw ValidationError("LOCC suite needs at least one mode count");
  for (int n : modes)
    if (n < 2) throw ValidationError("LOCC suite needs at least two modes per trial");

  return run_trials("locc", seed, trials, tolerance, [&](int t, std::uint64_t s) {
    Rng rng(s);
    const int n = modes[static_cast<std::size_t>(t) % modes.size()];
    const int m_a = rng.uniform_int(1, n - 1);
    const ModeLayout layout = ModeLayout::bipartite(m_a, n - m_a);
    const SubsystemSpec a = layout.modes_of("A");
    const SubsystemSpec b = layout.modes_of("B");
    const int rank = rng.uniform_int(1, static_cast<int>(layout.dimension()));
    const FockOperator rho = random_density(layout, rng.engine()(), DensityConstraint::any(), rank);
    const double n0 = negativity(rho, a);
    const double e0 = std::log(2.0 * n0 + 1.0);

    TrialOutcome out;
    out.worst.fingerprint = fingerprint(rho.matrix());
    auto equal = [&](const std::string& fam, double lhs, double rhs) {
      record(out, fam, lhs, rhs, std::abs(lhs - rhs));
    };
    auto at_most = [&](const std::string& fam, double lhs, double rhs) {
      record(out, fam, lhs, rhs, std::max(0.0, lhs - rhs));
    };

    // (a) local unitaries
    {
      const FockOperator ua(layout.restricted(a), random_even_unitary(m_a, rng.engine()()));
      const FockOperator ub(layout.restricted(b), random_even_unitary(n - m_a, rng.engine()()));
      const FockOperator u = embed_local(ua, layout, a) * embed_local(ub, layout, b);
      const FockOperator moved(layout, u.matrix() * rho.matrix() * u.matrix().adjoint());
      equal("local_unitary", negativity(moved, a), n0);
    }

    // (b) unentangled ancilla on the A side
    const double q = rng.uniform();
    const FockOperator big = graded_tensor(rho, single_mode_state(q, "A"));
    const SubsystemSpec big_a = big.layout().modes_of("A");
    equal("ancilla_append", negativity(big, big_a), n0);

    // (c) local projective measurement
    {
      const auto proj_a = random_projectors(m_a, rng);
      const auto proj_b = random_projectors(n - m_a, rng);
      double sum_n = 0.0;
      double sum_e = 0.0;
      for (const auto& pa : proj_a) {
        for (const auto& pb : proj_b) {
          const Matrix p = embed_local(FockOperator(layout.restricted(a), pa), layout, a).matrix() *
                           embed_local(FockOperator(layout.restricted(b), pb), layout, b).matrix();
          const Matrix sub = p * rho.matrix() * p;
          const double r = sub.trace().real();
          if (r < 1e-14) continue;
          const double nm = negativity(FockOperator(layout, sub / r), a);
          sum_n += r * nm;
          sum_e += r * std::log(2.0 * nm + 1.0);
        }
      }
      at_most("projective", sum_n, n0);
      at_most("projective_log", sum_e, e0);
    }

    // (d) entangle an ancilla with A, measure it, trace it out
    {
      const int ancilla = m_a;  // position of R inside big
      const SubsystemSpec ar = big_a;
      const FockOperator uar(big.layout().restricted(ar), random_even_unitary(m_a + 1, rng.engine()()));
      const Matrix u = embed_local(uar, big.layout(), ar).matrix();
      const FockOperator evolved(big.layout(), u * big.matrix() * u.adjoint());
      const SubsystemSpec r_spec{ancilla};
      double sum_n = 0.0;
      double sum_e = 0.0;
      for (Sector sec : {Sector::even, Sector::odd}) {
        const ParityProjection pr = parity_project(evolved, r_spec, sec, 1e-14);
        if (!pr.state) continue;
        const FockOperator post = trace_out(*pr.state, r_spec);
        const double nm = negativity(post, post.layout().modes_of("A"));
        sum_n += pr.weight * nm;
        sum_e += pr.weight * std::log(2.0 * nm + 1.0);
      }
      const FockOperator averaged = trace_out(evolved, r_spec);
      at_most("ancilla_trace_1", sum_n, n0);
      at_most("ancilla_trace_2", negativity(averaged, averaged.layout().modes_of("A")), n0);
      at_most("ancilla_trace_log", sum_e, e0);
    }

    // (e) additivity with an independent two-mode state
    {
      const FockOperator other = random_density(ModeLayout::bipartite(1, 1), rng.engine()());
      const FockOperator both = graded_tensor(rho, other);
      const double e_other = log_negativity(other, SubsystemSpec{0});
      equal("additivity", log_negativity(both, both.layout().modes_of("A")), e0 + e_other);
    }
    return out;
  });
}

// ---------------------------------------------------------------- perturbation

FockOperator perturbation_state(double w0, const Matrix& rho0, const Matrix& rho1,
                                const Matrix& delta, double eps) {
  const Eigen::Index d = rho0.rows();
  int env = 0;
  while ((Eigen::Index{1} << env) < d) ++env;
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      m(2 * r, 2 * c) = w0 * rho0(r, c);
      m(2 * r + 1, 2 * c + 1) = (1.0 - w0) * rho1(r, c);
      m(2 * r + 1, 2 * c) = eps * delta(r, c);
      m(2 * r, 2 * c + 1) = eps * std::conj(delta(c, r));
    }
  }
  return FockOperator(ModeLayout::bipartite(1, env), m);
}

double perturbation_prediction(double w0, const Matrix& rho0, const Matrix& rho1,
                               const Matrix& delta, double eps) {
  Eigen::SelfAdjointEigenSolver<Matrix> s0(rho0);
  Eigen::SelfAdjointEigenSolver<Matrix> s1(rho1);
  const double w1 = 1.0 - w0;
  const Matrix inner = s0.eigenvectors().adjoint() * delta * s1.eigenvectors();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < inner.rows(); ++j)
    for (Eigen::Index k = 0; k < inner.cols(); ++k)
      sum += std::norm(inner(j, k)) / (w0 * s0.eigenvalues()(j) + w1 * s1.eigenvalues()(k));
  return 1.0 + 2.0 * eps * eps * sum;
}

CheckReport check_perturbation_expansion(std::uint64_t seed, int trials,
                                         const PerturbationOptions& opts) {
  const auto& eps = opts.epsilons;
  if (eps.size() < 2) throw ValidationError("perturbation check needs at least two epsilons");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw ValidationError("epsilons must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ValidationError("epsilons must decrease");
  }
  if (opts.env_modes < 1) throw ValidationError("perturbation check needs env_modes >= 1");
  const double step = eps[eps.size() - 2] / eps.back();

  CheckReport report = run_trials("perturbation", seed, trials, 0.0, [&](int, std::uint64_t s) {
    Rng rng(s);
    const ModeLayout env = ModeLayout::single_party(opts.env_modes, "B");
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Matrix rho0 = random_density(env, rng.engine()()).matrix();
      const Matrix rho1 = random_density(env, rng.engine()()).matrix();
      const double w0 = 0.2 + 0.6 * rng.uniform();
      const Matrix delta = random_odd_matrix(opts.env_modes, rng);
      Eigen::SelfAdjointEigenSolver<Matrix> s0(rho0, Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Matrix> s1(rho1, Eigen::EigenvaluesOnly);
      const double denom = w0 * s0.eigenvalues().minCoeff() + (1.0 - w0) * s1.eigenvalues().minCoeff();
      if (denom < opts.min_denominator) continue;
      const FockOperator top = perturbation_state(w0, rho0, rho1, delta, eps.front());
      if (top.min_eigenvalue() < 0.0) continue;

      std::vector<double> residual;
      for (double e : eps) {
        const FockOperator rho = perturbation_state(w0, rho0, rho1, delta, e);
        const double norm = trace_norm(fermionic_pt(rho, SubsystemSpec{0}));
        residual.push_back(std::abs(norm - perturbation_prediction(w0, rho0, rho1, delta, e)));
      }
      const double ratio = residual[residual.size() - 2] / residual.back();
      TrialOutcome out;
      out.worst.fingerprint = fingerprint(top.matrix());
      out.worst.family = "residual_ratio";
      out.worst.lhs = ratio;
      out.worst.rhs = step * step * step;
      out.stats["ratio"] = ratio;
      out.stats["residual_first"] = residual.front();
      out.stats["in_window"] = (ratio >= opts.ratio_low && ratio <= opts.ratio_high) ? 1.0 : 0.0;
      return out;
    }
    throw ValidationError("perturbation check: could not sample a non-degenerate instance");
  });

  // Stats live in the diagnostics' lhs; rebuild the summary.
  std::vector<double> ratios;
  int in_window = 0;
  for (const auto& d : report.diagnostics) {
    ratios.push_back(d.lhs);
    if (d.lhs >= opts.ratio_low && d.lhs <= opts.ratio_high) ++in_window;
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  const double fraction = static_cast<double>(in_window) / static_cast<double>(ratios.size());
  report.stats["fraction_in_window"] = fraction;
  report.stats["median_ratio"] = median;
  report.stats["min_ratio"] = ratios.front();
  report.stats["max_ratio"] = ratios.back();
  report.stats["fitted_order"] = std::log(median) / std::log(step);
  report.stats["required_fraction"] = opts.required_fraction;
  report.violations = static_cast<int>(ratios.size()) - in_window;
  report.max_violation = std::max(0.0, opts.required_fraction - fraction);
  report.family_max = {{"fraction_shortfall", report.max_violation}};
  report.pass = report.max_violation <= report.tolerance;
  return report;
}

// ---------------------------------------------------------------- conjecture

CheckReport conjecture_scan(std::uint64_t seed, int samples, const std::vector<int>& modes,
                            double tolerance) {
  if (modes.empty()) throw ValidationError("conjecture scan needs at least one mode count");
  for (int n : modes)
    if (n < 2) throw ValidationError("conjecture scan needs at least two modes per sample");

  CheckReport report = run_trials("conjecture", seed, samples, 0.0, [&](int t, std::uint64_t s) {
    Rng rng(s);
    const int n = modes[static_cast<std::size_t>(t) % modes.size()];
    const int m_a = rng.uniform_int(1, n - 1);
    const ModeLayout layout = ModeLayout::bipartite(m_a, n - m_a);
    const SubsystemSpec a = layout.modes_of("A");
    int rejected = 0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const int rank = rng.uniform_int(1, static_cast<int>(layout.dimension()));
      const FockOperator rho =
          random_density(layout, rng.engine()(), DensityConstraint::any(), rank);
      if (parity_commutator_norm(rho.matrix(), a.mask()) <= 1e-6) {
        ++rejected;
        continue;
      }
      const double neg = negativity(rho, a);
      TrialOutcome out;
      out.worst.fingerprint = fingerprint(rho.matrix());
      out.worst.family = "type_II_negativity";
      out.worst.lhs = neg;
      out.worst.rhs = tolerance;
      out.worst.violation = neg < tolerance ? tolerance - neg : 0.0;
      out.family_violation["type_II_negativity"] = out.worst.violation;
      if (neg < tolerance) out.dump = dump_state(rho);
      out.stats["rejected"] = rejected;
      return out;
    }
    throw ValidationError("conjecture scan: no type-II sample found");
  });
  double min_neg = std::numeric_limits<double>::infinity();
  for (const auto& d : report.diagnostics) min_neg = std::min(min_neg, d.lhs);
  report.stats["min_negativity"] = min_neg;
  report.stats["negativity_floor"] = tolerance;
  report.stats["candidates"] = static_cast<double>(report.dumps.size());
  return report;
}

CheckReport pi_inequality_scan(std::uint64_t seed, int samples, Flavor flavor) {
  const double inf = std::numeric_limits<double>::infinity();
  CheckReport report = run_trials("pi_inequality", seed, samples, inf, [&](int t, std::uint64_t s) {
    const ModeLayout layout = ModeLayout::tripartite();
    const FockOperator rho =
        (t % 2 == 0) ? random_pure(layout, (t % 4 == 0) ? Sector::even : Sector::odd, s)
                     : random_density(layout, s, DensityConstraint::any(),
                                      1 + static_cast<int>(s % 8));
    const TripartiteNegativities n = tripartite_negativities(rho, flavor);
    TrialOutcome out;
    out.worst.fingerprint = fingerprint(rho.matrix());
    auto check = [&](const std::string& fam, double lhs, double rhs) {
      record(out, fam, lhs, rhs, std::max(0.0, lhs - rhs));
    };
    check("pi_A", n.n_ab * n.n_ab + n.n_ac * n.n_ac, n.n_a_bc * n.n_a_bc);
    check("pi_B", n.n_ab * n.n_ab + n.n_bc * n.n_bc, n.n_b_ac * n.n_b_ac);
    check("pi_C", n.n_ac * n.n_ac + n.n_bc * n.n_bc, n.n_c_ab * n.n_c_ab);
    return out;
  });
  int count = 0;
  for (const auto& d : report.diagnostics)
    if (d.violation > 1e-12) ++count;
  report.violations = count;
  report.stats["violation_count"] = count;
  report.stats["violation_fraction"] = static_cast<double>(count) / samples;
  return report;
}

}  // namespace fneg
