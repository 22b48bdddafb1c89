#include "cli_app.hpp"

#include "state_io.hpp"

#include "fneg/classify.hpp"
#include "fneg/measures.hpp"
#include "fneg/ptranspose.hpp"
#include "fneg/states.hpp"
#include "fneg/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>

namespace fneg::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kReproduceTolerance = 1e-9;

struct Globals {
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  std::string output = "csv";
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Flavor parse_flavor(const std::string& s) {
  if (s == "fermionic") return Flavor::fermionic;
  if (s == "bosonic") return Flavor::bosonic;
  throw ValidationError("unknown flavor '" + s + "'");
}

// ---------------------------------------------------------------- reproduce

struct ValueRow {
  std::string name;
  double computed;
  double expected;
};

double reduced_log_negativity(const FockOperator& rho, Flavor flavor) {
  const FockOperator ab = partial_trace(rho, SubsystemSpec{0, 1});
  return log_negativity(ab, SubsystemSpec{0}, flavor);
}

std::vector<ValueRow> closed_form_values() {
  const auto bos = Flavor::bosonic;
  const auto e_f = [](double p) { return std::log(0.5 * (1 + p) + 0.5 * std::sqrt(5 * p * p - 2 * p + 1)); };
  const auto e_b = [](double p) { return std::log(0.75 * (1 + p) + 0.25 * std::abs(1 - 3 * p)); };
  const SubsystemSpec a{0};
  const SubsystemSpec bc{1, 2};
  std::vector<ValueRow> rows;
  for (double p : {0.25, 0.5, 1.0}) {
    rows.push_back({"werner_E_fermionic(p=" + fmt(p) + ")", log_negativity(werner(p), a), e_f(p)});
    rows.push_back({"werner_E_bosonic(p=" + fmt(p) + ")", log_negativity(werner(p), a, bos), e_b(p)});
  }
  const FockOperator dimer = majorana_dimer();
  rows.push_back({"dimer_E_fermionic", log_negativity(dimer, a), std::log(std::sqrt(2.0))});
  rows.push_back({"dimer_E_bosonic", log_negativity(dimer, a, bos), 0.0});
  const FockOperator w = w_state();
  rows.push_back({"W_E_A(BC)", log_negativity(w, a), std::log(1 + 2 * std::sqrt(2.0) / 3)});
  rows.push_back({"W_E_AB", reduced_log_negativity(w, Flavor::fermionic), std::log((2 + std::sqrt(5.0)) / 3)});
  const FockOperator ghz = ghz_state();
  rows.push_back({"GHZ_E_A(BC)", log_negativity(ghz, a), std::log(2.0)});
  rows.push_back({"GHZ_E_AB_fermionic", reduced_log_negativity(ghz, Flavor::fermionic), std::log(std::sqrt(2.0))});
  rows.push_back({"GHZ_E_AB_bosonic", reduced_log_negativity(ghz, bos), 0.0});
  const FockOperator triple = majorana_triple();
  rows.push_back({"triple_E_A(BC)", log_negativity(triple, a), std::log(std::sqrt(5.0 / 3.0))});
  rows.push_back({"triple_E_AB", reduced_log_negativity(triple, Flavor::fermionic), std::log(2 / std::sqrt(3.0))});
  rows.push_back({"W_pi_ABC", pi_abc(w), (std::sqrt(5.0) - 1) / 9});
  rows.push_back({"GHZ_pi_ABC_fermionic", pi_abc(ghz), (4 * std::sqrt(2.0) - 5) / 4});
  rows.push_back({"GHZ_pi_ABC_bosonic", pi_abc(ghz, bos), 0.25});
  rows.push_back({"GHZ_tau_ABC", three_tangle(ghz), 0.25});
  rows.push_back({"W_tau_ABC", three_tangle(w), 0.0});
  rows.push_back({"W_J_ABC", j_abc(w).value, 0.0});
  return rows;
}

struct Exemplar {
  std::string name;
  PureCoeffs coeffs;
  std::string expected;
};

std::vector<Exemplar> table_one_exemplars() {
  const double h = 1.0 / std::sqrt(2.0);
  return {
      {"vacuum", PureCoeffs({1, 0, 0, 0}, Sector::even), "A-B-C"},
      {"pair_BC", PureCoeffs({h, 0, h, 0}, Sector::even), "A-BC"},
      {"pair_AC", PureCoeffs({h, 0, 0, h}, Sector::even), "B-AC"},
      {"pair_AB", PureCoeffs({h, h, 0, 0}, Sector::even), "C-AB"},
      {"W_f", w_coeffs(), "W"},
      {"GHZ_f", ghz_coeffs(), "GHZ"},
  };
}

int cmd_reproduce(const std::string& table, const Globals& g, std::ostream& out) {
  const double tol = g.tolerance.value_or(kReproduceTolerance);
  bool ok = true;
  if (table == "paper-values") {
    const auto rows = closed_form_values();
    ordered_json js = ordered_json::array();
    if (g.output == "csv") out << "quantity,computed,expected,abs_delta,ok\n";
    for (const auto& r : rows) {
      const double delta = std::abs(r.computed - r.expected);
      const bool row_ok = delta <= tol;
      ok = ok && row_ok;
      if (g.output == "csv")
        out << r.name << ',' << fmt(r.computed) << ',' << fmt(r.expected) << ',' << fmt(delta) << ','
            << (row_ok ? "true" : "false") << '\n';
      else
        js.push_back({{"quantity", r.name}, {"computed", r.computed}, {"expected", r.expected},
                      {"abs_delta", delta}, {"ok", row_ok}});
    }
    if (g.output == "json") out << ordered_json{{"tolerance", tol}, {"pass", ok}, {"rows", js}}.dump(2) << '\n';
  } else {
    ordered_json js = ordered_json::array();
    if (g.output == "csv") out << "state,sector,N_A(BC),N_B(AC),N_C(AB),J_ABC,label,expected,ok\n";
    for (const auto& ex : table_one_exemplars()) {
      const ClassLabel label = pure3_class(ex.coeffs);
      const bool row_ok = label.name() == ex.expected;
      ok = ok && row_ok;
      const auto& w = label.witnesses;
      if (g.output == "csv")
        out << ex.name << ',' << to_string(ex.coeffs.parity_sector) << ',' << fmt(w.at("N_A(BC)")) << ','
            << fmt(w.at("N_B(AC)")) << ',' << fmt(w.at("N_C(AB)")) << ',' << fmt(w.at("J_ABC")) << ','
            << label.name() << ',' << ex.expected << ',' << (row_ok ? "true" : "false") << '\n';
      else
        js.push_back({{"state", ex.name}, {"sector", to_string(ex.coeffs.parity_sector)},
                      {"witnesses", w}, {"label", label.name()}, {"expected", ex.expected},
                      {"ok", row_ok}});
    }
    if (g.output == "json") out << ordered_json{{"pass", ok}, {"rows", js}}.dump(2) << '\n';
  }
  return ok ? kOk : kMismatch;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string family;
  double min = 0.0;
  double max = 1.0;
  int steps = 101;
  std::vector<std::string> measures;
  std::string flavor = "fermionic";
  bool normalized = false;
};

std::function<double(const FockOperator&)> werner_measure(const std::string& name, Flavor flavor) {
  const SubsystemSpec a{0};
  if (name == "E") return [=](const FockOperator& r) { return log_negativity(r, a, flavor); };
  if (name == "N") return [=](const FockOperator& r) { return negativity(r, a, flavor); };
  if (name == "trace_norm")
    return [=](const FockOperator& r) { return negativity_report(r, a, flavor).at("trace_norm"); };
  throw ValidationError("unknown werner measure '" + name + "' (E, N, trace_norm)");
}

std::function<double(const FockOperator&)> psi_p_measure(const std::string& name, Flavor flavor) {
  const std::vector<std::string> known = {"J_ABC", "tau_ABC", "N_ABC", "pi_ABC", "pi_A", "pi_B",
                                          "pi_C", "N_A(BC)", "N_B(AC)", "N_C(AB)", "N_AB", "N_AC",
                                          "N_BC"};
  if (std::find(known.begin(), known.end(), name) == known.end()) {
    std::string list;
    for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
    throw ValidationError("unknown psi_p measure '" + name + "' (" + list + ")");
  }
  return [=](const FockOperator& r) { return tripartite_report(r, flavor).at(name); };
}

int cmd_sweep(const SweepOptions& o, const Globals& g, std::ostream& out) {
  if (o.family != "werner" && o.family != "psi_p")
    throw ValidationError("unknown sweep family '" + o.family + "'");
  if (o.steps < 1) throw ValidationError("--steps must be >= 1");
  if (!(o.min <= o.max)) throw ValidationError("--min must not exceed --max");
  if (o.min < 0.0 || o.max > 1.0) throw ValidationError("sweep parameter must lie in [0, 1]");
  if (o.steps == 1 && o.min != o.max) throw ValidationError("--steps 1 needs --min equal to --max");
  const Flavor flavor = parse_flavor(o.flavor);

  std::vector<std::string> names = o.measures;
  if (names.empty())
    names = o.family == "werner" ? std::vector<std::string>{"E"}
                                 : std::vector<std::string>{"J_ABC", "tau_ABC", "N_ABC", "pi_ABC"};
  std::vector<std::function<double(const FockOperator&)>> fns;
  for (const auto& n : names)
    fns.push_back(o.family == "werner" ? werner_measure(n, flavor) : psi_p_measure(n, flavor));
  const std::function<FockOperator(double)> family =
      o.family == "werner" ? std::function<FockOperator(double)>(werner)
                           : std::function<FockOperator(double)>([](double p) { return psi_p(p); });

  std::vector<double> scale(names.size(), 1.0);
  if (o.normalized) {
    const FockOperator ref = o.family == "werner" ? werner(1.0) : ghz_state();
    for (std::size_t k = 0; k < names.size(); ++k) {
      scale[k] = fns[k](ref);
      if (std::abs(scale[k]) < 1e-12)
        throw ValidationError("measure '" + names[k] + "' vanishes on the reference state; cannot normalise");
    }
  }

  std::vector<double> grid(static_cast<std::size_t>(o.steps));
  for (int k = 0; k < o.steps; ++k)
    grid[static_cast<std::size_t>(k)] =
        o.steps == 1 ? o.min : o.min + (o.max - o.min) * k / (o.steps - 1);
  std::vector<std::vector<double>> values(grid.size());
  std::vector<std::string> errors(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < o.steps; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      const FockOperator rho = family(grid[i]);
      for (std::size_t m = 0; m < fns.size(); ++m) values[i].push_back(fns[m](rho) / scale[m]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw InconsistencyError("sweep failed: " + e);

  if (g.output == "csv") {
    out << "p";
    for (const auto& n : names) out << ',' << n;
    out << ",flavor\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << fmt(grid[i]);
      for (double v : values[i]) out << ',' << fmt(v);
      out << ',' << o.flavor << '\n';
    }
  } else {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ordered_json row{{"p", grid[i]}};
      for (std::size_t m = 0; m < names.size(); ++m) row[names[m]] = values[i][m];
      row["flavor"] = o.flavor;
      rows.push_back(row);
    }
    out << ordered_json{{"family", o.family}, {"normalized", o.normalized}, {"rows", rows}}.dump(2)
        << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- classify

std::string table_name_for_mixed(const ClassLabel& label) {
  switch (label.kind) {
    case ClassKind::fully_separable: return "A-B-C";
    case ClassKind::biseparable: {
      if (label.part == "A") return "A-BC";
      if (label.part == "B") return "B-AC";
      if (label.part == "C") return "C-AB";
      return label.name();
    }
    default: return "inseparable";
  }
}

int cmd_classify(const std::string& path, const Globals& g, std::ostream& out) {
  const double parse_tol = 1e-9;
  const StateFile file = load_state(path, parse_tol);
  const FockOperator& rho = file.rho;
  ClassifyOptions opts;
  if (g.tolerance) {
    opts.zero_threshold = *g.tolerance;
    opts.structural_threshold = *g.tolerance;
  }
  require_density_matrix(rho, true, "classify");

  ordered_json js;
  ClassLabel label;
  if (rho.num_modes() == 2) {
    label = two_mode_separable(rho, opts);
    js["label"] = label.name();
    js["method"] = "two_mode";
  } else if (rho.num_modes() == 3 && is_pure(rho)) {
    label = pure3_class(rho, opts);
    js["label"] = label.name();
    js["method"] = "pure3";
  } else if (rho.num_modes() == 3) {
    label = mixed3_classify(rho, opts);
    js["label"] = table_name_for_mixed(label);
    js["mixed_label"] = label.name();
    js["method"] = "mixed3";
  } else {
    throw ValidationError("classify supports two- and three-mode states, got " +
                          std::to_string(rho.num_modes()) + " modes");
  }
  js["witnesses"] = label.witnesses;
  js["thresholds"] = {{"zero", opts.zero_threshold},
                      {"structural", opts.structural_threshold},
                      {"marginal_factor", opts.marginal_factor}};
  js["marginal"] = label.marginal;
  ordered_json types = ordered_json::object();
  for (const auto& party : rho.layout().parties()) {
    const ParityTypeResult t = subsystem_parity_type(rho, rho.layout().modes_of(party));
    types[party] = {{"type", to_string(t.type)}, {"commutator_norm", t.commutator_norm}};
  }
  js["parity_type"] = types;
  js["num_modes"] = rho.num_modes();
  out << js.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string check;
  std::optional<int> trials;
  std::vector<int> modes;
  std::vector<double> epsilons;
  std::string flavor = "fermionic";
};

void emit_report(const CheckReport& r, const Globals& g, std::ostream& out) {
  std::vector<TrialDiagnostic> worst = r.diagnostics;
  std::stable_sort(worst.begin(), worst.end(),
                   [](const auto& a, const auto& b) { return a.violation > b.violation; });
  if (worst.size() > 10) worst.resize(10);
  if (g.output == "csv") {
    out << "key,value\n";
    out << "check," << r.check_name << '\n';
    out << "trials," << r.trials << '\n';
    out << "max_violation," << fmt(r.max_violation) << '\n';
    out << "tolerance," << fmt(r.tolerance) << '\n';
    out << "pass," << (r.pass ? "true" : "false") << '\n';
    out << "violations," << r.violations << '\n';
    for (const auto& [k, v] : r.family_max) out << "family_max." << k << ',' << fmt(v) << '\n';
    for (const auto& [k, v] : r.stats) out << "stats." << k << ',' << fmt(v) << '\n';
    return;
  }
  ordered_json diag = ordered_json::array();
  for (const auto& d : worst)
    diag.push_back({{"trial", d.trial}, {"seed", d.seed}, {"fingerprint", d.fingerprint},
                    {"family", d.family}, {"lhs", d.lhs}, {"rhs", d.rhs}, {"violation", d.violation}});
  ordered_json js{{"check", r.check_name},     {"trials", r.trials},
                  {"max_violation", r.max_violation}, {"tolerance", r.tolerance},
                  {"pass", r.pass},            {"violations", r.violations},
                  {"family_max", r.family_max}, {"stats", r.stats},
                  {"worst_trials", diag}};
  out << js.dump(2) << '\n';
}

int cmd_verify(const VerifyOptions& o, const Globals& g, std::ostream& out, std::ostream& err) {
  CheckReport report;
  const auto modes_or = [&](std::vector<int> fallback) { return o.modes.empty() ? fallback : o.modes; };
  if (o.check == "identities") {
    report = check_identity_suite(g.seed, o.trials.value_or(100), modes_or({2, 3, 4}),
                                  g.tolerance.value_or(1e-11));
  } else if (o.check == "locc") {
    report = check_locc_monotonicity(g.seed, o.trials.value_or(200), modes_or({2, 3}),
                                     g.tolerance.value_or(1e-10));
  } else if (o.check == "perturbation") {
    PerturbationOptions popts;
    if (!o.epsilons.empty()) popts.epsilons = o.epsilons;
    if (!o.modes.empty()) popts.env_modes = o.modes.front();
    report = check_perturbation_expansion(g.seed, o.trials.value_or(50), popts);
  } else if (o.check == "conjecture") {
    report = conjecture_scan(g.seed, o.trials.value_or(10000), modes_or({2, 3}),
                             g.tolerance.value_or(1e-10));
  } else if (o.check == "pi-inequality") {
    report = pi_inequality_scan(g.seed, o.trials.value_or(1000), parse_flavor(o.flavor));
  } else {
    throw ValidationError("unknown check '" + o.check + "'");
  }
  emit_report(report, g, out);
  for (const auto& dump : report.dumps) err << "counterexample candidate: " << dump << '\n';
  return report.pass ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermionic negativity toolkit", "fneg_cli"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  double tolerance = 0.0;
  auto* tol_opt = app.add_option("--tolerance", tolerance, "Acceptance / zero threshold")
                      ->envname("FNEG_TOLERANCE")
                      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Base seed")->envname("FNEG_SEED");
  app.add_option("--output", g.output, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string table;
  auto* reproduce = app.add_subcommand("reproduce", "Closed-form values and pure three-mode classes");
  reproduce->add_option("table", table)->required()->check(CLI::IsMember({"paper-values", "table1"}));

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep as CSV");
  sweep->add_option("family", sweep_opts.family)->required()->check(CLI::IsMember({"werner", "psi_p"}));
  sweep->add_option("--min", sweep_opts.min);
  sweep->add_option("--max", sweep_opts.max);
  sweep->add_option("--steps", sweep_opts.steps);
  sweep->add_option("--measures", sweep_opts.measures)->delimiter(',');
  sweep->add_option("--flavor", sweep_opts.flavor)->check(CLI::IsMember({"fermionic", "bosonic"}));
  sweep->add_flag("--normalized", sweep_opts.normalized);

  std::string state_path;
  auto* classify = app.add_subcommand("classify", "Classify a state file");
  classify->add_option("file", state_path)->required();

  VerifyOptions verify_opts;
  int trials = 0;
  auto* verify = app.add_subcommand("verify", "Randomised property checks");
  verify->add_option("check", verify_opts.check)
      ->required()
      ->check(CLI::IsMember({"identities", "locc", "perturbation", "conjecture", "pi-inequality"}));
  auto* trials_opt = verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--modes", verify_opts.modes)->delimiter(',');
  verify->add_option("--epsilons", verify_opts.epsilons)->delimiter(',');
  verify->add_option("--flavor", verify_opts.flavor)->check(CLI::IsMember({"fermionic", "bosonic"}));

  std::vector<std::string> argv_store{"fneg_cli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  if (tol_opt->count() > 0) g.tolerance = tolerance;
  if (trials_opt->count() > 0) verify_opts.trials = trials;

  try {
    if (*reproduce) return cmd_reproduce(table, g, out);
    if (*sweep) return cmd_sweep(sweep_opts, g, out);
    if (*classify) return cmd_classify(state_path, g, out);
    if (*verify) return cmd_verify(verify_opts, g, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace fneg::cli
