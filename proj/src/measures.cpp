#include "fneg/measures.hpp"

#include "fneg/ptranspose.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <functional>
#include <cmath>

namespace fneg {

namespace {

constexpr double kSpectrumFloor = 1e-13;

struct ThreeParties {
  SubsystemSpec a;
  SubsystemSpec b;
  SubsystemSpec c;
  std::vector<std::string> labels;
};

ThreeParties three_parties(const ModeLayout& layout) {
  const auto parties = layout.parties();
  if (parties.size() != 3)
    throw ValidationError("tripartite measure needs a layout with exactly three parties, got " +
                          std::to_string(parties.size()));
  return {layout.modes_of(parties[0]), layout.modes_of(parties[1]), layout.modes_of(parties[2]),
          parties};
}

SubsystemSpec join(const SubsystemSpec& x, const SubsystemSpec& y) {
  std::vector<int> modes = x.modes();
  modes.insert(modes.end(), y.modes().begin(), y.modes().end());
  std::sort(modes.begin(), modes.end());
  return SubsystemSpec(std::move(modes));
}

std::vector<double> abs_eigenvalues(const Matrix& h) {
  const Matrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    out.push_back(std::abs(solver.eigenvalues()(k)));
  return out;
}

std::vector<double> spectrum(const FockOperator& rho) {
  const Matrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Negativity of a two-party reduced state, transposing the party `label`.
double reduced_negativity(const FockOperator& reduced, const std::string& label, Flavor flavor) {
  return negativity(reduced, reduced.layout().modes_of(label), flavor);
}

}  // namespace

double MeasureReport::at(const std::string& name) const {
  const auto it = entries.find(name);
  if (it == entries.end()) throw ValidationError("report has no entry '" + name + "'");
  return it->second;
}

std::vector<double> singular_values(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
    std::vector<double> out = abs_eigenvalues(m);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }
  // Hermitian dilation [[0, M], [M^dag, 0]] has eigenvalues +-s_k.
  const Eigen::Index r = m.rows();
  const Eigen::Index c = m.cols();
  Matrix dil = Matrix::Zero(r + c, r + c);
  dil.topRightCorner(r, c) = m;
  dil.bottomLeftCorner(c, r) = m.adjoint();
  std::vector<double> all = abs_eigenvalues(dil);
  std::sort(all.begin(), all.end(), std::greater<>());
  std::vector<double> out;
  for (std::size_t k = 0; k < all.size(); k += 2) out.push_back(0.5 * (all[k] + all[k + 1]));
  out.resize(static_cast<std::size_t>(std::min(r, c)));
  return out;
}

double trace_norm(const Matrix& m) {
  double total = 0.0;
  for (double s : singular_values(m)) total += s;
  return total;
}

double trace_norm(const FockOperator& op) { return trace_norm(op.matrix()); }

std::vector<double> pt_singular_values(const FockOperator& rho, const SubsystemSpec& spec,
                                       Flavor flavor) {
  Matrix x = partial_transpose(rho, spec, flavor).matrix();
  if (flavor == Flavor::bosonic) return singular_values(x);
  // X^dag = P X P with P = (-1)^{F_A}, so X P is Hermitian with the same singular values.
  const BasisIndex mask = spec.mask();
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    if (std::popcount(static_cast<BasisIndex>(c) & mask) & 1) x.col(c) *= -1.0;
  return singular_values(x);
}

MeasureReport negativity_report(const FockOperator& rho, const SubsystemSpec& spec, Flavor flavor,
                                double tolerance) {
  require_density_matrix(rho, flavor == Flavor::fermionic, "negativity");
  double norm = 0.0;
  for (double s : pt_singular_values(rho, spec, flavor)) norm += s;
  MeasureReport report;
  report.tolerance = tolerance;
  report.flavor = flavor;
  report.entries["trace_norm"] = norm;
  report.entries["negativity"] = (norm - 1.0) / 2.0;
  report.entries["log_negativity"] = std::log(norm);
  return report;
}

double negativity(const FockOperator& rho, const SubsystemSpec& spec, Flavor flavor) {
  return negativity_report(rho, spec, flavor).at("negativity");
}

double log_negativity(const FockOperator& rho, const SubsystemSpec& spec, Flavor flavor) {
  return negativity_report(rho, spec, flavor).at("log_negativity");
}

double pt_moment(const FockOperator& rho, const SubsystemSpec& spec, int n, Flavor flavor) {
  if (n < 1) throw ValidationError("pt_moment order must be >= 1");
  require_density_matrix(rho, flavor == Flavor::fermionic, "pt_moment");
  if (n % 2 == 0) {
    double total = 0.0;
    for (double s : pt_singular_values(rho, spec, flavor))
      if (s >= kSpectrumFloor) total += std::pow(s, n);
    return std::log(total);
  }
  const Matrix x = partial_transpose(rho, spec, flavor).matrix();
  const Matrix xd = x.adjoint();
  Matrix product = x;
  for (int k = 1; k < n; ++k) product = product * ((k % 2 == 1) ? xd : x);
  return std::log(std::abs(product.trace()));
}

EntropyOrder EntropyOrder::renyi(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("Renyi order must be positive");
  if (alpha == 1.0) throw ValidationError("Renyi order 1 is the von Neumann entropy; use vn()");
  return {false, alpha};
}

double entropy(const FockOperator& rho, EntropyOrder order) {
  require_density_matrix(rho, false, "entropy");
  const std::vector<double> ev = spectrum(rho);
  if (order.von_neumann) {
    double s = 0.0;
    for (double l : ev)
      if (l > kSpectrumFloor) s -= l * std::log(l);
    return s;
  }
  double total = 0.0;
  for (double l : ev)
    if (l > kSpectrumFloor) total += std::pow(l, order.alpha);
  return std::log(total) / (1.0 - order.alpha);
}

double mutual_information(const FockOperator& rho, const SubsystemSpec& spec, EntropyOrder order) {
  const SubsystemSpec rest = rho.layout().complement(spec);
  return entropy(partial_trace(rho, spec), order) + entropy(partial_trace(rho, rest), order) -
         entropy(rho, order);
}

JResult j_abc(const FockOperator& rho, const SubsystemSpec& pair, const SubsystemSpec& third,
              Flavor flavor) {
  pair.validate(rho.layout());
  third.validate(rho.layout());
  for (int m : pair.modes())
    if (third.contains(m)) throw ValidationError("j_abc: pair and third overlap");
  if (pair.size() + third.size() != static_cast<std::size_t>(rho.num_modes()))
    throw ValidationError("j_abc: pair and third must cover every mode");
  require_density_matrix(rho, flavor == Flavor::fermionic, "j_abc");

  const std::string a_label = rho.layout().label(pair.modes().front());
  JResult out;
  bool empty = false;
  for (Sector s : {Sector::even, Sector::odd}) {
    const ParityProjection proj = parity_project(rho, third, s);
    double n = 0.0;
    if (proj.state) {
      const FockOperator reduced = trace_out(*proj.state, third);
      n = reduced_negativity(reduced, a_label, flavor);
    } else {
      empty = true;
    }
    if (s == Sector::even) {
      out.n_even = n;
      out.weight_even = proj.weight;
    } else {
      out.n_odd = n;
      out.weight_odd = proj.weight;
    }
  }
  out.degenerate = empty;
  out.value = empty ? 0.0 : out.n_even * out.n_odd;
  return out;
}

JResult j_abc(const FockOperator& rho, Flavor flavor) {
  const ThreeParties p = three_parties(rho.layout());
  return j_abc(rho, join(p.a, p.b), p.c, flavor);
}

Complex cayley_hdet(const Hypermatrix& a) {
  auto at = [&](int i, int j, int k) { return a[static_cast<std::size_t>(i + 2 * j + 4 * k)]; };
  const Complex a000 = at(0, 0, 0), a001 = at(0, 0, 1), a010 = at(0, 1, 0), a011 = at(0, 1, 1);
  const Complex a100 = at(1, 0, 0), a101 = at(1, 0, 1), a110 = at(1, 1, 0), a111 = at(1, 1, 1);
  return a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
         a100 * a100 * a011 * a011 -
         2.0 * (a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 +
                a000 * a100 * a011 * a111 + a001 * a010 * a101 * a110 +
                a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101) +
         4.0 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111);
}

Hypermatrix amplitudes_of(const Vector& psi) {
  if (psi.size() != 8) throw ValidationError("hypermatrix needs a three-mode state");
  Hypermatrix a{};
  for (int n = 0; n < 8; ++n) a[static_cast<std::size_t>(n)] = psi(n);
  return a;
}

bool is_pure(const FockOperator& rho, double tolerance) {
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  return std::abs(purity - 1.0) <= tolerance;
}

Hypermatrix amplitudes_of(const FockOperator& pure) {
  if (pure.num_modes() != 3) throw ValidationError("hypermatrix needs a three-mode state");
  require_density_matrix(pure, false, "three_tangle");
  if (!is_pure(pure)) throw ValidationError("three_tangle: state is not pure");
  Eigen::Index k = 0;
  pure.matrix().diagonal().real().maxCoeff(&k);
  const Vector psi = pure.matrix().col(k) / std::sqrt(pure.matrix()(k, k).real());
  return amplitudes_of(psi);
}

double three_tangle(const Hypermatrix& a) { return std::abs(cayley_hdet(a)); }

double three_tangle(const FockOperator& pure) { return three_tangle(amplitudes_of(pure)); }

double TripartiteNegativities::n_abc() const {
  const double prod = std::max(0.0, n_a_bc) * std::max(0.0, n_b_ac) * std::max(0.0, n_c_ab);
  return std::cbrt(prod);
}

TripartiteNegativities tripartite_negativities(const FockOperator& rho, Flavor flavor,
                                               bool with_pairs) {
  const ThreeParties p = three_parties(rho.layout());
  TripartiteNegativities t;
  t.n_a_bc = negativity(rho, p.a, flavor);
  t.n_b_ac = negativity(rho, p.b, flavor);
  t.n_c_ab = negativity(rho, p.c, flavor);
  if (with_pairs) {
    t.n_ab = reduced_negativity(trace_out(rho, p.c), p.labels[0], flavor);
    t.n_ac = reduced_negativity(trace_out(rho, p.b), p.labels[0], flavor);
    t.n_bc = reduced_negativity(trace_out(rho, p.a), p.labels[1], flavor);
  }
  return t;
}

double n_abc(const FockOperator& rho, Flavor flavor) {
  return tripartite_negativities(rho, flavor, false).n_abc();
}

double pi_abc(const FockOperator& rho, Flavor flavor) {
  return tripartite_negativities(rho, flavor).pi_abc();
}

MeasureReport tripartite_report(const FockOperator& rho, Flavor flavor, double tolerance) {
  const TripartiteNegativities t = tripartite_negativities(rho, flavor);
  MeasureReport r;
  r.tolerance = tolerance;
  r.flavor = flavor;
  r.entries["N_A(BC)"] = t.n_a_bc;
  r.entries["N_B(AC)"] = t.n_b_ac;
  r.entries["N_C(AB)"] = t.n_c_ab;
  r.entries["N_AB"] = t.n_ab;
  r.entries["N_AC"] = t.n_ac;
  r.entries["N_BC"] = t.n_bc;
  r.entries["N_ABC"] = t.n_abc();
  r.entries["pi_A"] = t.pi_a();
  r.entries["pi_B"] = t.pi_b();
  r.entries["pi_C"] = t.pi_c();
  r.entries["pi_ABC"] = t.pi_abc();
  r.entries["J_ABC"] = j_abc(rho, flavor).value;
  if (rho.num_modes() == 3 && is_pure(rho)) r.entries["tau_ABC"] = three_tangle(rho);
  return r;
}

}  // namespace fneg
