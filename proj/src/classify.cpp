#include "fneg/classify.hpp"

#include "fneg/measures.hpp"

#include <cmath>
#include <sstream>

namespace fneg {

namespace {

bool near_threshold(double value, const ClassifyOptions& opts) {
  return value > opts.zero_threshold / opts.marginal_factor &&
         value <= opts.zero_threshold * opts.marginal_factor;
}

ClassLabel table_one(double na, double nb, double nc, double j, const ClassifyOptions& opts) {
  ClassLabel out;
  out.threshold = opts.zero_threshold;
  out.witnesses = {{"N_A(BC)", na}, {"N_B(AC)", nb}, {"N_C(AB)", nc}, {"J_ABC", j}};
  for (const auto& [k, v] : out.witnesses) out.marginal = out.marginal || near_threshold(v, opts);
  const bool a = na > opts.zero_threshold;
  const bool b = nb > opts.zero_threshold;
  const bool c = nc > opts.zero_threshold;
  const bool g = j > opts.zero_threshold;
  if (!a && !b && !c && !g) out.kind = ClassKind::a_b_c;
  else if (!a && b && c && !g) out.kind = ClassKind::a_bc;
  else if (a && !b && c && !g) out.kind = ClassKind::b_ac;
  else if (a && b && !c && !g) out.kind = ClassKind::c_ab;
  else if (a && b && c && !g) out.kind = ClassKind::w;
  else if (a && b && c && g) out.kind = ClassKind::ghz;
  else {
    std::ostringstream msg;
    msg << "witness pattern (" << na << ", " << nb << ", " << nc << ", " << j
        << ") matches no pure-state class";
    throw InconsistencyError(msg.str());
  }
  return out;
}

}  // namespace

std::string ClassLabel::name() const {
  switch (kind) {
    case ClassKind::a_b_c: return "A-B-C";
    case ClassKind::a_bc: return "A-BC";
    case ClassKind::b_ac: return "B-AC";
    case ClassKind::c_ab: return "C-AB";
    case ClassKind::w: return "W";
    case ClassKind::ghz: return "GHZ";
    case ClassKind::separable: return "separable";
    case ClassKind::inseparable: return "inseparable";
    case ClassKind::fully_separable: return "fully_separable";
    case ClassKind::biseparable: return "biseparable(" + part + ")";
    case ClassKind::inseparable_mixed: return "inseparable";
  }
  return "unknown";
}

std::string to_string(ParityType type) { return type == ParityType::type_I ? "type_I" : "type_II"; }

double max_off_diagonal(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c) worst = std::max(worst, std::abs(m(r, c)));
  return worst;
}

ClassLabel two_mode_separable(const FockOperator& rho, const ClassifyOptions& opts) {
  if (rho.num_modes() != 2) throw ValidationError("two_mode_separable needs two modes");
  const double n = negativity(rho, SubsystemSpec{0});
  const double off = max_off_diagonal(rho.matrix());
  const bool neg_sep = n <= opts.zero_threshold;
  const bool struct_sep = off <= opts.structural_threshold;

  ClassLabel out;
  out.kind = neg_sep ? ClassKind::separable : ClassKind::inseparable;
  out.threshold = opts.zero_threshold;
  out.witnesses = {{"negativity", n}, {"off_diagonal", off}};
  out.marginal = near_threshold(n, opts);
  if (neg_sep != struct_sep) {
    // The negativity is second order in the off-diagonal elements.
    const bool in_band = neg_sep ? off * off <= opts.marginal_factor * opts.zero_threshold
                                 : n <= opts.marginal_factor * opts.zero_threshold;
    if (!in_band) {
      std::ostringstream msg;
      msg << "two-mode tests disagree: negativity " << n << ", off-diagonal " << off;
      throw InconsistencyError(msg.str());
    }
    out.marginal = true;
  }
  return out;
}

ClassLabel pure3_class(const PureCoeffs& psi, const ClassifyOptions& opts) {
  if (psi.num_modes() != 3) throw ValidationError("pure3_class needs three-mode coefficients");
  return pure3_class(psi.density(), opts);
}

ClassLabel pure3_class(const FockOperator& rho, const ClassifyOptions& opts) {
  if (rho.num_modes() != 3) throw ValidationError("pure3_class needs three modes");
  require_density_matrix(rho, true, "pure3_class");
  if (!is_pure(rho)) throw ValidationError("pure3_class: state is mixed");
  const TripartiteNegativities t = tripartite_negativities(rho, Flavor::fermionic, false);
  const double j = j_abc(rho).value;
  return table_one(t.n_a_bc, t.n_b_ac, t.n_c_ab, j, opts);
}

ClassLabel mixed3_classify(const FockOperator& rho, const ClassifyOptions& opts) {
  if (rho.num_modes() != 3) throw ValidationError("mixed3_classify needs three modes");
  require_density_matrix(rho, true, "mixed3_classify");
  const TripartiteNegativities t = tripartite_negativities(rho, Flavor::fermionic, false);
  const auto parties = rho.layout().parties();
  const double vals[3] = {t.n_a_bc, t.n_b_ac, t.n_c_ab};

  ClassLabel out;
  out.threshold = opts.zero_threshold;
  out.witnesses = {{"N_A(BC)", t.n_a_bc}, {"N_B(AC)", t.n_b_ac}, {"N_C(AB)", t.n_c_ab},
                   {"J_ABC", j_abc(rho).value}};
  int zeros = 0;
  int zero_at = -1;
  for (int k = 0; k < 3; ++k) {
    out.marginal = out.marginal || near_threshold(vals[k], opts);
    if (vals[k] <= opts.zero_threshold) {
      ++zeros;
      zero_at = k;
    }
  }
  if (zeros >= 2) {
    out.kind = ClassKind::fully_separable;
    // Two zeros force the third; a positive third is flagged.
    if (zeros == 2) out.marginal = true;
  } else if (zeros == 1) {
    out.kind = ClassKind::biseparable;
    out.part = parties[static_cast<std::size_t>(zero_at)];
  } else {
    out.kind = ClassKind::inseparable_mixed;
  }
  return out;
}

ParityTypeResult subsystem_parity_type(const FockOperator& rho, const SubsystemSpec& spec,
                                       double threshold) {
  spec.validate(rho.layout());
  ParityTypeResult out;
  out.commutator_norm = parity_commutator_norm(rho.matrix(), spec.mask());
  out.type = out.commutator_norm <= threshold ? ParityType::type_I : ParityType::type_II;
  return out;
}

}  // namespace fneg
