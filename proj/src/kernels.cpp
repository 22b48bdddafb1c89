#include "fneg/kernels.hpp"

#include "fneg/fock.hpp"

#include <bit>
#include <vector>

namespace fneg::kernels {

namespace {

using Idx = Eigen::Index;

inline int popparity(BasisIndex x) { return std::popcount(x) & 1; }

inline Complex occupation_phase(BasisIndex r, BasisIndex c, BasisIndex mask_a) {
  return fneg::kernels::occupation_phase(std::popcount(r & mask_a), std::popcount(c & mask_a),
                                         std::popcount(r & ~mask_a), std::popcount(c & ~mask_a));
}

// U_A |n> = sign[n_A] |n ^ mask_A> with U_A = c_0 c_2 ... c_{2(m_A-1)}.
std::vector<double> ua_signs(int num_modes, int m_a) {
  std::uint64_t monomial = 0;
  for (int j = 0; j < m_a; ++j) monomial |= std::uint64_t{1} << (2 * j);
  std::vector<double> sign(std::size_t{1} << m_a);
  for (BasisIndex n = 0; n < sign.size(); ++n)
    sign[n] = apply_majorana_monomial(monomial, n, num_modes).amplitude.real();
  return sign;
}

void check_modes(int num_modes, Idx rows) {
  if (num_modes < 1 || num_modes > 30 || (Idx{1} << num_modes) != rows)
    throw ValidationError("matrix dimension does not match number of modes");
}

std::uint64_t majorana_mask_of_modes(BasisIndex mode_mask, int num_modes) {
  std::uint64_t m = 0;
  for (int j = 0; j < num_modes; ++j)
    if ((mode_mask >> j) & 1) m |= std::uint64_t{3} << (2 * j);
  return m;
}

// i^k for k mod 4.
inline Complex ipow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Monomial sets that flip exactly the modes in `flip`, enumerated by t in [0, 2^N).
inline std::uint64_t monomial_for_flip(BasisIndex flip, std::uint64_t t, int num_modes) {
  std::uint64_t s = 0;
  for (int j = 0; j < num_modes; ++j) {
    const bool pick = (t >> j) & 1;
    if ((flip >> j) & 1)
      s |= std::uint64_t{1} << (2 * j + (pick ? 1 : 0));
    else if (pick)
      s |= std::uint64_t{3} << (2 * j);
  }
  return s;
}

constexpr int kMaxMajoranaModes = 10;

}  // namespace

Complex occupation_phase(int tau_a, int tau_bar_a, int tau_b, int tau_bar_b) {
  const int ta = tau_a + tau_bar_a;
  const int tb = tau_b + tau_bar_b;
  Complex ph = (ta & 1) ? Complex(0.0, -1.0) : Complex(1.0, 0.0);
  if ((ta * tb) & 1) ph = -ph;
  return ph;
}

int reorder_sign(BasisIndex state, std::span<const int> new_order) {
  // Count pairs of occupied modes whose relative order is reversed.
  int inversions = 0;
  const int n = static_cast<int>(new_order.size());
  for (int k = 0; k < n; ++k) {
    if (!((state >> new_order[static_cast<std::size_t>(k)]) & 1)) continue;
    for (int l = k + 1; l < n; ++l) {
      const int ol = new_order[static_cast<std::size_t>(l)];
      if (((state >> ol) & 1) && ol < new_order[static_cast<std::size_t>(k)]) ++inversions;
    }
  }
  return (inversions & 1) ? -1 : 1;
}

BasisIndex reorder_index(BasisIndex state, std::span<const int> new_order) {
  BasisIndex out = 0;
  for (std::size_t k = 0; k < new_order.size(); ++k)
    if ((state >> new_order[k]) & 1) out |= BasisIndex{1} << k;
  return out;
}

// ---------------------------------------------------------------- parallel

Matrix fermionic_pt_leading(const Matrix& rho, int num_modes, int m_a) {
  check_modes(num_modes, rho.rows());
  const Idx dim = rho.rows();
  const BasisIndex mask = (BasisIndex{1} << m_a) - 1;
  const std::vector<double> sign = ua_signs(num_modes, m_a);
  Matrix out(dim, dim);
#pragma omp parallel for schedule(static)
  for (Idx x = 0; x < dim; ++x) {
    const auto ux = static_cast<BasisIndex>(x);
    for (Idx y = 0; y < dim; ++y) {
      const auto uy = static_cast<BasisIndex>(y);
      const BasisIndex r = ((uy ^ mask) & mask) | (ux & ~mask);
      const BasisIndex c = ((ux ^ mask) & mask) | (uy & ~mask);
      out(x, y) = sign[ux & mask] * sign[uy & mask] * occupation_phase(r, c, mask) *
                  rho(static_cast<Idx>(r), static_cast<Idx>(c));
    }
  }
  return out;
}

Matrix fermionic_pt_majorana(const Matrix& rho, int num_modes, BasisIndex mode_mask) {
  check_modes(num_modes, rho.rows());
  if (num_modes > kMaxMajoranaModes)
    throw ValidationError("Majorana expansion limited to 10 modes");
  const Idx dim = rho.rows();
  const std::uint64_t n_monomials = std::uint64_t{1} << (2 * num_modes);
  const std::uint64_t a_majoranas = majorana_mask_of_modes(mode_mask, num_modes);

  // Coefficient of each even monomial, already multiplied by i^{k1}.
  std::vector<Complex> coef(n_monomials, Complex(0.0, 0.0));
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t si = 0; si < static_cast<std::int64_t>(n_monomials); ++si) {
    const auto s = static_cast<std::uint64_t>(si);
    if (std::popcount(s) & 1) continue;
    Complex acc(0.0, 0.0);
    for (Idx n = 0; n < dim; ++n) {
      const BasisImage img = apply_majorana_monomial(s, static_cast<BasisIndex>(n), num_modes);
      acc += std::conj(img.amplitude) * rho(static_cast<Idx>(img.state), n);
    }
    coef[s] = acc / static_cast<double>(dim) * ipow(std::popcount(s & a_majoranas));
  }

  Matrix out(dim, dim);
  const std::uint64_t choices = std::uint64_t{1} << num_modes;
#pragma omp parallel for schedule(static)
  for (Idx r = 0; r < dim; ++r) {
    for (Idx c = 0; c < dim; ++c) {
      const BasisIndex flip = static_cast<BasisIndex>(r ^ c);
      if (popparity(flip)) {
        out(r, c) = 0.0;
        continue;
      }
      Complex acc(0.0, 0.0);
      for (std::uint64_t t = 0; t < choices; ++t) {
        const std::uint64_t s = monomial_for_flip(flip, t, num_modes);
        if (coef[s] == Complex(0.0, 0.0)) continue;
        acc += coef[s] *
               apply_majorana_monomial(s, static_cast<BasisIndex>(c), num_modes).amplitude;
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix bosonic_pt(const Matrix& rho, BasisIndex mask) {
  const Idx dim = rho.rows();
  Matrix out(dim, dim);
#pragma omp parallel for schedule(static)
  for (Idx x = 0; x < dim; ++x) {
    const auto ux = static_cast<BasisIndex>(x);
    for (Idx y = 0; y < dim; ++y) {
      const auto uy = static_cast<BasisIndex>(y);
      const BasisIndex r = (uy & mask) | (ux & ~mask);
      const BasisIndex c = (ux & mask) | (uy & ~mask);
      out(x, y) = rho(static_cast<Idx>(r), static_cast<Idx>(c));
    }
  }
  return out;
}

Matrix permute_modes(const Matrix& op, std::span<const int> new_order) {
  const int n = static_cast<int>(new_order.size());
  check_modes(n, op.rows());
  const Idx dim = op.rows();
  // Inverse map: new index -> (old index, sign).
  std::vector<Idx> old_of(static_cast<std::size_t>(dim));
  std::vector<double> sign(static_cast<std::size_t>(dim));
  for (Idx old = 0; old < dim; ++old) {
    const BasisIndex nw = reorder_index(static_cast<BasisIndex>(old), new_order);
    old_of[nw] = old;
    sign[nw] = reorder_sign(static_cast<BasisIndex>(old), new_order);
  }
  Matrix out(dim, dim);
#pragma omp parallel for schedule(static)
  for (Idx c = 0; c < dim; ++c) {
    const Idx oc = old_of[static_cast<std::size_t>(c)];
    const double sc = sign[static_cast<std::size_t>(c)];
    for (Idx r = 0; r < dim; ++r)
      out(r, c) = sign[static_cast<std::size_t>(r)] * sc * op(old_of[static_cast<std::size_t>(r)], oc);
  }
  return out;
}

Matrix partial_trace_tail(const Matrix& op, int keep_modes, int num_modes) {
  check_modes(num_modes, op.rows());
  const Idx keep = Idx{1} << keep_modes;
  const Idx tail = Idx{1} << (num_modes - keep_modes);
  Matrix out(keep, keep);
#pragma omp parallel for schedule(static)
  for (Idx b = 0; b < keep; ++b) {
    for (Idx a = 0; a < keep; ++a) {
      Complex acc(0.0, 0.0);
      for (Idx t = 0; t < tail; ++t) acc += op(a + t * keep, b + t * keep);
      out(a, b) = acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------- serial

namespace reference {

Matrix fermionic_pt_leading(const Matrix& rho, int num_modes, int m_a) {
  check_modes(num_modes, rho.rows());
  const Idx dim = rho.rows();
  const BasisIndex mask = (BasisIndex{1} << m_a) - 1;

  // Occupation rule: |n_A n_B><nbar_A nbar_B| -> phase |nbar_A n_B><n_A nbar_B|.
  Matrix swapped = Matrix::Zero(dim, dim);
  for (Idx r = 0; r < dim; ++r) {
    for (Idx c = 0; c < dim; ++c) {
      const auto ur = static_cast<BasisIndex>(r);
      const auto uc = static_cast<BasisIndex>(c);
      const BasisIndex nr = (uc & mask) | (ur & ~mask);
      const BasisIndex nc = (ur & mask) | (uc & ~mask);
      swapped(static_cast<Idx>(nr), static_cast<Idx>(nc)) =
          occupation_phase(ur, uc, mask) * rho(r, c);
    }
  }

  // U_A^dag R U_A with U_A built as an explicit matrix.
  std::uint64_t monomial = 0;
  for (int j = 0; j < m_a; ++j) monomial |= std::uint64_t{1} << (2 * j);
  Matrix ua = Matrix::Zero(dim, dim);
  for (Idx n = 0; n < dim; ++n) {
    const BasisImage img = apply_majorana_monomial(monomial, static_cast<BasisIndex>(n), num_modes);
    ua(static_cast<Idx>(img.state), n) = img.amplitude;
  }
  return ua.adjoint() * swapped * ua;
}

Matrix fermionic_pt_majorana(const Matrix& rho, int num_modes, BasisIndex mode_mask) {
  check_modes(num_modes, rho.rows());
  if (num_modes > kMaxMajoranaModes)
    throw ValidationError("Majorana expansion limited to 10 modes");
  const Idx dim = rho.rows();
  const std::uint64_t a_majoranas = majorana_mask_of_modes(mode_mask, num_modes);
  Matrix out = Matrix::Zero(dim, dim);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << (2 * num_modes)); ++s) {
    if (std::popcount(s) & 1) continue;
    std::vector<BasisImage> images(static_cast<std::size_t>(dim));
    Complex coef(0.0, 0.0);
    for (Idx n = 0; n < dim; ++n) {
      images[static_cast<std::size_t>(n)] =
          apply_majorana_monomial(s, static_cast<BasisIndex>(n), num_modes);
      const BasisImage& img = images[static_cast<std::size_t>(n)];
      coef += std::conj(img.amplitude) * rho(static_cast<Idx>(img.state), n);
    }
    coef = coef / static_cast<double>(dim) * ipow(std::popcount(s & a_majoranas));
    for (Idx n = 0; n < dim; ++n) {
      const BasisImage& img = images[static_cast<std::size_t>(n)];
      out(static_cast<Idx>(img.state), n) += coef * img.amplitude;
    }
  }
  return out;
}

Matrix bosonic_pt(const Matrix& rho, BasisIndex mask) {
  const Idx dim = rho.rows();
  Matrix out(dim, dim);
  for (Idx r = 0; r < dim; ++r) {
    for (Idx c = 0; c < dim; ++c) {
      const auto ur = static_cast<BasisIndex>(r);
      const auto uc = static_cast<BasisIndex>(c);
      out(static_cast<Idx>((uc & mask) | (ur & ~mask)), static_cast<Idx>((ur & mask) | (uc & ~mask))) =
          rho(r, c);
    }
  }
  return out;
}

Matrix permute_modes(const Matrix& op, std::span<const int> new_order) {
  const int n = static_cast<int>(new_order.size());
  check_modes(n, op.rows());
  const Idx dim = op.rows();
  Matrix v = Matrix::Zero(dim, dim);
  for (Idx old = 0; old < dim; ++old)
    v(static_cast<Idx>(reorder_index(static_cast<BasisIndex>(old), new_order)), old) =
        reorder_sign(static_cast<BasisIndex>(old), new_order);
  return v * op * v.adjoint();
}

Matrix partial_trace_tail(const Matrix& op, int keep_modes, int num_modes) {
  check_modes(num_modes, op.rows());
  const Idx keep = Idx{1} << keep_modes;
  Matrix out = Matrix::Zero(keep, keep);
  for (Idx r = 0; r < op.rows(); ++r)
    for (Idx c = 0; c < op.cols(); ++c)
      if (r / keep == c / keep) out(r % keep, c % keep) += op(r, c);
  return out;
}

}  // namespace reference

}  // namespace fneg::kernels
