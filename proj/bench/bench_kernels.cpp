// Wall-clock comparison of the OpenMP kernels against the serial references.
#include "fneg/kernels.hpp"
#include "fneg/states.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, int n, double parallel, double serial, double diff) {
  std::printf("%-22s %3d %12.6f %12.6f %8.2f %10.3g\n", name, n, parallel, serial, serial / parallel,
              diff);
}

}  // namespace

int main(int argc, char** argv) {
  namespace k = fneg::kernels;
  const int max_modes = argc > 1 ? std::atoi(argv[1]) : 9;
#ifdef _OPENMP
  std::printf("threads %d\n", omp_get_max_threads());
#endif
  std::printf("%-22s %3s %12s %12s %8s %10s\n", "kernel", "N", "parallel_s", "serial_s", "speedup",
              "max_diff");
  for (int n = 4; n <= max_modes; ++n) {
    const fneg::Matrix rho = fneg::random_density(fneg::ModeLayout::bipartite(n / 2, n - n / 2), 42).matrix();
    const int reps = n <= 6 ? 20 : 2;
    const int ma = n / 2;
    const fneg::BasisIndex mask = (fneg::BasisIndex{1} << ma) - 1;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.rbegin(), order.rend(), 0);

    fneg::Matrix a, b;
    const double tp = seconds([&] { a = k::fermionic_pt_leading(rho, n, ma); }, reps);
    const double ts = seconds([&] { b = k::reference::fermionic_pt_leading(rho, n, ma); }, reps);
    row("fermionic_pt_leading", n, tp, ts, (a - b).cwiseAbs().maxCoeff());

    const double bp = seconds([&] { a = k::bosonic_pt(rho, mask); }, reps);
    const double bs = seconds([&] { b = k::reference::bosonic_pt(rho, mask); }, reps);
    row("bosonic_pt", n, bp, bs, (a - b).cwiseAbs().maxCoeff());

    const double pp = seconds([&] { a = k::permute_modes(rho, order); }, reps);
    const double ps = seconds([&] { b = k::reference::permute_modes(rho, order); }, reps);
    row("permute_modes", n, pp, ps, (a - b).cwiseAbs().maxCoeff());

    const double rp = seconds([&] { a = k::partial_trace_tail(rho, ma, n); }, reps);
    const double rs = seconds([&] { b = k::reference::partial_trace_tail(rho, ma, n); }, reps);
    row("partial_trace_tail", n, rp, rs, (a - b).cwiseAbs().maxCoeff());

    if (n <= 6) {
      const double mp = seconds([&] { a = k::fermionic_pt_majorana(rho, n, mask); }, 1);
      const double ms = seconds([&] { b = k::reference::fermionic_pt_majorana(rho, n, mask); }, 1);
      row("fermionic_pt_majorana", n, mp, ms, (a - b).cwiseAbs().maxCoeff());
    }
  }
  return 0;
}
