#include "oracles.hpp"

#include "fneg/kernels.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace fneg;
using fneg::testing::max_diff;
using fneg::testing::random_even_operator;

TEST(Kernels, FermionicLeadingMatchesReference) {
  for (int n = 1; n <= 6; ++n)
    for (int ma = 1; ma <= n; ++ma) {
      const Matrix rho = random_even_operator(n, 10 * n + ma);
      EXPECT_LE(max_diff(kernels::fermionic_pt_leading(rho, n, ma),
                         kernels::reference::fermionic_pt_leading(rho, n, ma)),
                1e-14)
          << n << ' ' << ma;
    }
}

TEST(Kernels, MajoranaMatchesReference) {
  for (int n = 1; n <= 4; ++n) {
    const Matrix rho = random_even_operator(n, 40 + n);
    for (BasisIndex mask = 1; mask < (BasisIndex{1} << n); ++mask)
      EXPECT_LE(max_diff(kernels::fermionic_pt_majorana(rho, n, mask),
                         kernels::reference::fermionic_pt_majorana(rho, n, mask)),
                1e-13);
  }
}

TEST(Kernels, BosonicMatchesReference) {
  const Matrix rho = random_even_operator(5, 3);
  for (BasisIndex mask = 1; mask < 32; ++mask)
    EXPECT_EQ(max_diff(kernels::bosonic_pt(rho, mask), kernels::reference::bosonic_pt(rho, mask)), 0.0);
}

TEST(Kernels, PermuteMatchesReference) {
  std::mt19937 gen(5);
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int rep = 0; rep < 5; ++rep) {
      std::shuffle(order.begin(), order.end(), gen);
      const Matrix op = random_even_operator(n, 100 * n + rep);
      EXPECT_LE(max_diff(kernels::permute_modes(op, order), kernels::reference::permute_modes(op, order)),
                1e-15);
    }
  }
}

TEST(Kernels, PartialTraceMatchesReference) {
  for (int n = 1; n <= 6; ++n)
    for (int keep = 0; keep <= n; ++keep) {
      const Matrix op = random_even_operator(n, 7 * n + keep);
      EXPECT_LE(max_diff(kernels::partial_trace_tail(op, keep, n),
                         kernels::reference::partial_trace_tail(op, keep, n)),
                1e-13);
    }
}

TEST(Kernels, OccupationPhaseValues) {
  EXPECT_EQ(kernels::occupation_phase(0, 0, 0, 0), Complex(1, 0));
  EXPECT_EQ(kernels::occupation_phase(1, 0, 1, 0), Complex(0, 1));
  EXPECT_EQ(kernels::occupation_phase(1, 0, 0, 1), Complex(0, 1));
  EXPECT_EQ(kernels::occupation_phase(1, 1, 0, 0), Complex(1, 0));
  EXPECT_EQ(kernels::occupation_phase(0, 0, 1, 1), Complex(1, 0));
  EXPECT_EQ(kernels::occupation_phase(1, 0, 2, 1), Complex(0, 1));
  EXPECT_EQ(kernels::occupation_phase(1, 0, 0, 0), Complex(0, -1));
}

TEST(Kernels, ReorderSignCountsInversions) {
  const std::vector<int> swap = {1, 0};
  EXPECT_EQ(kernels::reorder_sign(0b11, swap), -1);
  EXPECT_EQ(kernels::reorder_sign(0b01, swap), 1);
  EXPECT_EQ(kernels::reorder_index(0b01, swap), 0b10U);
  const std::vector<int> cycle = {1, 2, 0};
  EXPECT_EQ(kernels::reorder_sign(0b111, cycle), 1);
  EXPECT_EQ(kernels::reorder_sign(0b101, cycle), -1);
}
