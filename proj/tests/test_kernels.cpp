// Copyright 2026 the racim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "racim/kernels.hpp"
#include "racim/rng.hpp"

namespace racim::kernels {
namespace {

std::vector<const KernelTable*> simd_tables() {
  std::vector<const KernelTable*> out;
  if (available(KernelKind::avx2)) out.push_back(avx2_table());
  if (available(KernelKind::neon)) out.push_back(neon_table());
  return out;
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b) ||
         (std::isnan(a) && std::isnan(b));
}

std::vector<double> random_vector(std::size_t n, Rng& rng, double scale) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-scale, scale);
  return v;
}

EulerCoefficients coefficients(double coupling) {
  return {0.01, -0.02, -1.0, 2.0, coupling, 10.0, 1e-12};
}

TEST(KernelDispatchTest, NamesAndSelection) {
  EXPECT_EQ(parse_kind("auto"), KernelKind::automatic);
  EXPECT_EQ(parse_kind("scalar"), KernelKind::scalar);
  EXPECT_EQ(parse_kind("avx2"), KernelKind::avx2);
  EXPECT_EQ(parse_kind("neon"), KernelKind::neon);
  EXPECT_THROW(parse_kind("sse9"), std::invalid_argument);
  EXPECT_EQ(kind_name(KernelKind::scalar), "scalar");
  EXPECT_TRUE(available(KernelKind::scalar));
  EXPECT_TRUE(available(KernelKind::automatic));
  EXPECT_EQ(&select(KernelKind::scalar), &scalar_table());
  if (!available(KernelKind::avx2)) EXPECT_THROW(select(KernelKind::avx2), std::invalid_argument);
  if (!available(KernelKind::neon)) EXPECT_THROW(select(KernelKind::neon), std::invalid_argument);
}

TEST(ScalarKernelTest, CouplingFieldMatchesNaiveSum) {
  Rng rng(1);
  for (std::size_t n : {1u, 2u, 5u, 9u, 33u}) {
    const auto j = random_vector(n * n, rng, 1.0);
    const auto x = random_vector(n, rng, 3.0);
    std::vector<double> field(n);
    scalar_table().coupling_field(j.data(), x.data(), field.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      double want = 0.0;
      for (std::size_t c = 0; c < n; ++c) want += j[i * n + c] * x[c];
      EXPECT_NEAR(field[i], want, 1e-12 * (1.0 + std::abs(want)));
    }
  }
}

TEST(ScalarKernelTest, EulerUpdateMatchesHandFormula) {
  std::vector<double> x{0.1, -0.5, 0.0}, e{1.0, 2.0, 0.5};
  const std::vector<double> field{0.3, -1.0, 2.0};
  const auto c = coefficients(4.0);
  std::vector<double> want_x(3), want_e(3);
  for (std::size_t i = 0; i < 3; ++i) {
    want_x[i] = x[i] + c.dt * (c.gain * x[i] - x[i] * x[i] * x[i] + c.coupling * e[i] * field[i]);
    want_e[i] = e[i] + c.dt * (c.neg_ahc_rate * (x[i] * x[i] - c.target_amplitude) * e[i]);
  }
  scalar_table().euler_update(x.data(), e.data(), field.data(), 3, c);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(x[i], want_x[i], 1e-15);
    EXPECT_NEAR(e[i], want_e[i], 1e-15);
  }
}

TEST(ScalarKernelTest, ClampsAmplitudeAndErrorFloor) {
  std::vector<double> x{9.99, -9.99, 0.0}, e{1.0, 1.0, 1e-13};
  const std::vector<double> field{1e6, -1e6, 0.0};
  scalar_table().euler_update(x.data(), e.data(), field.data(), 3, coefficients(100.0));
  EXPECT_EQ(x[0], 10.0);
  EXPECT_EQ(x[1], -10.0);
  for (double v : e) EXPECT_GE(v, 1e-12);

  std::vector<double> big{3.0}, small{1e-12};
  const std::vector<double> zero{0.0};
  auto c = coefficients(0.0);
  c.dt = 10.0;  // de overshoots to negative
  scalar_table().euler_update(big.data(), small.data(), zero.data(), 1, c);
  EXPECT_EQ(small[0], 1e-12);
}

TEST(SimdKernelTest, CouplingFieldBitwiseEqualToScalar) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD variant on this build/CPU";
  Rng rng(2);
  for (const KernelTable* table : tables) {
    for (std::size_t n = 1; n <= 70; ++n) {
      const auto j = random_vector(n * n, rng, 1.0);
      const auto x = random_vector(n, rng, 10.0);
      std::vector<double> want(n), got(n);
      scalar_table().coupling_field(j.data(), x.data(), want.data(), n);
      table->coupling_field(j.data(), x.data(), got.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        ASSERT_TRUE(same_bits(got[i], want[i])) << table->name << " n=" << n << " i=" << i;
    }
  }
}

TEST(SimdKernelTest, EulerUpdateBitwiseEqualToScalar) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD variant on this build/CPU";
  Rng rng(3);
  for (const KernelTable* table : tables) {
    for (std::size_t n = 1; n <= 70; ++n) {
      auto x = random_vector(n, rng, 12.0);
      auto e = random_vector(n, rng, 3.0);
      for (auto& v : e) v = std::abs(v);
      const auto field = random_vector(n, rng, 5.0);
      const auto c = coefficients(rng.uniform(0.0, 1000.0));
      auto x2 = x, e2 = e;
      scalar_table().euler_update(x.data(), e.data(), field.data(), n, c);
      table->euler_update(x2.data(), e2.data(), field.data(), n, c);
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_TRUE(same_bits(x2[i], x[i])) << table->name << " n=" << n << " i=" << i;
        ASSERT_TRUE(same_bits(e2[i], e[i])) << table->name << " n=" << n << " i=" << i;
      }
    }
  }
}

TEST(SimdKernelTest, NonFiniteValuesPropagateLikeScalar) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<const KernelTable*> tables = simd_tables();
  tables.push_back(&scalar_table());
  for (const KernelTable* table : tables) {
    std::vector<double> x{nan, 0.5, inf, -inf, 0.1, nan, 0.2};
    std::vector<double> e{1.0, nan, 1.0, 1.0, inf, 1.0, 1.0};
    const std::vector<double> field{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, nan};
    table->euler_update(x.data(), e.data(), field.data(), x.size(), coefficients(1.0));
    EXPECT_TRUE(std::isnan(x[0])) << table->name;
    EXPECT_TRUE(std::isnan(e[1])) << table->name;
    EXPECT_TRUE(std::isnan(x[6])) << table->name;
    EXPECT_FALSE(std::isfinite(x[2]) && std::isfinite(e[2])) << table->name;

    std::vector<double> j{1.0, nan, 0.0, 1.0};
    std::vector<double> xv{1.0, 1.0}, field2(2);
    table->coupling_field(j.data(), xv.data(), field2.data(), 2);
    EXPECT_TRUE(std::isnan(field2[0])) << table->name;
    EXPECT_EQ(field2[1], 1.0) << table->name;
  }
}

}  // namespace
}  // namespace racim::kernels
