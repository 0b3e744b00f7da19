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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <set>

#include "racim/baselines.hpp"
#include "racim/channel.hpp"
#include "racim/formulation.hpp"
#include "racim/rng.hpp"
#include "oracles.hpp"

namespace racim {
namespace {

RealMatrix real_matrix(std::size_t r, std::size_t c, std::initializer_list<double> v) {
  RealMatrix m(r, c);
  std::copy(v.begin(), v.end(), m.values().begin());
  return m;
}

RealMatrix random_symmetric(std::size_t d, Rng& rng) {
  RealMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) m(i, j) = m(j, i) = rng.uniform(-2.0, 2.0);
  return m;
}

// s0 = [s_aux, s_aux * (2b - 1)]
SpinVector spins_for(const BinaryVector& b, std::int8_t aux) {
  SpinVector s{aux};
  for (auto bit : b) s.push_back(static_cast<std::int8_t>(aux * (bit ? 1 : -1)));
  return s;
}

TEST(GainMatrixTest, Examples) {
  ChannelMatrix one{MimoConfig(1, 1, 1), ComplexMatrix(1, 1), 0};
  one.entries(0, 0) = {0.0, 2.0};
  EXPECT_EQ(build_gain_matrix(one), real_matrix(1, 1, {4.0}));

  ChannelMatrix ch{MimoConfig(1, 1, 2), ComplexMatrix(2, 2), 0};
  ch.entries(0, 1) = 3.0;
  const auto t = build_gain_matrix(ch);
  EXPECT_DOUBLE_EQ(t(1, 0), 9.0);
  EXPECT_DOUBLE_EQ(t(0, 1), 0.0);

  ChannelMatrix zero{MimoConfig(2, 3, 2), ComplexMatrix(6, 4), 0};
  const auto tz = build_gain_matrix(zero);
  EXPECT_EQ(tz.rows(), 4u);
  EXPECT_EQ(tz.cols(), 6u);
  for (double v : tz.values()) EXPECT_EQ(v, 0.0);
}

TEST(QuboTest, Examples) {
  const MimoConfig cfg(1, 1, 1);
  const auto q = build_qubo(real_matrix(1, 1, {4.0}), cfg);
  EXPECT_EQ(q.q, real_matrix(2, 2, {0, 2, 2, 0}));
  EXPECT_DOUBLE_EQ(binary_objective(q, BinaryVector{1, 1}), 4.0);
  EXPECT_DOUBLE_EQ(binary_objective(q, BinaryVector{1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(binary_objective(q, BinaryVector{0, 0}), 0.0);
  EXPECT_THROW(build_qubo(real_matrix(1, 2, {1, 1}), cfg), std::invalid_argument);
}

TEST(QuboTest, SymmetricWithZeroDiagonal) {
  const auto ch = generate_channel(MimoConfig(2, 3, 2), 4);
  const auto q = build_qubo(build_gain_matrix(ch), ch.config).q;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    EXPECT_EQ(q(i, i), 0.0);
    for (std::size_t j = 0; j < q.cols(); ++j) {
      EXPECT_EQ(q(i, j), q(j, i));
      EXPECT_GE(q(i, j), 0.0);
    }
  }
}

TEST(QuboTest, FeasibleValuesMatchChannelObjective) {
  const MimoConfig cfg(2, 2, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ch = generate_channel(cfg, seed);
    const auto q = build_qubo(build_gain_matrix(ch), cfg);
    int feasible = 0;
    for (std::uint64_t code = 0; code < 256; ++code) {
      const auto b = oracle::bits_of(code, cfg.variables());
      if (!oracle::one_hot(b, cfg.n_states())) continue;
      ++feasible;
      const auto sel = oracle::selection_of(b, cfg);
      const double want = oracle::trace_objective(ch, sel);
      EXPECT_NEAR(binary_objective(q, b), want, 1e-12 * std::max(1.0, want));
      EXPECT_EQ(encode(sel, cfg), b);
    }
    EXPECT_EQ(feasible, 16);
  }
}

TEST(ConstraintTest, Examples) {
  const ConstraintSystem single(MimoConfig(1, 1, 2));
  EXPECT_DOUBLE_EQ(constraint_violation(BinaryVector{1, 0, 0, 1}, single), 0.0);
  EXPECT_DOUBLE_EQ(constraint_violation(BinaryVector{1, 1, 0, 1}, single), 1.0);
  EXPECT_DOUBLE_EQ(constraint_violation(BinaryVector{0, 0, 0, 0}, single), 2.0);

  const ConstraintSystem sys(MimoConfig(3, 2, 4));
  EXPECT_DOUBLE_EQ(constraint_violation(BinaryVector(20, 0), sys), 5.0);
}

TEST(ConstraintTest, BlockStructure) {
  const MimoConfig cfg(2, 3, 3);
  const ConstraintSystem sys(cfg);
  EXPECT_EQ(sys.blocks(), 5u);
  EXPECT_EQ(sys.block_size(), 3u);
  const auto& r = sys.r();
  for (std::size_t i = 0; i < r.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < r.cols(); ++j) {
      EXPECT_EQ(r(i, j), (i / 3 == j / 3) ? 1.0 : 0.0);
      row += r(i, j);
    }
    EXPECT_EQ(row, 3.0);
  }
}

TEST(ConstraintTest, ZeroExactlyOnOneHotAndMatchesQuadraticForm) {
  for (const MimoConfig cfg : {MimoConfig(2, 2, 2), MimoConfig(2, 2, 3), MimoConfig(1, 2, 4)}) {
    const ConstraintSystem sys(cfg);
    const std::size_t d = cfg.variables();
    ASSERT_LE(d, 12u);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << d); ++code) {
      const auto b = oracle::bits_of(code, d);
      const double v = constraint_violation(b, sys);
      EXPECT_EQ(v, oracle::block_violation(b, cfg.n_states()));
      EXPECT_EQ(v == 0.0, oracle::one_hot(b, cfg.n_states()));
      double ones = 0.0;
      for (auto bit : b) ones += bit;
      EXPECT_DOUBLE_EQ(v, oracle::quad_form(sys.r(), b) - 2.0 * ones +
                              static_cast<double>(cfg.antennas()));
    }
  }
}

TEST(SpinTransformTest, Examples) {
  const auto form = qubo_to_spin(real_matrix(2, 2, {0, 2, 2, 0}), std::vector<double>{0, 0});
  EXPECT_EQ(form.quadratic, real_matrix(2, 2, {0, 0.5, 0.5, 0}));
  EXPECT_EQ(form.linear, (std::vector<double>{1, 1}));
  EXPECT_DOUBLE_EQ(form.constant, 1.0);
  const std::vector<int> s{1, 1};
  EXPECT_DOUBLE_EQ(oracle::quad_form(form.quadratic, s) + oracle::dot(form.linear, s) + form.constant,
                   4.0);

  const auto zero = qubo_to_spin(RealMatrix(3, 3), std::vector<double>(3, 0.0));
  for (double v : zero.quadratic.values()) EXPECT_EQ(v, 0.0);
  for (double v : zero.linear) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(zero.constant, 0.0);
}

TEST(SpinTransformTest, ConstraintLinearTerm) {
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const MimoConfig cfg(2, 1, n);
    const ConstraintSystem sys(cfg);
    const auto form = qubo_to_spin(sys.r(), std::vector<double>(cfg.variables(), -2.0));
    for (double q : form.linear) EXPECT_DOUBLE_EQ(q, static_cast<double>(n) / 2.0 - 1.0);
  }
}

TEST(SpinTransformTest, AffineEquivalenceExhaustive) {
  Rng rng(3);
  for (std::size_t d : {1u, 4u, 7u, 10u}) {
    const auto q = random_symmetric(d, rng);
    std::vector<double> l(d);
    for (auto& v : l) v = rng.uniform(-1.0, 1.0);
    const auto form = qubo_to_spin(q, l);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << d); ++code) {
      const auto b = oracle::bits_of(code, d);
      const auto s = oracle::spins_of(code, d);
      const double binary = oracle::quad_form(q, b) + oracle::dot(l, b);
      const double spin =
          oracle::quad_form(form.quadratic, s) + oracle::dot(form.linear, s) + form.constant;
      EXPECT_NEAR(spin, binary, 1e-12 * std::max(1.0, std::abs(binary)));
    }
  }
}

TEST(AugmentTest, Example) {
  const auto m = augment_aux(RealMatrix(2, 2), std::vector<double>{1, 1});
  EXPECT_EQ(m, real_matrix(3, 3, {0, .5, .5, .5, 0, 0, .5, 0, 0}));
}

TEST(AugmentTest, FormIdentityAndGauge) {
  Rng rng(17);
  for (std::size_t d : {1u, 3u, 8u}) {
    const auto s_mat = random_symmetric(d, rng);
    std::vector<double> q(d);
    for (auto& v : q) v = rng.uniform(-1.0, 1.0);
    const auto m = augment_aux(s_mat, q);
    ASSERT_EQ(m.rows(), d + 1);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (d + 1)); ++code) {
      const auto s0 = oracle::spins_of(code, d + 1);
      const std::vector<std::int8_t> s(s0.begin() + 1, s0.end());
      const double want = oracle::quad_form(s_mat, s) + s0[0] * oracle::dot(q, s);
      EXPECT_NEAR(oracle::quad_form(m, s0), want, 1e-12 * std::max(1.0, std::abs(want)));
      auto flipped = s0;
      for (auto& v : flipped) v = static_cast<std::int8_t>(-v);
      EXPECT_DOUBLE_EQ(spin_energy(m, flipped), spin_energy(m, s0));
    }
  }
}

TEST(NormalizeTest, Examples) {
  EXPECT_EQ(normalize_couplings(real_matrix(2, 2, {5, 2, 2, 0})), real_matrix(2, 2, {0, 1, 1, 0}));
  const auto n = real_matrix(3, 3, {0, -1, .25, -1, 0, .5, .25, .5, 0});
  EXPECT_EQ(normalize_couplings(n), n);
  const auto diag_only = real_matrix(2, 2, {3, 0, 0, -1});
  EXPECT_EQ(normalize_couplings(diag_only), RealMatrix(2, 2));
  EXPECT_EQ(normalize_couplings(RealMatrix(4, 4)), RealMatrix(4, 4));
}

TEST(NormalizeTest, PreservesArgmax) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 8;
    const auto m = random_symmetric(d, rng);
    const auto n = normalize_couplings(m);
    double max_abs = 0.0;
    for (double v : n.values()) max_abs = std::max(max_abs, std::abs(v));
    EXPECT_DOUBLE_EQ(max_abs, 1.0);
    std::uint64_t arg_m = 0, arg_n = 0;
    double best_m = -std::numeric_limits<double>::infinity(), best_n = best_m;
    for (std::uint64_t code = 0; code < (1u << d); ++code) {
      const auto s = oracle::spins_of(code, d);
      const double vm = oracle::quad_form(m, s), vn = oracle::quad_form(n, s);
      if (vm > best_m) best_m = vm, arg_m = code;
      if (vn > best_n) best_n = vn, arg_n = code;
    }
    // Random continuous entries: the argmax pair (s, -s) is unique.
    EXPECT_TRUE(arg_m == arg_n || arg_m == (~arg_n & ((1u << d) - 1)));
  }
}

TEST(CompileTest, EndpointsAndRange) {
  const auto ch = generate_channel(MimoConfig(2, 2, 2), 9);
  const auto obj = objective_couplings(ch);
  const auto con = constraint_couplings(ch.config);
  EXPECT_EQ(compile(ch, 0.0).j, obj);
  EXPECT_EQ(compile(ch, 1.0).j, -1.0 * con);
  EXPECT_THROW(compile(ch, -0.01), std::invalid_argument);
  EXPECT_THROW(compile(ch, 1.01), std::invalid_argument);

  for (double lambda : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const auto inst = compile(ch, lambda);
    EXPECT_EQ(inst.dim(), 9u);
    EXPECT_EQ(inst.lambda, lambda);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < inst.dim(); ++i) {
      EXPECT_EQ(inst.j(i, i), 0.0);
      for (std::size_t k = 0; k < inst.dim(); ++k) {
        EXPECT_EQ(inst.j(i, k), inst.j(k, i));
        max_abs = std::max(max_abs, std::abs(inst.j(i, k)));
      }
    }
    EXPECT_LE(max_abs, 1.0);
    if (lambda == 0.0 || lambda == 1.0) EXPECT_DOUBLE_EQ(max_abs, 1.0);
  }
}

TEST(CompileTest, ObjectiveCouplingsAreAffineInSnrOnFeasibleSpins) {
  const MimoConfig cfg(2, 2, 2);
  const auto ch = generate_channel(cfg, 21);
  const auto j = objective_couplings(ch);
  std::vector<std::pair<double, double>> points;
  for (std::uint64_t code = 0; code < 256; ++code) {
    const auto b = oracle::bits_of(code, cfg.variables());
    if (!oracle::one_hot(b, cfg.n_states())) continue;
    const double snr = oracle::trace_objective(ch, oracle::selection_of(b, cfg));
    points.emplace_back(snr, spin_energy(j, spins_for(b, 1)));
  }
  std::sort(points.begin(), points.end());
  const auto [x0, y0] = points.front();
  const auto [x1, y1] = points.back();
  const double slope = (y1 - y0) / (x1 - x0);
  EXPECT_GT(slope, 0.0);
  for (const auto& [x, y] : points) EXPECT_NEAR(y, y0 + slope * (x - x0), 1e-12);
}

TEST(CompileTest, PenaltyGroundStatesAreFeasibleSet) {
  const MimoConfig cfg(2, 2, 2);
  const auto con = constraint_couplings(cfg);
  ASSERT_EQ(con.rows(), 9u);
  double lowest = std::numeric_limits<double>::infinity();
  for (std::uint64_t code = 0; code < 512; ++code)
    lowest = std::min(lowest, spin_energy(con, oracle::spins_of(code, 9)));
  std::set<std::uint64_t> minimizers, feasible;
  for (std::uint64_t code = 0; code < 512; ++code) {
    const auto s0 = oracle::spins_of(code, 9);
    const double v = spin_energy(con, s0);
    if (std::abs(v - lowest) < 1e-12) minimizers.insert(code);
    BinaryVector b;
    for (std::size_t i = 1; i < 9; ++i) b.push_back(s0[0] * s0[i] > 0 ? 1 : 0);
    if (oracle::one_hot(b, 2)) {
      feasible.insert(code);
    } else {
      EXPECT_GT(v, lowest + 1e-9);
    }
    EXPECT_EQ(decode(s0, cfg).feasible(), oracle::one_hot(b, 2));
  }
  EXPECT_EQ(feasible.size(), 32u);
  EXPECT_EQ(minimizers, feasible);
}

TEST(CompileTest, FeasibleArgmaxMatchesExhaustiveSearch) {
  const MimoConfig cfg(2, 2, 2);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto ch = generate_channel(cfg, seed);
    const auto es = exhaustive_search(ch);
    for (double lambda : {0.1, 0.5, 0.9}) {
      const auto inst = compile(ch, lambda);
      double best = -std::numeric_limits<double>::infinity();
      ConfigAssignment arg;
      for (std::uint64_t code = 0; code < 256; ++code) {
        const auto b = oracle::bits_of(code, 8);
        if (!oracle::one_hot(b, 2)) continue;
        const double v = spin_energy(inst.j, spins_for(b, 1));
        if (v > best + 1e-12) best = v, arg = oracle::selection_of(b, cfg);
      }
      EXPECT_NEAR(objective(ch, arg), es.objective, 1e-12 * es.objective);
    }
  }
}

TEST(CompileTest, OperationCountsArePolynomial) {
  // Objective path O(d^2); constraint path O(d^2 (N_T + N_R)).
  for (const MimoConfig cfg : {MimoConfig(2, 2, 2), MimoConfig(4, 4, 4), MimoConfig(3, 5, 6)}) {
    CompileStats stats;
    compile(generate_channel(cfg, 1), 0.5, &stats);
    const double d = static_cast<double>(cfg.variables());
    const double k = static_cast<double>(cfg.antennas());
    const double n = static_cast<double>(cfg.n_states());
    EXPECT_GT(stats.objective_ops, 0u);
    EXPECT_LE(static_cast<double>(stats.objective_ops), 8.0 * (d + 1) * (d + 1));
    EXPECT_LE(static_cast<double>(stats.constraint_ops), 8.0 * (d + 1) * (d + 1) * k);
    EXPECT_LE(static_cast<double>(stats.constraint_ops), 8.0 * n * n * (k + 1) * (k + 1) * (k + 1));
  }
}

TEST(DecodeTest, Examples) {
  const MimoConfig cfg(1, 1, 2);
  const SpinVector s0{1, 1, -1, -1, 1};
  const auto dec = decode(s0, cfg);
  ASSERT_TRUE(dec.feasible());
  EXPECT_EQ(dec.assignment->tx, (std::vector<std::size_t>{0}));
  EXPECT_EQ(dec.assignment->rx, (std::vector<std::size_t>{1}));

  SpinVector neg;
  for (auto v : s0) neg.push_back(static_cast<std::int8_t>(-v));
  const auto dneg = decode(neg, cfg);
  EXPECT_EQ(dneg.assignment, dec.assignment);
  EXPECT_EQ(dneg.bits, dec.bits);

  const auto all_up = decode(SpinVector(5, 1), cfg);
  EXPECT_FALSE(all_up.feasible());
  EXPECT_EQ(all_up.bits, (BinaryVector{1, 1, 1, 1}));

  EXPECT_THROW(decode(SpinVector(4, 1), cfg), std::invalid_argument);
}

TEST(DecodeTest, InvertsEncode) {
  const MimoConfig cfg(2, 3, 3);
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sel = random_assignment(cfg, rng);
    for (std::int8_t aux : {1, -1}) {
      const auto dec = decode(spins_for(encode(sel, cfg), aux), cfg);
      ASSERT_TRUE(dec.feasible());
      EXPECT_EQ(*dec.assignment, sel);
    }
  }
}

}  // namespace
}  // namespace racim
