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

#include "racim/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace racim {

namespace {

void require_square(const RealMatrix& m, const char* what) {
  if (!m.square()) throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

}  // namespace

ConstraintSystem::ConstraintSystem(const MimoConfig& config)
    : blocks_(config.antennas()),
      block_size_(config.n_states()),
      r_(config.variables(), config.variables(), 0.0) {
  const std::size_t d = config.variables();
  // Summed literally from the per-antenna A_k.
  for (std::size_t k = 0; k < blocks_; ++k) {
    for (std::size_t row = 0; row < d; ++row) {
      for (std::size_t col = 0; col < d; ++col) {
        const bool inside = row / block_size_ == k && col / block_size_ == k;
        r_(row, col) += inside ? 1.0 : 0.0;
      }
    }
    build_ops_ += d * d;
  }
}

RealMatrix build_gain_matrix(const ChannelMatrix& channel) {
  channel.validate();
  const auto& g = channel.entries;
  RealMatrix t(g.cols(), g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) t(j, i) = std::norm(g(i, j));
  return t;
}

QuboMatrix build_qubo(const RealMatrix& gains, const MimoConfig& config) {
  const std::size_t tx = config.cols();
  const std::size_t rx = config.rows();
  if (gains.rows() != tx || gains.cols() != rx)
    throw std::invalid_argument("build_qubo: gain matrix must be (N N_T) x (N N_R)");
  const std::size_t d = config.variables();
  QuboMatrix out{RealMatrix(d, d, 0.0)};
  for (std::size_t i = 0; i < tx; ++i) {
    for (std::size_t j = 0; j < rx; ++j) {
      const double half = 0.5 * gains(i, j);
      out.q(i, tx + j) = half;
      out.q(tx + j, i) = half;
    }
  }
  return out;
}

double binary_objective(const QuboMatrix& qubo, std::span<const std::uint8_t> bits) {
  const auto& q = qubo.q;
  if (bits.size() != q.rows()) throw std::invalid_argument("binary_objective: length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!bits[i]) continue;
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (bits[j]) total += q(i, j);
  }
  return total;
}

double constraint_violation(std::span<const std::uint8_t> bits, const ConstraintSystem& system) {
  if (bits.size() != system.blocks() * system.block_size())
    throw std::invalid_argument("constraint_violation: length mismatch");
  double total = 0.0;
  for (std::size_t k = 0; k < system.blocks(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < system.block_size(); ++i) sum += bits[k * system.block_size() + i];
    total += (sum - 1.0) * (sum - 1.0);
  }
  return total;
}

SpinForm qubo_to_spin(const RealMatrix& quadratic, std::span<const double> linear) {
  require_square(quadratic, "qubo_to_spin");
  const std::size_t d = quadratic.rows();
  if (linear.size() != d) throw std::invalid_argument("qubo_to_spin: linear length mismatch");

  // b = (s + 1)/2:  b^T Q b + l^T b
  //   = 1/4 s^T Q s + (1/2 Q 1 + 1/2 l)^T s + 1/4 1^T Q 1 + 1/2 1^T l   (Q symmetric)
  SpinForm form{0.25 * quadratic, std::vector<double>(d, 0.0), 0.0};
  for (std::size_t i = 0; i < d; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) row_sum += quadratic(j, i);
    form.linear[i] = 0.5 * row_sum + 0.5 * linear[i];
    form.constant += 0.25 * row_sum + 0.5 * linear[i];
  }
  return form;
}

RealMatrix augment_aux(const RealMatrix& quadratic, std::span<const double> linear) {
  require_square(quadratic, "augment_aux");
  const std::size_t d = quadratic.rows();
  if (linear.size() != d) throw std::invalid_argument("augment_aux: linear length mismatch");
  RealMatrix out(d + 1, d + 1, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    out(0, i + 1) = 0.5 * linear[i];
    out(i + 1, 0) = 0.5 * linear[i];
    for (std::size_t j = 0; j < d; ++j) out(i + 1, j + 1) = quadratic(i, j);
  }
  return out;
}

RealMatrix normalize_couplings(const RealMatrix& m) {
  require_square(m, "normalize_couplings");
  RealMatrix out = m;
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) = 0.0;
  double peak = 0.0;
  for (double v : out.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return out;
  for (double& v : out.values()) v /= peak;
  return out;
}

RealMatrix objective_couplings(const ChannelMatrix& channel, CompileStats* stats) {
  const auto& cfg = channel.config;
  const auto qubo = build_qubo(build_gain_matrix(channel), cfg);
  const std::vector<double> no_linear(cfg.variables(), 0.0);
  const auto form = qubo_to_spin(qubo.q, no_linear);
  auto j = normalize_couplings(augment_aux(form.quadratic, form.linear));
  if (stats) {
    const std::size_t d = cfg.variables();
    // gains, Q, spin form and the two passes over the augmented matrix
    stats->objective_ops += cfg.rows() * cfg.cols() + 2 * d * d + 2 * (d + 1) * (d + 1);
  }
  return j;
}

RealMatrix constraint_couplings(const MimoConfig& config, CompileStats* stats) {
  const ConstraintSystem system(config);
  const std::vector<double> linear(config.variables(), -2.0);
  const auto form = qubo_to_spin(system.r(), linear);
  auto j = normalize_couplings(augment_aux(form.quadratic, form.linear));
  if (stats) {
    const std::size_t d = config.variables();
    stats->constraint_ops += system.build_ops() + d * d + 2 * (d + 1) * (d + 1);
  }
  return j;
}

IsingInstance compile(const ChannelMatrix& channel, double lambda, CompileStats* stats) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("compile: lambda must lie in [0, 1], got " + std::to_string(lambda));
  const auto objective = objective_couplings(channel, stats);
  const auto penalty = constraint_couplings(channel.config, stats);

  IsingInstance out{RealMatrix(objective.rows(), objective.cols(), 0.0), lambda, channel.config,
                    channel.seed};
  // Endpoints are taken verbatim so that lambda = 0 / 1 reproduce the inputs
  // bit for bit.
  if (lambda == 0.0) {
    out.j = objective;
  } else if (lambda == 1.0) {
    out.j = -1.0 * penalty;
  } else {
    out.j = (1.0 - lambda) * objective - lambda * penalty;
  }
  for (std::size_t i = 0; i < out.j.rows(); ++i)
    if (out.j(i, i) != 0.0) throw std::logic_error("compile: non-zero diagonal after blending");
  return out;
}

Decoded decode(std::span<const std::int8_t> spins, const MimoConfig& config) {
  const std::size_t d = config.variables();
  if (spins.size() != d + 1)
    throw std::invalid_argument("decode: expected " + std::to_string(d + 1) + " spins, got " +
                                std::to_string(spins.size()));
  Decoded out;
  out.bits.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const int gauged = spins[0] * spins[i + 1];
    out.bits[i] = gauged > 0 ? 1 : 0;
  }

  const std::size_t n = config.n_states();
  std::vector<std::size_t> chosen(config.antennas());
  for (std::size_t k = 0; k < config.antennas(); ++k) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (out.bits[k * n + c]) {
        ++count;
        chosen[k] = c;
      }
    }
    if (count != 1) return out;
  }
  ConfigAssignment selection;
  selection.tx.assign(chosen.begin(), chosen.begin() + config.n_t());
  selection.rx.assign(chosen.begin() + config.n_t(), chosen.end());
  out.assignment = std::move(selection);
  return out;
}

BinaryVector encode(const ConfigAssignment& selection, const MimoConfig& config) {
  selection.validate(config);
  BinaryVector bits(config.variables(), 0);
  const std::size_t n = config.n_states();
  for (std::size_t t = 0; t < config.n_t(); ++t) bits[flat_index(t, selection.tx[t], n)] = 1;
  for (std::size_t r = 0; r < config.n_r(); ++r)
    bits[config.cols() + flat_index(r, selection.rx[r], n)] = 1;
  return bits;
}

double spin_energy(const RealMatrix& m, std::span<const std::int8_t> spins) {
  if (spins.size() != m.rows() || !m.square())
    throw std::invalid_argument("spin_energy: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < spins.size(); ++j) row += m(i, j) * spins[j];
    total += spins[i] * row;
  }
  return total;
}

}  // namespace racim
