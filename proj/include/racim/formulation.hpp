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

#pragma once

// Compilation of the one-hot constrained SNR problem into a single quadratic
// spin form over d + 1 spins, where spin 0 is the auxiliary spin that absorbs
// the linear terms.
//
// Binary layout: b = [x_0 .. x_{N N_T - 1}, y_0 .. y_{N N_R - 1}], i.e. all
// transmit selections first, then receive selections, each in flat_index
// order. Spin layout: s0 = [s_aux, s_1 .. s_d] with b_i = (s_aux * s_i + 1)/2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "racim/channel.hpp"
#include "racim/matrix.hpp"

namespace racim {

using BinaryVector = std::vector<std::uint8_t>;
using SpinVector = std::vector<std::int8_t>;

/// Q = [[0, T/2], [T^T/2, 0]] so that b^T Q b is the SNR objective on
/// feasible b.
struct QuboMatrix {
  RealMatrix q;
};

/// Aggregate one-hot penalty R = sum_k A_k, one all-ones N x N block per
/// antenna on the diagonal.
class ConstraintSystem {
 public:
  explicit ConstraintSystem(const MimoConfig& config);

  const RealMatrix& r() const noexcept { return r_; }
  std::size_t blocks() const noexcept { return blocks_; }
  std::size_t block_size() const noexcept { return block_size_; }
  /// Multiply-adds spent summing the A_k (d^2 per block).
  std::size_t build_ops() const noexcept { return build_ops_; }

 private:
  std::size_t blocks_;
  std::size_t block_size_;
  std::size_t build_ops_ = 0;
  RealMatrix r_;
};

/// s^T S s + q^T s + c equals the binary form it came from for b = (s+1)/2.
struct SpinForm {
  RealMatrix quadratic;
  std::vector<double> linear;
  double constant = 0.0;
};

/// The instance handed to an Ising solver: maximize s0^T J s0.
struct IsingInstance {
  RealMatrix j;
  double lambda = 0.0;
  MimoConfig config{1, 1, 1};
  std::uint64_t channel_seed = 0;

  std::size_t dim() const noexcept { return j.rows(); }
};

struct CompileStats {
  std::size_t objective_ops = 0;
  std::size_t constraint_ops = 0;
};

/// T[j][i] = |g_{i,j}|^2, shape (N N_T) x (N N_R).
RealMatrix build_gain_matrix(const ChannelMatrix& channel);
QuboMatrix build_qubo(const RealMatrix& gains, const MimoConfig& config);

double binary_objective(const QuboMatrix& qubo, std::span<const std::uint8_t> bits);

/// sum_k (block_sum_k - 1)^2; zero exactly on one-hot vectors.
double constraint_violation(std::span<const std::uint8_t> bits, const ConstraintSystem& system);

SpinForm qubo_to_spin(const RealMatrix& quadratic, std::span<const double> linear);

/// (d+1) x (d+1) matrix with the linear term folded into row/column 0:
/// s0^T M s0 = s^T S s + s_aux q^T s.
RealMatrix augment_aux(const RealMatrix& quadratic, std::span<const double> linear);

/// Zero the diagonal, then scale by the largest absolute entry. An all-zero
/// off-diagonal is returned as-is.
RealMatrix normalize_couplings(const RealMatrix& m);

/// Normalized objective couplings F_n(1/4 g(Q) + f(Q 1 / 2)).
RealMatrix objective_couplings(const ChannelMatrix& channel, CompileStats* stats = nullptr);

/// Normalized penalty couplings F_n(1/4 g(R) + f(R 1 / 2 - 1)).
RealMatrix constraint_couplings(const MimoConfig& config, CompileStats* stats = nullptr);

/// J = (1 - lambda) objective - lambda penalty. lambda must lie in [0, 1].
IsingInstance compile(const ChannelMatrix& channel, double lambda, CompileStats* stats = nullptr);

struct Decoded {
  std::optional<ConfigAssignment> assignment;
  BinaryVector bits;

  bool feasible() const noexcept { return assignment.has_value(); }
};

/// Gauge-fixes against spin 0 and maps back to an assignment. Infeasible
/// readouts keep their bits; falling back to another selection is up to the
/// caller.
Decoded decode(std::span<const std::int8_t> spins, const MimoConfig& config);

BinaryVector encode(const ConfigAssignment& selection, const MimoConfig& config);

/// s^T M s for a +-1 vector.
double spin_energy(const RealMatrix& m, std::span<const std::int8_t> spins);

}  // namespace racim
