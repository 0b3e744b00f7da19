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

// Classical emulation of an amplitude-heterogeneity-corrected coherent Ising
// machine, integrated with explicit Euler:
//
//   dx_i/dt = (p - 1) x_i - x_i^3 + eps e_i sum_{j != i} J_ij x_j
//   de_i/dt = -beta (x_i^2 - a) e_i,         eps = gamma t
//
// eps grows without bound over a run (1000 at t = 10 with the default
// constants) and dominates late-time behaviour; amplitudes are clamped to
// [-x_clip, x_clip] and e to >= 1e-12. All randomness is in the initial
// amplitudes. Readout is s_i = sign(x_i) with sign(0) = +1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "racim/formulation.hpp"
#include "racim/kernels.hpp"
#include "racim/rng.hpp"

namespace racim {

struct CimParams {
  double pump = 0.98;
  double ahc_rate = 1.0;
  double target_amplitude = 2.0;
  double coupling_ramp = 100.0;
  double dt = 0.01;
  std::size_t steps = 1000;
  std::size_t n_anneals = 1000;
  double init_scale = 0.01;
  double x_clip = 10.0;
  /// Record a readout every `trace_stride` steps; 0 disables trajectories.
  std::size_t trace_stride = 0;

  void validate() const;
};

inline constexpr double kErrorFloor = 1e-12;

struct CimState {
  std::vector<double> x;
  std::vector<double> e;
  double t = 0.0;
};

struct AnnealOutcome {
  SpinVector spins;
  double energy = 0.0;
  /// Readout after trace_stride, 2 trace_stride, ..., steps.
  std::vector<SpinVector> trajectory;
  /// Readout of the initial state; filled only when tracing.
  SpinVector initial_spins;
  bool aborted = false;
  std::string diagnostic;
};

enum class StepStatus { ok, non_finite };

CimState init_state(std::size_t dim, const CimParams& params, Rng& rng);

SpinVector readout(std::span<const double> x);

/// Integrator bound to one coupling matrix (copied) and kernel variant.
/// Stateless across anneals, so one engine may be shared by many threads.
class AnnealEngine {
 public:
  AnnealEngine(const IsingInstance& instance, const CimParams& params,
               kernels::KernelKind kernel = kernels::KernelKind::automatic);

  StepStatus step(CimState& state, std::span<double> field_scratch) const;
  StepStatus step(CimState& state) const;

  AnnealOutcome run(std::uint64_t seed) const;
  AnnealOutcome run_from(CimState state) const;

  const kernels::KernelTable& kernel() const noexcept { return *kernel_; }
  std::size_t dim() const noexcept { return couplings_.rows(); }

 private:
  RealMatrix couplings_;
  CimParams params_;
  const kernels::KernelTable* kernel_;
};

/// Single Euler step on a copy; convenience form of AnnealEngine::step.
/// Throws std::runtime_error if the state goes non-finite.
CimState step(const CimState& state, const IsingInstance& instance, const CimParams& params);

AnnealOutcome run_anneal(const IsingInstance& instance, const CimParams& params, std::uint64_t seed,
                         kernels::KernelKind kernel = kernels::KernelKind::automatic);

/// n_anneals outcomes; anneal k uses derive_seed(master_seed, Stream::anneal, k)
/// and lands at index k whatever the worker count.
std::vector<AnnealOutcome> solve(const IsingInstance& instance, const CimParams& params,
                                 std::uint64_t master_seed, std::size_t workers = 1,
                                 kernels::KernelKind kernel = kernels::KernelKind::automatic);

}  // namespace racim
