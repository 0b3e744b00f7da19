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

#include "racim/cim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "racim/parallel.hpp"

namespace racim {

void CimParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("CimParams: dt must be > 0");
  if (steps < 1) throw std::invalid_argument("CimParams: steps must be >= 1");
  if (n_anneals < 1) throw std::invalid_argument("CimParams: n_anneals must be >= 1");
  if (!(init_scale > 0.0)) throw std::invalid_argument("CimParams: init_scale must be > 0");
  if (!(x_clip > std::sqrt(target_amplitude)))
    throw std::invalid_argument("CimParams: x_clip must exceed sqrt(target_amplitude)");
}

CimState init_state(std::size_t dim, const CimParams& params, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("init_state: dim must be >= 1");
  CimState state{std::vector<double>(dim), std::vector<double>(dim, 1.0), 0.0};
  for (auto& v : state.x) v = rng.uniform(-params.init_scale, params.init_scale);
  return state;
}

SpinVector readout(std::span<const double> x) {
  SpinVector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] >= 0.0 ? 1 : -1;
  return s;
}

AnnealEngine::AnnealEngine(const IsingInstance& instance, const CimParams& params,
                           kernels::KernelKind kernel)
    : couplings_(instance.j), params_(params), kernel_(&kernels::select(kernel)) {
  params_.validate();
  if (!couplings_.square() || couplings_.rows() == 0)
    throw std::invalid_argument("AnnealEngine: coupling matrix must be square and non-empty");
}

StepStatus AnnealEngine::step(CimState& state, std::span<double> field) const {
  const std::size_t n = dim();
  if (state.x.size() != n || state.e.size() != n || field.size() < n)
    throw std::invalid_argument("AnnealEngine::step: state dimension mismatch");
  const kernels::EulerCoefficients coeffs{
      params_.dt,
      params_.pump - 1.0,
      -params_.ahc_rate,
      params_.target_amplitude,
      params_.coupling_ramp * state.t,
      params_.x_clip,
      kErrorFloor,
  };
  kernel_->coupling_field(couplings_.data(), state.x.data(), field.data(), n);
  kernel_->euler_update(state.x.data(), state.e.data(), field.data(), n, coeffs);
  state.t += params_.dt;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(state.x[i]) || !std::isfinite(state.e[i])) return StepStatus::non_finite;
  return StepStatus::ok;
}

StepStatus AnnealEngine::step(CimState& state) const {
  std::vector<double> field(dim());
  return step(state, field);
}

AnnealOutcome AnnealEngine::run(std::uint64_t seed) const {
  Rng rng(seed);
  return run_from(init_state(dim(), params_, rng));
}

AnnealOutcome AnnealEngine::run_from(CimState state) const {
  AnnealOutcome out;
  std::vector<double> field(dim());
  const std::size_t stride = params_.trace_stride;
  if (stride > 0) {
    out.initial_spins = readout(state.x);
    out.trajectory.reserve(params_.steps / stride);
  }
  for (std::size_t k = 1; k <= params_.steps; ++k) {
    if (step(state, field) != StepStatus::ok) {
      out.aborted = true;
      out.diagnostic = "non-finite state at step " + std::to_string(k);
      break;
    }
    if (stride > 0 && k % stride == 0) out.trajectory.push_back(readout(state.x));
  }
  out.spins = readout(state.x);
  out.energy = spin_energy(couplings_, out.spins);
  return out;
}

CimState step(const CimState& state, const IsingInstance& instance, const CimParams& params) {
  CimState next = state;
  const AnnealEngine engine(instance, params, kernels::KernelKind::scalar);
  if (engine.step(next) != StepStatus::ok)
    throw std::runtime_error("cim step: non-finite state at t = " + std::to_string(state.t));
  return next;
}

AnnealOutcome run_anneal(const IsingInstance& instance, const CimParams& params, std::uint64_t seed,
                         kernels::KernelKind kernel) {
  return AnnealEngine(instance, params, kernel).run(seed);
}

std::vector<AnnealOutcome> solve(const IsingInstance& instance, const CimParams& params,
                                 std::uint64_t master_seed, std::size_t workers,
                                 kernels::KernelKind kernel) {
  const AnnealEngine engine(instance, params, kernel);
  std::vector<AnnealOutcome> outcomes(params.n_anneals);
  parallel_for(params.n_anneals, workers, [&](std::size_t k) {
    outcomes[k] = engine.run(derive_seed(master_seed, Stream::anneal, k));
  });
  return outcomes;
}

}  // namespace racim
