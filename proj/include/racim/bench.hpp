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

// Monte-Carlo experiment harness. Every table is a pure function of the plan:
// instance i draws its channel from derive_seed(master, channel, i), its
// anneals from derive_seed(master, cim, i) and its random selection (also the
// CIM fallback) from derive_seed(master, random_selection, i). Channels are
// shared across lambda values and methods.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "racim/baselines.hpp"
#include "racim/channel.hpp"
#include "racim/cim.hpp"
#include "racim/kernels.hpp"

namespace racim {

enum class Method { es, nsa, rs, cim_best, cim_avg, cim_raw };

std::string_view method_tag(Method method);
Method parse_method(std::string_view tag);
std::vector<Method> all_methods();

struct ExperimentPlan {
  MimoConfig config{2, 2, 2};
  std::size_t n_instances = 1000;
  std::vector<double> lambdas{0.5};
  CimParams cim;
  std::uint64_t master_seed = 0;
  /// Sampling stride for time traces.
  std::size_t trace_stride = 10;
  std::size_t workers = 1;
  kernels::KernelKind kernel = kernels::KernelKind::automatic;
  std::vector<Method> methods = all_methods();
  NsaOrder nsa_order = NsaOrder::receiver_first;
  std::uint64_t es_budget = kExhaustiveBudget;

  void validate() const;
};

/// One CSV line: columns instance_id, method, lambda, step, objective,
/// feasible, fallback, seed.
struct MetricRow {
  std::size_t instance_id = 0;
  Method method = Method::es;
  double lambda = 0.0;
  std::size_t step = 0;
  double objective = 0.0;
  bool feasible = true;
  bool fallback = false;
  std::uint64_t seed = 0;
};

struct TracePoint {
  std::size_t step = 0;
  double avg_objective = 0.0;
  double best_objective = 0.0;
  double feasible_fraction = 0.0;
  bool best_from_fallback = false;
};

struct InstanceRecord {
  double lambda = 0.0;
  /// Max over post-fallback anneal outputs.
  double best_objective = 0.0;
  ConfigAssignment best_assignment;
  bool best_from_fallback = false;
  /// Mean over post-fallback anneal outputs.
  double avg_objective = 0.0;
  /// Mean over feasible anneals only; empty when none decoded feasibly.
  std::optional<double> raw_avg_objective;
  double feasible_fraction = 0.0;
  std::size_t anneals = 0;
  std::size_t feasible_anneals = 0;
  std::size_t aborted_anneals = 0;
  std::vector<TracePoint> trace;
  double wall_seconds = 0.0;
};

/// Compiles, solves and decodes one channel at one lambda. Infeasible anneal
/// outputs are replaced by the random selection drawn from `fallback_seed`.
InstanceRecord run_instance(const ChannelMatrix& channel, double lambda, const CimParams& params,
                            std::uint64_t seed, std::uint64_t fallback_seed,
                            std::size_t workers = 1,
                            kernels::KernelKind kernel = kernels::KernelKind::automatic);

struct SummaryEntry {
  Method method = Method::es;
  double lambda = 0.0;
  std::size_t step = 0;
  double e_rho = 0.0;
  double std_error = 0.0;
  double p_c = 0.0;
  std::size_t n = 0;
};

struct PairedGap {
  Method higher;
  Method lower;
  double lambda = 0.0;
  double mean_difference = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

struct MetricTable {
  std::vector<MetricRow> rows;
  std::vector<SummaryEntry> summary;
  std::vector<PairedGap> gaps;
  std::vector<std::string> violations;
  std::vector<std::string> log;
  std::size_t failed_instances = 0;

  const SummaryEntry* find(Method method, double lambda) const;
  const SummaryEntry* find(Method method, double lambda, std::size_t step) const;
};

/// E_rho and P_c per (method, lambda) over the plan's instances.
MetricTable sweep_lambda(const ExperimentPlan& plan);

/// Per-step E_rho / P_c of the instantaneous readouts at one lambda. Rows at
/// step 0 (initial readout) and every trace_stride steps up to cim.steps.
MetricTable time_trace(const ExperimentPlan& plan, double lambda);

/// Sweep at lambdas.front() restricted to plan.methods, plus paired gaps
/// and the independent exhaustive cross-check.
MetricTable compare_methods(const ExperimentPlan& plan);

/// Per-instance dominance and range checks on final-step rows: ES >= every
/// method, CIM-best >= CIM-avg, P_c in [0, 1].
std::vector<std::string> check_invariants(const MetricTable& table);

/// Best objective over every feasible binary vector, via the QUBO form.
/// Shares no code with exhaustive_search.
double enumerate_best_objective(const ChannelMatrix& channel);

}  // namespace racim
