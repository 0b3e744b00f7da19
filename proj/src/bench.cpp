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

#include "racim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "racim/formulation.hpp"
#include "racim/parallel.hpp"

namespace racim {

std::string_view method_tag(Method method) {
  switch (method) {
    case Method::es:
      return "ES";
    case Method::nsa:
      return "NSA";
    case Method::rs:
      return "RS";
    case Method::cim_best:
      return "CIM-best";
    case Method::cim_avg:
      return "CIM-avg";
    case Method::cim_raw:
      return "CIM-raw";
  }
  return "?";
}

Method parse_method(std::string_view tag) {
  for (auto m : all_methods())
    if (method_tag(m) == tag) return m;
  throw std::invalid_argument("unknown method '" + std::string(tag) + "'");
}

std::vector<Method> all_methods() {
  return {Method::es, Method::nsa, Method::rs, Method::cim_best, Method::cim_avg, Method::cim_raw};
}

void ExperimentPlan::validate() const {
  if (n_instances < 1) throw std::invalid_argument("ExperimentPlan: n_instances must be >= 1");
  if (lambdas.empty()) throw std::invalid_argument("ExperimentPlan: lambda list is empty");
  for (double l : lambdas)
    if (!(l >= 0.0 && l <= 1.0))
      throw std::invalid_argument("ExperimentPlan: lambda " + std::to_string(l) + " outside [0, 1]");
  cim.validate();
}

const SummaryEntry* MetricTable::find(Method method, double lambda) const {
  for (const auto& e : summary)
    if (e.method == method && e.lambda == lambda) return &e;
  return nullptr;
}

const SummaryEntry* MetricTable::find(Method method, double lambda, std::size_t step) const {
  for (const auto& e : summary)
    if (e.method == method && e.lambda == lambda && e.step == step) return &e;
  return nullptr;
}

namespace {

bool is_cim(Method m) {
  return m == Method::cim_best || m == Method::cim_avg || m == Method::cim_raw;
}

bool contains(const std::vector<Method>& methods, Method m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double std_error() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var =
        std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  }
};

struct Scored {
  double value;
  bool feasible;
  std::optional<ConfigAssignment> assignment;
};

Scored score(std::span<const std::int8_t> spins, const ChannelMatrix& channel,
             const BaselineResult& fallback) {
  auto decoded = decode(spins, channel.config);
  if (!decoded.feasible()) return {fallback.objective, false, std::nullopt};
  const double value = objective(channel, *decoded.assignment);
  return {value, true, std::move(decoded.assignment)};
}

}  // namespace

InstanceRecord run_instance(const ChannelMatrix& channel, double lambda, const CimParams& params,
                            std::uint64_t seed, std::uint64_t fallback_seed, std::size_t workers,
                            kernels::KernelKind kernel) {
  const auto start = std::chrono::steady_clock::now();
  const auto instance = compile(channel, lambda);
  Rng fallback_rng(fallback_seed);
  const auto fallback = random_selection(channel, fallback_rng);
  const auto outcomes = solve(instance, params, seed, workers, kernel);

  InstanceRecord rec;
  rec.lambda = lambda;
  rec.anneals = outcomes.size();
  rec.best_objective = -std::numeric_limits<double>::infinity();
  Moments post;
  Moments raw;
  for (const auto& outcome : outcomes) {
    Scored s{fallback.objective, false, std::nullopt};
    if (outcome.aborted) {
      ++rec.aborted_anneals;
    } else {
      s = score(outcome.spins, channel, fallback);
    }
    post.add(s.value);
    if (s.feasible) {
      raw.add(s.value);
      ++rec.feasible_anneals;
    }
    // Strict improvement: the lowest anneal index wins ties.
    if (s.value > rec.best_objective) {
      rec.best_objective = s.value;
      rec.best_from_fallback = !s.feasible;
      rec.best_assignment = s.feasible ? *s.assignment : fallback.assignment;
    }
  }
  rec.avg_objective = post.mean();
  if (raw.n > 0) rec.raw_avg_objective = raw.mean();
  rec.feasible_fraction =
      static_cast<double>(rec.feasible_anneals) / static_cast<double>(rec.anneals);

  if (params.trace_stride > 0) {
    const std::size_t points = params.steps / params.trace_stride;
    for (std::size_t p = 0; p <= points; ++p) {
      TracePoint tp;
      tp.step = p * params.trace_stride;
      tp.best_objective = -std::numeric_limits<double>::infinity();
      Moments values;
      std::size_t feasible = 0;
      for (const auto& outcome : outcomes) {
        const SpinVector* spins = nullptr;
        if (p == 0)
          spins = &outcome.initial_spins;
        else if (p - 1 < outcome.trajectory.size())
          spins = &outcome.trajectory[p - 1];
        Scored s{fallback.objective, false, std::nullopt};
        if (spins) s = score(*spins, channel, fallback);
        values.add(s.value);
        if (s.feasible) ++feasible;
        if (s.value > tp.best_objective) {
          tp.best_objective = s.value;
          tp.best_from_fallback = !s.feasible;
        }
      }
      tp.avg_objective = values.mean();
      tp.feasible_fraction = static_cast<double>(feasible) / static_cast<double>(outcomes.size());
      rec.trace.push_back(tp);
    }
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

double enumerate_best_objective(const ChannelMatrix& channel) {
  const auto& cfg = channel.config;
  if (exhaustive_count(cfg) > kExhaustiveBudget)
    throw BudgetExceeded(exhaustive_count(cfg), kExhaustiveBudget);
  const auto qubo = build_qubo(build_gain_matrix(channel), cfg);
  const std::size_t n = cfg.n_states();
  // One hot bit per block; advance blocks like a counter.
  std::vector<std::size_t> hot(cfg.antennas(), 0);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    BinaryVector bits(cfg.variables(), 0);
    for (std::size_t k = 0; k < hot.size(); ++k) bits[k * n + hot[k]] = 1;
    best = std::max(best, binary_objective(qubo, bits));
    std::size_t k = 0;
    while (k < hot.size() && ++hot[k] == n) hot[k++] = 0;
    if (k == hot.size()) break;
  }
  return best;
}

namespace {

struct InstanceResult {
  bool ok = false;
  std::string error;
  std::uint64_t channel_seed = 0;
  std::optional<BaselineResult> es;
  std::optional<double> es_oracle;
  BaselineResult nsa;
  BaselineResult rs;
  std::vector<InstanceRecord> records;
  double wall_seconds = 0.0;
};

bool es_enabled(const ExperimentPlan& plan, const std::vector<Method>& methods) {
  return contains(methods, Method::es) && exhaustive_count(plan.config) <= plan.es_budget;
}

std::vector<InstanceResult> run_all(const ExperimentPlan& plan, const std::vector<Method>& methods,
                                    const std::vector<double>& lambdas, const CimParams& cim,
                                    bool cross_check_es) {
  std::vector<InstanceResult> results(plan.n_instances);
  const bool need_es = es_enabled(plan, methods);
  const bool need_cim = std::any_of(methods.begin(), methods.end(), is_cim);
  parallel_for(plan.n_instances, plan.workers, [&](std::size_t i) {
    auto& res = results[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto channel_seed = derive_seed(plan.master_seed, Stream::channel, i);
      const auto cim_seed = derive_seed(plan.master_seed, Stream::cim, i);
      const auto rs_seed = derive_seed(plan.master_seed, Stream::random_selection, i);
      res.channel_seed = channel_seed;
      const auto channel = generate_channel(plan.config, channel_seed);
      if (need_es) {
        res.es = exhaustive_search(channel, plan.es_budget);
        if (cross_check_es && exhaustive_count(plan.config) <= (std::uint64_t{1} << 16))
          res.es_oracle = enumerate_best_objective(channel);
      }
      res.nsa = norm_based_selection(channel, plan.nsa_order);
      Rng rs_rng(rs_seed);
      res.rs = random_selection(channel, rs_rng);
      if (need_cim)
        for (double lambda : lambdas)
          res.records.push_back(run_instance(channel, lambda, cim, cim_seed, rs_seed, 1, plan.kernel));
      res.ok = true;
    } catch (const std::exception& ex) {
      res.error = ex.what();
    }
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return results;
}

void log_failures(MetricTable& table, const ExperimentPlan& plan,
                  const std::vector<Method>& methods, const std::vector<InstanceResult>& results) {
  double wall = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    wall += results[i].wall_seconds;
    if (!results[i].ok) {
      ++table.failed_instances;
      table.log.push_back("instance " + std::to_string(i) + " failed: " + results[i].error);
    }
  }
  if (contains(methods, Method::es) && !es_enabled(plan, methods))
    table.log.push_back(std::string("ES skipped: ") +
                        BudgetExceeded(exhaustive_count(plan.config), plan.es_budget).what());
  table.log.push_back("instances: " + std::to_string(results.size()) + ", failed: " +
                      std::to_string(table.failed_instances) +
                      ", summed wall-clock seconds: " + std::to_string(wall));
}

struct RowValue {
  double objective;
  bool feasible;
  bool fallback;
  double p_c;
  bool counted;
};

RowValue final_value(const InstanceResult& res, Method m, std::size_t lambda_index) {
  switch (m) {
    case Method::es:
      return {res.es->objective, true, false, 1.0, true};
    case Method::nsa:
      return {res.nsa.objective, true, false, 1.0, true};
    case Method::rs:
      return {res.rs.objective, true, false, 1.0, true};
    case Method::cim_best: {
      const auto& rec = res.records[lambda_index];
      return {rec.best_objective, true, rec.best_from_fallback, rec.feasible_fraction, true};
    }
    case Method::cim_avg: {
      const auto& rec = res.records[lambda_index];
      return {rec.avg_objective, true, rec.feasible_anneals < rec.anneals, rec.feasible_fraction,
              true};
    }
    case Method::cim_raw: {
      const auto& rec = res.records[lambda_index];
      const bool any = rec.raw_avg_objective.has_value();
      return {rec.raw_avg_objective.value_or(0.0), any, false, rec.feasible_fraction, any};
    }
  }
  throw std::logic_error("unhandled method");
}

MetricTable assemble_final(const ExperimentPlan& plan, const std::vector<Method>& methods,
                           const std::vector<double>& lambdas,
                           const std::vector<InstanceResult>& results) {
  MetricTable table;
  log_failures(table, plan, methods, results);
  const bool es_on = es_enabled(plan, methods);
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    for (Method m : methods) {
      if (m == Method::es && !es_on) continue;
      Moments objective_stats;
      Moments feasibility;
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& res = results[i];
        if (!res.ok) continue;
        const auto v = final_value(res, m, li);
        table.rows.push_back({i, m, lambdas[li], plan.cim.steps, v.objective, v.feasible,
                              v.fallback, res.channel_seed});
        if (v.counted) objective_stats.add(v.objective);
        feasibility.add(v.p_c);
      }
      table.summary.push_back({m, lambdas[li], plan.cim.steps, objective_stats.mean(),
                               objective_stats.std_error(), feasibility.mean(), objective_stats.n});
    }
  }
  return table;
}

std::vector<Method> sanitized(std::vector<Method> methods) {
  std::vector<Method> out;
  for (Method m : all_methods())
    if (contains(methods, m)) out.push_back(m);
  return out;
}

}  // namespace

MetricTable sweep_lambda(const ExperimentPlan& plan) {
  plan.validate();
  const auto methods = sanitized(plan.methods);
  const auto results = run_all(plan, methods, plan.lambdas, plan.cim, false);
  auto table = assemble_final(plan, methods, plan.lambdas, results);
  table.violations = check_invariants(table);
  return table;
}

MetricTable time_trace(const ExperimentPlan& plan, double lambda) {
  plan.validate();
  if (plan.trace_stride < 1) throw std::invalid_argument("time_trace: trace_stride must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("time_trace: lambda outside [0, 1]");
  CimParams cim = plan.cim;
  cim.trace_stride = plan.trace_stride;
  const std::vector<Method> methods{Method::cim_best, Method::cim_avg};
  const auto results = run_all(plan, methods, {lambda}, cim, false);

  MetricTable table;
  log_failures(table, plan, methods, results);
  const std::size_t points = cim.steps / cim.trace_stride + 1;
  for (Method m : methods) {
    for (std::size_t p = 0; p < points; ++p) {
      Moments objective_stats;
      Moments feasibility;
      const std::size_t step = p * cim.trace_stride;
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& res = results[i];
        if (!res.ok) continue;
        const auto& tp = res.records.front().trace[p];
        const bool best = m == Method::cim_best;
        const double value = best ? tp.best_objective : tp.avg_objective;
        const bool fallback = best ? tp.best_from_fallback : tp.feasible_fraction < 1.0;
        table.rows.push_back({i, m, lambda, step, value, true, fallback, res.channel_seed});
        objective_stats.add(value);
        feasibility.add(tp.feasible_fraction);
      }
      table.summary.push_back({m, lambda, step, objective_stats.mean(), objective_stats.std_error(),
                               feasibility.mean(), objective_stats.n});
    }
  }
  table.violations = check_invariants(table);
  return table;
}

MetricTable compare_methods(const ExperimentPlan& plan) {
  plan.validate();
  const auto methods = sanitized(plan.methods);
  const std::vector<double> lambdas{plan.lambdas.front()};
  if (methods.empty()) {
    MetricTable empty;
    return empty;
  }
  const auto results = run_all(plan, methods, lambdas, plan.cim, true);
  auto table = assemble_final(plan, methods, lambdas, results);
  table.violations = check_invariants(table);

  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    if (!res.ok || !res.es || !res.es_oracle) continue;
    const double tol = 1e-12 * std::max(1.0, std::abs(*res.es_oracle));
    if (std::abs(res.es->objective - *res.es_oracle) > tol)
      table.violations.push_back("instance " + std::to_string(i) + ": ES objective " +
                                 std::to_string(res.es->objective) +
                                 " disagrees with independent enumeration " +
                                 std::to_string(*res.es_oracle));
  }

  const bool es_on = es_enabled(plan, methods);
  std::vector<Method> ranked;
  for (Method m : methods)
    if (m != Method::cim_raw && (m != Method::es || es_on)) ranked.push_back(m);
  for (std::size_t a = 0; a < ranked.size(); ++a) {
    for (std::size_t b = a + 1; b < ranked.size(); ++b) {
      Moments diff;
      for (const auto& res : results) {
        if (!res.ok) continue;
        diff.add(final_value(res, ranked[a], 0).objective - final_value(res, ranked[b], 0).objective);
      }
      table.gaps.push_back({ranked[a], ranked[b], lambdas.front(), diff.mean(), diff.std_error(), diff.n});
    }
  }
  return table;
}

std::vector<std::string> check_invariants(const MetricTable& table) {
  std::vector<std::string> out;
  struct Group {
    std::optional<double> es;
    std::optional<double> best;
    std::optional<double> avg;
    std::vector<std::pair<Method, double>> others;
  };
  std::map<std::tuple<std::size_t, double, std::size_t>, Group> groups;
  for (const auto& row : table.rows) {
    auto& g = groups[{row.instance_id, row.lambda, row.step}];
    if (row.method == Method::es) g.es = row.objective;
    if (row.method == Method::cim_best) g.best = row.objective;
    if (row.method == Method::cim_avg) g.avg = row.objective;
    if (row.method != Method::es && (row.method != Method::cim_raw || row.feasible))
      g.others.emplace_back(row.method, row.objective);
  }
  for (const auto& [key, g] : groups) {
    const auto& [instance, lambda, step] = key;
    const std::string where = "instance " + std::to_string(instance) + " lambda " +
                              std::to_string(lambda) + " step " + std::to_string(step);
    if (g.es) {
      const double tol = 1e-12 * std::max(1.0, std::abs(*g.es));
      for (const auto& [m, v] : g.others)
        if (v > *g.es + tol)
          out.push_back(where + ": " + std::string(method_tag(m)) + " objective " +
                        std::to_string(v) + " exceeds ES " + std::to_string(*g.es));
    }
    if (g.best && g.avg) {
      const double tol = 1e-12 * std::max(1.0, std::abs(*g.best));
      if (*g.avg > *g.best + tol)
        out.push_back(where + ": CIM-avg " + std::to_string(*g.avg) + " exceeds CIM-best " +
                      std::to_string(*g.best));
    }
  }
  for (const auto& e : table.summary)
    if (!(e.p_c >= 0.0 && e.p_c <= 1.0))
      out.push_back(std::string(method_tag(e.method)) + " P_c " + std::to_string(e.p_c) +
                    " outside [0, 1]");
  return out;
}

}  // namespace racim
