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

// racim: generate channels, compile Ising instances, run the CIM emulator and
// the benchmark experiments.

#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "racim/baselines.hpp"
#include "racim/bench.hpp"
#include "racim/cim.hpp"
#include "racim/formulation.hpp"
#include "racim/io.hpp"
#include "racim/run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using racim::CimParams;
using racim::RunConfig;

namespace {

constexpr const char* kEnvPrefix = "RACIM_";

std::string env_name(const char* suffix) { return std::string(kEnvPrefix) + suffix; }

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::optional<std::string> config;
  std::optional<std::string> kernel;
};

struct PlanFlags {
  std::optional<std::size_t> n_t, n_r, n_states, instances, anneals, steps, stride;
  std::optional<double> dt, pump, ahc_rate, target_amplitude, coupling_ramp, init_scale, x_clip;
  std::optional<std::vector<double>> lambdas;
  std::optional<std::vector<std::string>> methods;
  std::optional<double> lambda;
  bool plot_data = false;
  bool transmitter_first = false;
};

void add_cim_flags(CLI::App* cmd, PlanFlags& f) {
  cmd->add_option("--anneals", f.anneals, "Independent anneals per instance");
  cmd->add_option("--steps", f.steps, "Euler steps per anneal");
  cmd->add_option("--dt", f.dt, "Integration step");
  cmd->add_option("--pump", f.pump, "Pump parameter p");
  cmd->add_option("--ahc-rate", f.ahc_rate, "Error-variable rate beta");
  cmd->add_option("--target-amplitude", f.target_amplitude, "Target amplitude a");
  cmd->add_option("--coupling-ramp", f.coupling_ramp, "Coupling ramp gamma (eps = gamma t)");
  cmd->add_option("--init-scale", f.init_scale, "Initial amplitude half-width");
  cmd->add_option("--x-clip", f.x_clip, "Amplitude clamp");
}

void add_plan_flags(CLI::App* cmd, PlanFlags& f) {
  cmd->add_option("--n-t", f.n_t, "Transmit antennas");
  cmd->add_option("--n-r", f.n_r, "Receive antennas");
  cmd->add_option("--n-states", f.n_states, "Configurations per antenna");
  cmd->add_option("--instances", f.instances, "Channel instances");
  cmd->add_option("--lambdas", f.lambdas, "Penalty weights")->delimiter(',');
  cmd->add_option("--methods", f.methods, "Methods (ES,NSA,RS,CIM-best,CIM-avg,CIM-raw)")
      ->delimiter(',');
  cmd->add_option("--stride", f.stride, "Trace sampling stride");
  cmd->add_flag("--plot-data", f.plot_data, "Also write per-figure tidy tables");
  cmd->add_flag("--nsa-transmitter-first", f.transmitter_first,
                "Run NSA from the transmitter side first");
  add_cim_flags(cmd, f);
}

void apply_cim_flags(const PlanFlags& f, CimParams& cim) {
  if (f.anneals) cim.n_anneals = *f.anneals;
  if (f.steps) cim.steps = *f.steps;
  if (f.dt) cim.dt = *f.dt;
  if (f.pump) cim.pump = *f.pump;
  if (f.ahc_rate) cim.ahc_rate = *f.ahc_rate;
  if (f.target_amplitude) cim.target_amplitude = *f.target_amplitude;
  if (f.coupling_ramp) cim.coupling_ramp = *f.coupling_ramp;
  if (f.init_scale) cim.init_scale = *f.init_scale;
  if (f.x_clip) cim.x_clip = *f.x_clip;
}

RunConfig resolve(const GlobalFlags& g, const PlanFlags& f) {
  RunConfig config;
  if (g.config) config = racim::run_config_from_json(racim::io::read_json_file(*g.config));
  auto& plan = config.plan;
  if (f.n_t || f.n_r || f.n_states)
    plan.config = racim::MimoConfig(f.n_t.value_or(plan.config.n_t()),
                                    f.n_r.value_or(plan.config.n_r()),
                                    f.n_states.value_or(plan.config.n_states()));
  if (f.instances) plan.n_instances = *f.instances;
  if (f.lambdas) plan.lambdas = *f.lambdas;
  if (f.stride) plan.trace_stride = *f.stride;
  if (f.methods) {
    plan.methods.clear();
    for (const auto& m : *f.methods) plan.methods.push_back(racim::parse_method(m));
  }
  if (f.transmitter_first) plan.nsa_order = racim::NsaOrder::transmitter_first;
  apply_cim_flags(f, plan.cim);
  if (f.lambda) config.trace_lambda = *f.lambda;
  if (f.plot_data) config.plot_data = true;
  if (g.seed) plan.master_seed = *g.seed;
  if (g.workers) plan.workers = *g.workers;
  if (g.out) config.out = *g.out;
  if (g.kernel) plan.kernel = racim::kernels::parse_kind(*g.kernel);
  plan.validate();
  return config;
}

std::string render(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

void write_outputs(const RunConfig& config, const racim::MetricTable& table, bool time_axis) {
  fs::create_directories(config.out);
  racim::io::write_text_file(config.out / "config.json", to_json(config).dump(2) + "\n");
  racim::io::write_text_file(config.out / "results.csv",
                             render([&](std::ostream& o) { racim::io::write_results_csv(o, table); }));
  racim::io::write_text_file(config.out / "summary.json",
                             racim::io::summary_to_json(table).dump(2) + "\n");
  std::string log;
  for (const auto& line : table.log) log += line + "\n";
  for (const auto& v : table.violations) log += "invariant violation: " + v + "\n";
  racim::io::write_text_file(config.out / "run.log", log);
  if (config.plot_data) {
    if (time_axis)
      racim::io::write_text_file(config.out / "plot_time.csv", render([&](std::ostream& o) {
                                   racim::io::write_time_plot_csv(o, table);
                                 }));
    else
      racim::io::write_text_file(config.out / "plot_lambda.csv", render([&](std::ostream& o) {
                                   racim::io::write_lambda_plot_csv(o, table);
                                 }));
  }
}

int finish(const RunConfig& config, const racim::MetricTable& table) {
  for (const auto& line : table.log) std::cerr << line << '\n';
  for (const auto& v : table.violations) std::cerr << "invariant violation: " << v << '\n';
  for (const auto& e : table.summary)
    std::cout << fmt::format("{:<9} lambda={:<6} step={:<5} E_rho={:.6f} (se {:.6f}) P_c={:.4f} n={}\n",
                             racim::method_tag(e.method), e.lambda, e.step, e.e_rho, e.std_error,
                             e.p_c, e.n);
  std::cout << "wrote " << config.out.string() << '\n';
  return table.failed_instances == config.plan.n_instances ? 1 : 0;
}

int cmd_gen(const GlobalFlags& g, const PlanFlags& f) {
  const auto config = resolve(g, f);
  const auto& plan = config.plan;
  fs::create_directories(config.out);
  json seeds = json::array();
  json files = json::array();
  for (std::size_t i = 0; i < plan.n_instances; ++i) {
    const auto seed = racim::derive_seed(plan.master_seed, racim::Stream::channel, i);
    const auto channel = racim::generate_channel(plan.config, seed);
    const auto name = fmt::format("channel_{:05d}.json", i);
    racim::io::write_text_file(config.out / name, racim::io::channel_to_json(channel).dump() + "\n");
    seeds.push_back(seed);
    files.push_back(name);
  }
  const json manifest{{"format", racim::io::kFormatVersion},
                      {"master_seed", plan.master_seed},
                      {"n_t", plan.config.n_t()},
                      {"n_r", plan.config.n_r()},
                      {"n_states", plan.config.n_states()},
                      {"seeds", seeds},
                      {"files", files}};
  racim::io::write_text_file(config.out / "manifest.json", manifest.dump(2) + "\n");
  racim::io::write_text_file(config.out / "config.json", to_json(config).dump(2) + "\n");
  std::cout << "wrote " << plan.n_instances << " channel files to " << config.out.string() << '\n';
  return 0;
}

racim::ChannelMatrix load_channel(const std::string& path) {
  try {
    return racim::io::channel_from_json(racim::io::read_json_file(path));
  } catch (const racim::io::FormatError& ex) {
    throw racim::io::FormatError(path + ": " + ex.what());
  }
}

struct SolveFlags {
  std::string channel;
  double lambda = 0.5;
  std::optional<std::string> export_ising;
  std::optional<std::string> trajectory;
  std::size_t trajectory_anneal = 0;
  std::size_t trajectory_stride = 10;
  std::optional<std::string> report;
};

int cmd_solve(const GlobalFlags& g, const PlanFlags& f, const SolveFlags& s) {
  const auto channel = load_channel(s.channel);
  racim::CimParams cim;
  apply_cim_flags(f, cim);
  cim.validate();
  const std::uint64_t seed = g.seed.value_or(0);
  const std::size_t workers = g.workers.value_or(1);
  const auto kernel = racim::kernels::parse_kind(g.kernel.value_or("auto"));

  const auto instance = racim::compile(channel, s.lambda);
  if (s.export_ising)
    racim::io::write_text_file(*s.export_ising, racim::io::ising_to_json(instance).dump() + "\n");

  const auto fallback_seed = racim::derive_seed(seed, racim::Stream::random_selection, 0);
  const auto rec = racim::run_instance(channel, s.lambda, cim, seed, fallback_seed, workers, kernel);

  if (s.trajectory) {
    auto traced = cim;
    traced.trace_stride = s.trajectory_stride;
    const auto outcome = racim::run_anneal(
        instance, traced, racim::derive_seed(seed, racim::Stream::anneal, s.trajectory_anneal), kernel);
    racim::io::write_text_file(*s.trajectory, render([&](std::ostream& o) {
                                 racim::io::write_trajectory_csv(o, outcome, instance, traced);
                               }));
  }

  json report{{"format", racim::io::kFormatVersion},
              {"lambda", s.lambda},
              {"seed", seed},
              {"channel_seed", channel.seed},
              {"n_anneals", rec.anneals},
              {"feasible_anneals", rec.feasible_anneals},
              {"aborted_anneals", rec.aborted_anneals},
              {"feasible_fraction", rec.feasible_fraction},
              {"best",
               {{"tx", rec.best_assignment.tx},
                {"rx", rec.best_assignment.rx},
                {"objective", rec.best_objective},
                {"from_fallback", rec.best_from_fallback}}},
              {"avg_objective", rec.avg_objective},
              {"raw_avg_objective",
               rec.raw_avg_objective ? json(*rec.raw_avg_objective) : json(nullptr)}};
  const auto text = report.dump(2) + "\n";
  if (s.report) racim::io::write_text_file(*s.report, text);
  std::cout << text;
  return rec.aborted_anneals == rec.anneals ? 1 : 0;
}

int cmd_export(const SolveFlags& s, const std::optional<std::string>& output) {
  const auto channel = load_channel(s.channel);
  const auto text = racim::io::ising_to_json(racim::compile(channel, s.lambda)).dump() + "\n";
  if (output)
    racim::io::write_text_file(*output, text);
  else
    std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfigurable-antenna MIMO configuration selection with an emulated CIM"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Master seed")->envname(env_name("SEED"));
  app.add_option("--workers", g.workers, "Worker threads")->envname(env_name("WORKERS"));
  app.add_option("--out", g.out, "Output directory")->envname(env_name("OUT"));
  app.add_option("--config", g.config, "JSON run config")->envname(env_name("CONFIG"));
  app.add_option("--kernel", g.kernel, "Kernel variant: auto, scalar, avx2, neon")
      ->envname(env_name("KERNEL"));

  PlanFlags f;
  SolveFlags s;
  std::optional<std::string> export_output;

  auto* gen = app.add_subcommand("gen", "Write channel instance files and a manifest");
  gen->add_option("--n-t", f.n_t);
  gen->add_option("--n-r", f.n_r);
  gen->add_option("--n-states", f.n_states);
  gen->add_option("--instances", f.instances);

  auto* solve = app.add_subcommand("solve", "Solve one channel file with the CIM");
  solve->add_option("--channel", s.channel, "Channel JSON file")->required();
  solve->add_option("--lambda", s.lambda, "Penalty weight in [0, 1]");
  solve->add_option("--export-ising", s.export_ising, "Also write the Ising instance JSON");
  solve->add_option("--trajectory", s.trajectory, "Write one anneal's readout trajectory CSV");
  solve->add_option("--trajectory-anneal", s.trajectory_anneal, "Anneal index for --trajectory");
  solve->add_option("--trajectory-stride", s.trajectory_stride, "Sampling stride for --trajectory");
  solve->add_option("--report", s.report, "Also write the report JSON here");
  add_cim_flags(solve, f);

  auto* exp = app.add_subcommand("export-ising", "Compile a channel file to an Ising instance");
  exp->add_option("--channel", s.channel, "Channel JSON file")->required();
  exp->add_option("--lambda", s.lambda, "Penalty weight in [0, 1]");
  exp->add_option("--output", export_output, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "E_rho and P_c versus lambda");
  add_plan_flags(sweep, f);
  auto* trace = app.add_subcommand("trace", "E_rho and P_c versus integration step");
  add_plan_flags(trace, f);
  trace->add_option("--lambda", f.lambda, "Lambda to trace (default: first of --lambdas)");
  auto* compare = app.add_subcommand("compare", "Compare methods at one lambda");
  add_plan_flags(compare, f);

  // Global options may appear after the subcommand too.
  for (auto* sub : {gen, solve, exp, sweep, trace, compare}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(g, f);
    if (*solve) return cmd_solve(g, f, s);
    if (*exp) return cmd_export(s, export_output);
    if (*sweep) {
      const auto config = resolve(g, f);
      const auto table = racim::sweep_lambda(config.plan);
      write_outputs(config, table, false);
      return finish(config, table);
    }
    if (*trace) {
      auto config = resolve(g, f);
      const double lambda = config.trace_lambda.value_or(config.plan.lambdas.front());
      config.trace_lambda = lambda;
      const auto table = racim::time_trace(config.plan, lambda);
      write_outputs(config, table, true);
      return finish(config, table);
    }
    if (*compare) {
      const auto config = resolve(g, f);
      const auto table = racim::compare_methods(config.plan);
      write_outputs(config, table, false);
      for (const auto& gap : table.gaps)
        std::cout << fmt::format("{} - {}: {:+.6f} (se {:.6f})\n", racim::method_tag(gap.higher),
                                 racim::method_tag(gap.lower), gap.mean_difference, gap.std_error);
      return finish(config, table);
    }
  } catch (const std::exception& ex) {
    std::cerr << "racim: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
