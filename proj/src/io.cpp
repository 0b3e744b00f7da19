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

#include "racim/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <ostream>
#include <sstream>

namespace racim::io {

using nlohmann::json;

namespace {

template <class T>
T field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name))
    throw FormatError(std::string("missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& ex) {
    throw FormatError(std::string("field '") + name + "': " + ex.what());
  }
}

}  // namespace

json channel_to_json(const ChannelMatrix& channel) {
  channel.validate();
  json rows = json::array();
  for (std::size_t r = 0; r < channel.entries.rows(); ++r) {
    json row = json::array();
    for (const auto& g : channel.entries.row(r)) row.push_back({{"re", g.real()}, {"im", g.imag()}});
    rows.push_back(std::move(row));
  }
  return {{"n_t", channel.config.n_t()},
          {"n_r", channel.config.n_r()},
          {"n_states", channel.config.n_states()},
          {"seed", channel.seed},
          {"entries", std::move(rows)}};
}

ChannelMatrix channel_from_json(const json& doc) {
  const auto n_t = field<std::size_t>(doc, "n_t");
  const auto n_r = field<std::size_t>(doc, "n_r");
  const auto n_states = field<std::size_t>(doc, "n_states");
  const auto seed = field<std::uint64_t>(doc, "seed");
  std::optional<MimoConfig> config;
  try {
    config.emplace(n_t, n_r, n_states);
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string("field 'n_t'/'n_r'/'n_states': ") + ex.what());
  }
  const auto& entries = doc.contains("entries") ? doc.at("entries") : json();
  if (!entries.is_array()) throw FormatError("missing field 'entries'");
  if (entries.size() != config->rows())
    throw FormatError("field 'entries': expected " + std::to_string(config->rows()) +
                      " rows, got " + std::to_string(entries.size()));
  ChannelMatrix channel{*config, ComplexMatrix(config->rows(), config->cols()), seed};
  for (std::size_t r = 0; r < config->rows(); ++r) {
    const auto& row = entries[r];
    if (!row.is_array() || row.size() != config->cols())
      throw FormatError("field 'entries': row " + std::to_string(r) + " must have " +
                        std::to_string(config->cols()) + " entries");
    for (std::size_t c = 0; c < config->cols(); ++c)
      channel.entries(r, c) = {field<double>(row[c], "re"), field<double>(row[c], "im")};
  }
  try {
    channel.validate();
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string("field 'entries': ") + ex.what());
  }
  return channel;
}

json ising_to_json(const IsingInstance& instance) {
  json upper = json::array();
  for (std::size_t i = 0; i < instance.dim(); ++i)
    for (std::size_t j = i + 1; j < instance.dim(); ++j) upper.push_back(instance.j(i, j));
  return {{"format", kFormatVersion},
          {"dim", instance.dim()},
          {"lambda", instance.lambda},
          {"n_t", instance.config.n_t()},
          {"n_r", instance.config.n_r()},
          {"n_states", instance.config.n_states()},
          {"seed", instance.channel_seed},
          {"j", std::move(upper)}};
}

IsingInstance ising_from_json(const json& doc) {
  if (doc.contains("format") && field<int>(doc, "format") != kFormatVersion)
    throw FormatError("field 'format': unsupported version " + doc.at("format").dump());
  const auto dim = field<std::size_t>(doc, "dim");
  const auto values = field<std::vector<double>>(doc, "j");
  if (values.size() != dim * (dim - 1) / 2)
    throw FormatError("field 'j': expected " + std::to_string(dim * (dim - 1) / 2) + " values");
  IsingInstance out{RealMatrix(dim, dim, 0.0), field<double>(doc, "lambda"),
                    MimoConfig(field<std::size_t>(doc, "n_t"), field<std::size_t>(doc, "n_r"),
                               field<std::size_t>(doc, "n_states")),
                    field<std::uint64_t>(doc, "seed")};
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      out.j(i, j) = values[k];
      out.j(j, i) = values[k++];
    }
  return out;
}

std::string format_number(double v) { return fmt::format("{}", v); }

void write_results_csv(std::ostream& out, const MetricTable& table) {
  out << kResultsHeader << '\n';
  for (const auto& r : table.rows) {
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.instance_id, method_tag(r.method), r.lambda,
                       r.step, r.objective, r.feasible ? 1 : 0, r.fallback ? 1 : 0, r.seed);
  }
}

json summary_to_json(const MetricTable& table) {
  json entries = json::array();
  for (const auto& e : table.summary) {
    entries.push_back({{"method", std::string(method_tag(e.method))},
                       {"lambda", e.lambda},
                       {"step", e.step},
                       {"e_rho", e.e_rho},
                       {"p_c", e.p_c},
                       {"stderr", e.std_error},
                       {"n", e.n}});
  }
  json gaps = json::array();
  for (const auto& g : table.gaps) {
    gaps.push_back({{"higher", std::string(method_tag(g.higher))},
                    {"lower", std::string(method_tag(g.lower))},
                    {"lambda", g.lambda},
                    {"mean_difference", g.mean_difference},
                    {"stderr", g.std_error},
                    {"n", g.n}});
  }
  json doc{{"format", kFormatVersion}, {"entries", std::move(entries)}};
  if (!gaps.empty()) doc["paired_gaps"] = std::move(gaps);
  if (!table.violations.empty()) doc["violations"] = table.violations;
  return doc;
}

void write_trajectory_csv(std::ostream& out, const AnnealOutcome& outcome,
                          const IsingInstance& instance, const CimParams& params) {
  out << "step,t";
  for (std::size_t i = 0; i < instance.dim(); ++i) out << ",s" << i;
  out << ",energy\n";
  auto emit = [&](std::size_t step, const SpinVector& s) {
    out << step << ',' << format_number(static_cast<double>(step) * params.dt);
    for (auto v : s) out << ',' << static_cast<int>(v);
    out << ',' << format_number(spin_energy(instance.j, s)) << '\n';
  };
  if (!outcome.initial_spins.empty()) emit(0, outcome.initial_spins);
  for (std::size_t k = 0; k < outcome.trajectory.size(); ++k)
    emit((k + 1) * params.trace_stride, outcome.trajectory[k]);
}

void write_lambda_plot_csv(std::ostream& out, const MetricTable& table) {
  out << "lambda,method,e_rho,stderr,p_c\n";
  for (const auto& e : table.summary)
    out << fmt::format("{},{},{},{},{}\n", e.lambda, method_tag(e.method), e.e_rho, e.std_error,
                       e.p_c);
}

void write_time_plot_csv(std::ostream& out, const MetricTable& table) {
  out << "step,method,e_rho,stderr,p_c\n";
  for (const auto& e : table.summary)
    out << fmt::format("{},{},{},{},{}\n", e.step, method_tag(e.method), e.e_rho, e.std_error,
                       e.p_c);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace racim::io
