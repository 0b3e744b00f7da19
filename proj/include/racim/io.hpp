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

// File formats. All JSON documents and CSV tables are written with
// shortest round-trip number formatting, so equal inputs give byte-identical
// files.
//
// Channel file (JSON):
//   {"n_t", "n_r", "n_states", "seed",
//    "entries": [[{"re": f64, "im": f64}, ...], ...]}
//   row-major, N*N_R rows of N*N_T entries. Rows/columns use 0-based flat
//   indices: antenna * n_states + state.
//
// Ising instance (JSON):
//   {"format": 1, "dim", "lambda", "n_t", "n_r", "n_states", "seed",
//    "j": [J_01, J_02, ..., J_0(dim-1), J_12, ...]}
//   strict upper triangle, row-major; the matrix is symmetric with a zero
//   diagonal. Index 0 is the auxiliary spin. The solver maximizes s^T J s.
//
// Results CSV: instance_id,method,lambda,step,objective,feasible,fallback,seed
// Summary JSON: {"format": 1, "entries": [{"method", "lambda", "step",
//   "e_rho", "p_c", "stderr", "n"}, ...]}

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "racim/bench.hpp"
#include "racim/channel.hpp"
#include "racim/cim.hpp"
#include "racim/formulation.hpp"

namespace racim::io {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kResultsHeader =
    "instance_id,method,lambda,step,objective,feasible,fallback,seed";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json channel_to_json(const ChannelMatrix& channel);
/// Throws FormatError naming the offending field.
ChannelMatrix channel_from_json(const nlohmann::json& doc);

nlohmann::json ising_to_json(const IsingInstance& instance);
IsingInstance ising_from_json(const nlohmann::json& doc);

std::string format_number(double v);

void write_results_csv(std::ostream& out, const MetricTable& table);
nlohmann::json summary_to_json(const MetricTable& table);

/// step,t,s_0..s_{dim-1},energy for the initial readout and every sampled step.
void write_trajectory_csv(std::ostream& out, const AnnealOutcome& outcome,
                          const IsingInstance& instance, const CimParams& params);

/// Tidy per-figure tables: lambda vs E_rho / P_c, and step vs E_rho / P_c.
void write_lambda_plot_csv(std::ostream& out, const MetricTable& table);
void write_time_plot_csv(std::ostream& out, const MetricTable& table);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace racim::io
