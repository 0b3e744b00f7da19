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

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "racim/bench.hpp"

namespace racim {

/// Everything a CLI run needs. Loadable from JSON; missing keys keep their
/// defaults, unknown keys are rejected. Each run echoes its effective config
/// to <out>/config.json.
struct RunConfig {
  ExperimentPlan plan;
  std::filesystem::path out = "racim-out";
  bool plot_data = false;
  /// Lambda used by `trace`; defaults to plan.lambdas.front().
  std::optional<double> trace_lambda;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& doc, RunConfig base = {});

}  // namespace racim
