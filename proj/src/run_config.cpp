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

#include "racim/run_config.hpp"

#include <set>
#include <stdexcept>

#include "racim/io.hpp"

namespace racim {

using nlohmann::json;

namespace {

json cim_to_json(const CimParams& p) {
  return {{"pump", p.pump},
          {"ahc_rate", p.ahc_rate},
          {"target_amplitude", p.target_amplitude},
          {"coupling_ramp", p.coupling_ramp},
          {"dt", p.dt},
          {"steps", p.steps},
          {"n_anneals", p.n_anneals},
          {"init_scale", p.init_scale},
          {"x_clip", p.x_clip}};
}

template <class T>
void take(const json& doc, const char* key, T& target) {
  if (!doc.contains(key)) return;
  try {
    target = doc.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw io::FormatError(std::string("config field '") + key + "': " + ex.what());
  }
}

void reject_unknown(const json& doc, std::initializer_list<const char*> known, const char* where) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : doc.items())
    if (!allowed.count(key))
      throw io::FormatError(std::string("unknown ") + where + " field '" + key + "'");
}

}  // namespace

json to_json(const RunConfig& config) {
  const auto& plan = config.plan;
  json methods = json::array();
  for (Method m : plan.methods) methods.push_back(std::string(method_tag(m)));
  json doc{{"format", io::kFormatVersion},
           {"n_t", plan.config.n_t()},
           {"n_r", plan.config.n_r()},
           {"n_states", plan.config.n_states()},
           {"n_instances", plan.n_instances},
           {"lambdas", plan.lambdas},
           {"master_seed", plan.master_seed},
           {"trace_stride", plan.trace_stride},
           {"workers", plan.workers},
           {"kernel", std::string(kernels::kind_name(plan.kernel))},
           {"methods", methods},
           {"nsa_order", plan.nsa_order == NsaOrder::receiver_first ? "receiver_first"
                                                                     : "transmitter_first"},
           {"es_budget", plan.es_budget},
           {"cim", cim_to_json(plan.cim)},
           {"out", config.out.string()},
           {"plot_data", config.plot_data}};
  if (config.trace_lambda) doc["trace_lambda"] = *config.trace_lambda;
  return doc;
}

RunConfig run_config_from_json(const json& doc, RunConfig base) {
  if (!doc.is_object()) throw io::FormatError("config must be a JSON object");
  reject_unknown(doc,
                 {"format", "n_t", "n_r", "n_states", "n_instances", "lambdas", "master_seed",
                  "trace_stride", "workers", "kernel", "methods", "nsa_order", "es_budget", "cim",
                  "out", "plot_data", "trace_lambda"},
                 "config");
  auto& plan = base.plan;
  std::size_t n_t = plan.config.n_t(), n_r = plan.config.n_r(), n_states = plan.config.n_states();
  take(doc, "n_t", n_t);
  take(doc, "n_r", n_r);
  take(doc, "n_states", n_states);
  plan.config = MimoConfig(n_t, n_r, n_states);
  take(doc, "n_instances", plan.n_instances);
  take(doc, "lambdas", plan.lambdas);
  take(doc, "master_seed", plan.master_seed);
  take(doc, "trace_stride", plan.trace_stride);
  take(doc, "workers", plan.workers);
  take(doc, "es_budget", plan.es_budget);
  if (doc.contains("kernel")) plan.kernel = kernels::parse_kind(doc.at("kernel").get<std::string>());
  if (doc.contains("methods")) {
    plan.methods.clear();
    for (const auto& m : doc.at("methods")) plan.methods.push_back(parse_method(m.get<std::string>()));
  }
  if (doc.contains("nsa_order")) {
    const auto order = doc.at("nsa_order").get<std::string>();
    if (order == "receiver_first")
      plan.nsa_order = NsaOrder::receiver_first;
    else if (order == "transmitter_first")
      plan.nsa_order = NsaOrder::transmitter_first;
    else
      throw io::FormatError("config field 'nsa_order': unknown value '" + order + "'");
  }
  if (doc.contains("cim")) {
    const auto& c = doc.at("cim");
    reject_unknown(c,
                   {"pump", "ahc_rate", "target_amplitude", "coupling_ramp", "dt", "steps",
                    "n_anneals", "init_scale", "x_clip"},
                   "cim");
    take(c, "pump", plan.cim.pump);
    take(c, "ahc_rate", plan.cim.ahc_rate);
    take(c, "target_amplitude", plan.cim.target_amplitude);
    take(c, "coupling_ramp", plan.cim.coupling_ramp);
    take(c, "dt", plan.cim.dt);
    take(c, "steps", plan.cim.steps);
    take(c, "n_anneals", plan.cim.n_anneals);
    take(c, "init_scale", plan.cim.init_scale);
    take(c, "x_clip", plan.cim.x_clip);
  }
  std::string out = base.out.string();
  take(doc, "out", out);
  base.out = out;
  take(doc, "plot_data", base.plot_data);
  if (doc.contains("trace_lambda")) base.trace_lambda = doc.at("trace_lambda").get<double>();
  return base;
}

}  // namespace racim
