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

#include "racim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "racim/rng.hpp"

namespace racim {

MimoConfig::MimoConfig(std::size_t n_t, std::size_t n_r, std::size_t n_states)
    : n_t_(n_t), n_r_(n_r), n_states_(n_states) {
  if (n_t == 0 || n_r == 0 || n_states == 0)
    throw std::invalid_argument("MimoConfig: n_t, n_r and n_states must be >= 1");
}

void ChannelMatrix::validate() const {
  if (entries.rows() != config.rows() || entries.cols() != config.cols())
    throw std::invalid_argument("ChannelMatrix: entries are " +
                                std::to_string(entries.rows()) + "x" +
                                std::to_string(entries.cols()) + ", expected " +
                                std::to_string(config.rows()) + "x" +
                                std::to_string(config.cols()));
  for (const auto& g : entries.values())
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      throw std::invalid_argument("ChannelMatrix: non-finite entry");
}

void ConfigAssignment::validate(const MimoConfig& config) const {
  if (tx.size() != config.n_t() || rx.size() != config.n_r())
    throw std::invalid_argument("ConfigAssignment: antenna count mismatch");
  for (auto s : tx)
    if (s >= config.n_states()) throw std::invalid_argument("ConfigAssignment: tx state out of range");
  for (auto s : rx)
    if (s >= config.n_states()) throw std::invalid_argument("ConfigAssignment: rx state out of range");
}

std::size_t flat_index(std::size_t antenna, std::size_t state, std::size_t n_states) {
  if (n_states == 0 || state >= n_states)
    throw std::out_of_range("flat_index: state " + std::to_string(state) +
                            " out of range for " + std::to_string(n_states) + " states");
  return antenna * n_states + state;
}

AntennaState unflatten(std::size_t index, std::size_t n_states) {
  if (n_states == 0) throw std::out_of_range("unflatten: zero states");
  return {index / n_states, index % n_states};
}

ChannelMatrix generate_channel(const MimoConfig& config, std::uint64_t seed) {
  ChannelMatrix channel{config, ComplexMatrix(config.rows(), config.cols()), seed};
  Rng rng(seed);
  // Unit total variance: each quadrature carries 1/2.
  const double sigma = std::sqrt(0.5);
  for (auto& g : channel.entries.values()) {
    const double re = sigma * rng.normal();
    const double im = sigma * rng.normal();
    g = {re, im};
  }
  return channel;
}

double objective(const ChannelMatrix& channel, const ConfigAssignment& selection) {
  const auto& cfg = channel.config;
  selection.validate(cfg);
  double total = 0.0;
  for (std::size_t r = 0; r < cfg.n_r(); ++r) {
    const auto row = flat_index(r, selection.rx[r], cfg.n_states());
    for (std::size_t t = 0; t < cfg.n_t(); ++t)
      total += std::norm(channel.entries(row, flat_index(t, selection.tx[t], cfg.n_states())));
  }
  return total;
}

}  // namespace racim
