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

#include "racim/baselines.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace racim {

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("exhaustive search needs " + std::to_string(required) +
                         " objective evaluations, budget is " + std::to_string(budget)),
      required_(required) {}

std::uint64_t exhaustive_count(const MimoConfig& config) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < config.antennas(); ++i) {
    if (count > kMax / config.n_states()) return kMax;
    count *= config.n_states();
  }
  return count;
}

BaselineResult exhaustive_search(const ChannelMatrix& channel, std::uint64_t budget) {
  channel.validate();
  const auto& cfg = channel.config;
  const std::uint64_t total = exhaustive_count(cfg);
  if (total > budget) throw BudgetExceeded(total, budget);

  // Odometer over (tx..., rx...) with the last digit fastest, which visits
  // assignments in lexicographic order; strict improvement keeps the first.
  std::vector<std::size_t> digits(cfg.antennas(), 0);
  ConfigAssignment current{std::vector<std::size_t>(cfg.n_t(), 0),
                           std::vector<std::size_t>(cfg.n_r(), 0)};
  BaselineResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  for (std::uint64_t visit = 0; visit < total; ++visit) {
    for (std::size_t t = 0; t < cfg.n_t(); ++t) current.tx[t] = digits[t];
    for (std::size_t r = 0; r < cfg.n_r(); ++r) current.rx[r] = digits[cfg.n_t() + r];
    const double value = objective(channel, current);
    ++best.evaluations;
    if (value > best.objective) {
      best.objective = value;
      best.assignment = current;
    }
    for (std::size_t pos = digits.size(); pos-- > 0;) {
      if (++digits[pos] < cfg.n_states()) break;
      digits[pos] = 0;
    }
  }
  return best;
}

namespace {

// Squared Euclidean norm of row `row` over the given column set.
double row_energy(const ComplexMatrix& g, std::size_t row, const std::vector<std::size_t>& cols) {
  double sum = 0.0;
  for (auto c : cols) sum += std::norm(g(row, c));
  return sum;
}

double col_energy(const ComplexMatrix& g, std::size_t col, const std::vector<std::size_t>& rows) {
  double sum = 0.0;
  for (auto r : rows) sum += std::norm(g(r, col));
  return sum;
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

BaselineResult norm_based_selection(const ChannelMatrix& channel, NsaOrder order) {
  channel.validate();
  const auto& cfg = channel.config;
  const auto& g = channel.entries;
  const std::size_t n = cfg.n_states();
  BaselineResult out;
  out.assignment.tx.assign(cfg.n_t(), 0);
  out.assignment.rx.assign(cfg.n_r(), 0);

  // Norms are compared squared; the argmax is the same.
  auto pick_rows = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < cfg.n_r(); ++r) {
      double best = -1.0;
      for (std::size_t c = 0; c < n; ++c) {
        const double v = row_energy(g, flat_index(r, c, n), cols);
        ++out.evaluations;
        if (v > best) {
          best = v;
          out.assignment.rx[r] = c;
        }
      }
      chosen.push_back(flat_index(r, out.assignment.rx[r], n));
    }
    return chosen;
  };
  auto pick_cols = [&](const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> chosen;
    for (std::size_t t = 0; t < cfg.n_t(); ++t) {
      double best = -1.0;
      for (std::size_t c = 0; c < n; ++c) {
        const double v = col_energy(g, flat_index(t, c, n), rows);
        ++out.evaluations;
        if (v > best) {
          best = v;
          out.assignment.tx[t] = c;
        }
      }
      chosen.push_back(flat_index(t, out.assignment.tx[t], n));
    }
    return chosen;
  };

  if (order == NsaOrder::receiver_first) {
    pick_cols(pick_rows(iota(cfg.cols())));
  } else {
    pick_rows(pick_cols(iota(cfg.rows())));
  }
  out.objective = objective(channel, out.assignment);
  return out;
}

ConfigAssignment random_assignment(const MimoConfig& config, Rng& rng) {
  ConfigAssignment out;
  out.tx.resize(config.n_t());
  out.rx.resize(config.n_r());
  for (auto& s : out.tx) s = rng.below(config.n_states());
  for (auto& s : out.rx) s = rng.below(config.n_states());
  return out;
}

BaselineResult random_selection(const ChannelMatrix& channel, Rng& rng) {
  BaselineResult out;
  out.assignment = random_assignment(channel.config, rng);
  out.objective = objective(channel, out.assignment);
  return out;
}

}  // namespace racim
