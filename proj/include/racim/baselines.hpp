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

#include <cstdint>
#include <stdexcept>

#include "racim/channel.hpp"
#include "racim/rng.hpp"

namespace racim {

struct BaselineResult {
  ConfigAssignment assignment;
  double objective = 0.0;
  /// Objective evaluations (ES) or norm computations (NSA); zero for RS.
  std::uint64_t evaluations = 0;
};

inline constexpr std::uint64_t kExhaustiveBudget = std::uint64_t{1} << 24;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// N^(N_T + N_R), saturating at UINT64_MAX.
std::uint64_t exhaustive_count(const MimoConfig& config);

/// Optimal assignment by enumeration; ties go to the lexicographically
/// smallest (tx..., rx...) tuple. Refuses instances above `budget`.
BaselineResult exhaustive_search(const ChannelMatrix& channel,
                                 std::uint64_t budget = kExhaustiveBudget);

enum class NsaOrder { receiver_first, transmitter_first };

/// Norm-based selection: one end picks its strongest full row (column)
/// norms, the other end then picks the strongest norms restricted to those
/// selections. Ties go to the smaller configuration index.
BaselineResult norm_based_selection(const ChannelMatrix& channel,
                                    NsaOrder order = NsaOrder::receiver_first);

ConfigAssignment random_assignment(const MimoConfig& config, Rng& rng);

BaselineResult random_selection(const ChannelMatrix& channel, Rng& rng);

}  // namespace racim
