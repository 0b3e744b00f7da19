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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "racim/matrix.hpp"

namespace racim {

/// Problem dimensions: N_T transmit and N_R receive antennas with N
/// selectable configurations each.
class MimoConfig {
 public:
  MimoConfig(std::size_t n_t, std::size_t n_r, std::size_t n_states);

  std::size_t n_t() const noexcept { return n_t_; }
  std::size_t n_r() const noexcept { return n_r_; }
  std::size_t n_states() const noexcept { return n_states_; }

  std::size_t antennas() const noexcept { return n_t_ + n_r_; }
  /// Binary decision variables d = N (N_T + N_R).
  std::size_t variables() const noexcept { return n_states_ * antennas(); }
  std::size_t rows() const noexcept { return n_states_ * n_r_; }
  std::size_t cols() const noexcept { return n_states_ * n_t_; }

  friend bool operator==(const MimoConfig&, const MimoConfig&) = default;

 private:
  std::size_t n_t_;
  std::size_t n_r_;
  std::size_t n_states_;
};

/// Complete channel over every (receive configuration, transmit configuration)
/// pair. Row index = flat_index(rx antenna, rx state), column index =
/// flat_index(tx antenna, tx state), both 0-based.
struct ChannelMatrix {
  MimoConfig config;
  ComplexMatrix entries;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on shape mismatch or non-finite entries.
  void validate() const;
};

/// One active configuration per antenna.
struct ConfigAssignment {
  std::vector<std::size_t> tx;
  std::vector<std::size_t> rx;

  void validate(const MimoConfig& config) const;

  friend bool operator==(const ConfigAssignment&, const ConfigAssignment&) = default;
  friend auto operator<=>(const ConfigAssignment&, const ConfigAssignment&) = default;
};

struct AntennaState {
  std::size_t antenna;
  std::size_t state;

  friend bool operator==(const AntennaState&, const AntennaState&) = default;
};

std::size_t flat_index(std::size_t antenna, std::size_t state, std::size_t n_states);
AntennaState unflatten(std::size_t index, std::size_t n_states);

/// i.i.d. CN(0,1) entries, deterministic in (config, seed).
ChannelMatrix generate_channel(const MimoConfig& config, std::uint64_t seed);

/// Received SNR objective Tr(H H^H) for H = Y G X, i.e. the sum of |g|^2 over
/// the selected (rx, tx) entries.
double objective(const ChannelMatrix& channel, const ConfigAssignment& selection);

}  // namespace racim
