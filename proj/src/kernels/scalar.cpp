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

#include "racim/kernels.hpp"

namespace racim::kernels {

namespace {

void coupling_field_scalar(const double* j, const double* x, double* field, std::size_t n) {
  const std::size_t whole = n - n % 4;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = j + i * n;
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t c = 0;
    for (; c < whole; c += 4) {
      acc[0] += row[c + 0] * x[c + 0];
      acc[1] += row[c + 1] * x[c + 1];
      acc[2] += row[c + 2] * x[c + 2];
      acc[3] += row[c + 3] * x[c + 3];
    }
    // Masked lanes contribute +0.0, matching a zero-filled masked load.
    for (std::size_t lane = 0; lane < 4; ++lane)
      acc[lane] += c + lane < n ? row[c + lane] * x[c + lane] : 0.0;
    field[i] = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  }
}

void euler_update_scalar(double* x, double* e, const double* field, std::size_t n,
                         const EulerCoefficients& c) {
  for (std::size_t i = 0; i < n; ++i) euler_lane(x[i], e[i], field[i], c);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", coupling_field_scalar, euler_update_scalar};
  return table;
}

}  // namespace racim::kernels
