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

// Inner loops of the CIM integrator. Every variant reproduces the scalar
// reference bit for bit: the coupling reduction runs over four interleaved
// partial sums combined as (acc0 + acc2) + (acc1 + acc3), which is exactly
// the AVX2 lane layout and its 128-bit horizontal fold, and no variant uses
// fused multiply-add.

#include <cstddef>
#include <span>
#include <string_view>

namespace racim::kernels {

struct EulerCoefficients {
  double dt;
  double gain;          // p - 1
  double neg_ahc_rate;  // -beta
  double target_amplitude;
  double coupling;      // eps = gamma * t at the step's start
  double x_clip;
  double e_floor;
};

/// field[i] = sum_j j[i*n + j] * x[j]; j is dense row-major n x n.
using CouplingFieldFn = void (*)(const double* j, const double* x, double* field, std::size_t n);

/// One explicit Euler step of the amplitude / error-variable dynamics,
/// in place. The error update reads the pre-update amplitude.
using EulerUpdateFn = void (*)(double* x, double* e, const double* field, std::size_t n,
                               const EulerCoefficients& c);

struct KernelTable {
  std::string_view name;
  CouplingFieldFn coupling_field;
  EulerUpdateFn euler_update;
};

enum class KernelKind { automatic, scalar, avx2, neon };

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in.
const KernelTable* avx2_table();
const KernelTable* neon_table();

bool available(KernelKind kind);

/// Best available variant for `automatic`; throws std::invalid_argument if an
/// explicitly requested variant is not available on this build or CPU.
const KernelTable& select(KernelKind kind = KernelKind::automatic);

KernelKind parse_kind(std::string_view name);
std::string_view kind_name(KernelKind kind);

/// Scalar lane body shared by every variant's tail handling.
inline void euler_lane(double& x, double& e, double field, const EulerCoefficients& c) {
  const double x2 = x * x;
  const double dx = (c.gain * x - x2 * x) + (c.coupling * e) * field;
  const double de = (c.neg_ahc_rate * (x2 - c.target_amplitude)) * e;
  double xn = x + c.dt * dx;
  double en = e + c.dt * de;
  // NaN falls through both guards, as with maxpd(floor, v) / minpd(clip, v).
  en = en < c.e_floor ? c.e_floor : en;
  xn = xn < -c.x_clip ? -c.x_clip : xn;
  xn = xn > c.x_clip ? c.x_clip : xn;
  x = xn;
  e = en;
}

}  // namespace racim::kernels
