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

// AArch64 variant. Two float64x2 accumulators hold the four scalar lanes so
// the reduction order matches the reference.
#include <arm_neon.h>

#include "racim/kernels.hpp"

namespace racim::kernels {

namespace {

void coupling_field_neon(const double* j, const double* x, double* field, std::size_t n) {
  const std::size_t whole = n - n % 4;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = j + i * n;
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    std::size_t c = 0;
    for (; c < whole; c += 4) {
      acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(row + c), vld1q_f64(x + c)));
      acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(row + c + 2), vld1q_f64(x + c + 2)));
    }
    double jr[4] = {0.0, 0.0, 0.0, 0.0};
    double xr[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t lane = 0; c + lane < n; ++lane) {
      jr[lane] = row[c + lane];
      xr[lane] = x[c + lane];
    }
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(jr), vld1q_f64(xr)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(jr + 2), vld1q_f64(xr + 2)));
    const float64x2_t folded = vaddq_f64(acc01, acc23);
    field[i] = vgetq_lane_f64(folded, 0) + vgetq_lane_f64(folded, 1);
  }
}

void euler_update_neon(double* x, double* e, const double* field, std::size_t n,
                       const EulerCoefficients& c) {
  const float64x2_t dt = vdupq_n_f64(c.dt);
  const float64x2_t gain = vdupq_n_f64(c.gain);
  const float64x2_t neg_rate = vdupq_n_f64(c.neg_ahc_rate);
  const float64x2_t target = vdupq_n_f64(c.target_amplitude);
  const float64x2_t coupling = vdupq_n_f64(c.coupling);
  const float64x2_t hi = vdupq_n_f64(c.x_clip);
  const float64x2_t lo = vdupq_n_f64(-c.x_clip);
  const float64x2_t floor = vdupq_n_f64(c.e_floor);

  const std::size_t whole = n - n % 2;
  std::size_t i = 0;
  for (; i < whole; i += 2) {
    const float64x2_t xv = vld1q_f64(x + i);
    const float64x2_t ev = vld1q_f64(e + i);
    const float64x2_t fv = vld1q_f64(field + i);
    const float64x2_t x2 = vmulq_f64(xv, xv);
    const float64x2_t dx = vaddq_f64(vsubq_f64(vmulq_f64(gain, xv), vmulq_f64(x2, xv)),
                                     vmulq_f64(vmulq_f64(coupling, ev), fv));
    const float64x2_t de = vmulq_f64(vmulq_f64(neg_rate, vsubq_f64(x2, target)), ev);
    float64x2_t xn = vaddq_f64(xv, vmulq_f64(dt, dx));
    float64x2_t en = vaddq_f64(ev, vmulq_f64(dt, de));
    // Compare-and-select keeps NaN propagation identical to the scalar lane.
    en = vbslq_f64(vcltq_f64(en, floor), floor, en);
    xn = vbslq_f64(vcltq_f64(xn, lo), lo, xn);
    xn = vbslq_f64(vcgtq_f64(xn, hi), hi, xn);
    vst1q_f64(x + i, xn);
    vst1q_f64(e + i, en);
  }
  for (; i < n; ++i) euler_lane(x[i], e[i], field[i], c);
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{"neon", coupling_field_neon, euler_update_neon};
  return &table;
}

}  // namespace racim::kernels
