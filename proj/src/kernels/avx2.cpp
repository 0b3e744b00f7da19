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

// Built with -mavx2 only; reached through select() after a CPUID check.
#include <immintrin.h>

#include "racim/kernels.hpp"

namespace racim::kernels {

namespace {

__m256i tail_mask(std::size_t remaining) {
  const __m256i lanes = _mm256_setr_epi64x(0, 1, 2, 3);
  return _mm256_cmpgt_epi64(_mm256_set1_epi64x(static_cast<long long>(remaining)), lanes);
}

void coupling_field_avx2(const double* j, const double* x, double* field, std::size_t n) {
  const std::size_t whole = n - n % 4;
  const __m256i mask = tail_mask(n % 4);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = j + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c < whole; c += 4)
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(x + c)));
    const __m256d tail =
        _mm256_mul_pd(_mm256_maskload_pd(row + c, mask), _mm256_maskload_pd(x + c, mask));
    acc = _mm256_add_pd(acc, tail);
    const __m128d folded = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    field[i] = _mm_cvtsd_f64(_mm_add_sd(folded, _mm_unpackhi_pd(folded, folded)));
  }
}

void euler_update_avx2(double* x, double* e, const double* field, std::size_t n,
                       const EulerCoefficients& c) {
  const __m256d dt = _mm256_set1_pd(c.dt);
  const __m256d gain = _mm256_set1_pd(c.gain);
  const __m256d neg_rate = _mm256_set1_pd(c.neg_ahc_rate);
  const __m256d target = _mm256_set1_pd(c.target_amplitude);
  const __m256d coupling = _mm256_set1_pd(c.coupling);
  const __m256d hi = _mm256_set1_pd(c.x_clip);
  const __m256d lo = _mm256_set1_pd(-c.x_clip);
  const __m256d floor = _mm256_set1_pd(c.e_floor);

  const std::size_t whole = n - n % 4;
  std::size_t i = 0;
  for (; i < whole; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d ev = _mm256_loadu_pd(e + i);
    const __m256d fv = _mm256_loadu_pd(field + i);
    const __m256d x2 = _mm256_mul_pd(xv, xv);
    const __m256d dx = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(gain, xv), _mm256_mul_pd(x2, xv)),
                                     _mm256_mul_pd(_mm256_mul_pd(coupling, ev), fv));
    const __m256d de = _mm256_mul_pd(_mm256_mul_pd(neg_rate, _mm256_sub_pd(x2, target)), ev);
    __m256d xn = _mm256_add_pd(xv, _mm256_mul_pd(dt, dx));
    __m256d en = _mm256_add_pd(ev, _mm256_mul_pd(dt, de));
    en = _mm256_max_pd(floor, en);
    xn = _mm256_min_pd(hi, _mm256_max_pd(lo, xn));
    _mm256_storeu_pd(x + i, xn);
    _mm256_storeu_pd(e + i, en);
  }
  for (; i < n; ++i) euler_lane(x[i], e[i], field[i], c);
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", coupling_field_avx2, euler_update_avx2};
  return &table;
}

}  // namespace racim::kernels
