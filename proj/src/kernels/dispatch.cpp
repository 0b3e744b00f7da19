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

#include <stdexcept>
#include <string>

#include "racim/kernels.hpp"

namespace racim::kernels {

#if !defined(RACIM_HAVE_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !defined(RACIM_HAVE_NEON)
const KernelTable* neon_table() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(RACIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

bool available(KernelKind kind) {
  switch (kind) {
    case KernelKind::automatic:
    case KernelKind::scalar:
      return true;
    case KernelKind::avx2:
      return avx2_table() != nullptr && cpu_has_avx2();
    case KernelKind::neon:
      // Advanced SIMD is mandatory on AArch64.
      return neon_table() != nullptr;
  }
  return false;
}

const KernelTable& select(KernelKind kind) {
  if (kind == KernelKind::automatic) {
    if (available(KernelKind::avx2)) return *avx2_table();
    if (available(KernelKind::neon)) return *neon_table();
    return scalar_table();
  }
  if (!available(kind))
    throw std::invalid_argument("kernel '" + std::string(kind_name(kind)) +
                                "' is not available on this build/CPU");
  switch (kind) {
    case KernelKind::avx2:
      return *avx2_table();
    case KernelKind::neon:
      return *neon_table();
    default:
      return scalar_table();
  }
}

KernelKind parse_kind(std::string_view name) {
  if (name == "auto" || name == "automatic") return KernelKind::automatic;
  if (name == "scalar") return KernelKind::scalar;
  if (name == "avx2") return KernelKind::avx2;
  if (name == "neon") return KernelKind::neon;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

std::string_view kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::automatic:
      return "auto";
    case KernelKind::scalar:
      return "scalar";
    case KernelKind::avx2:
      return "avx2";
    case KernelKind::neon:
      return "neon";
  }
  return "?";
}

}  // namespace racim::kernels
