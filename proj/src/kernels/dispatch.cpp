// Copyright 2026 The Constellation Authors. All Rights Reserved.
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


#include <cstdlib>
#include <string_view>

#include "constellation/kernels/bitcount.hpp"

namespace constellation::kernels {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::set_counts, &scalar::popcount};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::set_counts, &avx2::popcount};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::neon, &neon::set_counts, &neon::popcount};
#endif

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select() noexcept {
  if (const char* forced = std::getenv("CONSTELLATION_SIMD")) {
    const std::string_view name(forced);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (name == to_string(isa) && supported(isa)) return kernels_for(isa);
    }
  }
  const auto isas = available_isas();
  return kernels_for(isas.back());
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> isas{Isa::scalar};
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (supported(isa)) isas.push_back(isa);
  }
  return isas;
}

const KernelTable& kernels_for(Isa isa) noexcept {
  if (!supported(isa)) return kScalar;
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace constellation::kernels
