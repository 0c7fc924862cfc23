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


#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>

#include "constellation/kernels/bitcount.hpp"

namespace constellation::kernels::neon {
namespace {

inline uint64x2_t lane_counts(uint8x16_t v) noexcept {
  return vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(v))));
}

}  // namespace

SetCounts set_counts(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  uint64x2_t inter = vdupq_n_u64(0);
  uint64x2_t uni = vdupq_n_u64(0);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint8x16_t va = vreinterpretq_u8_u64(vld1q_u64(pa + i));
    const uint8x16_t vb = vreinterpretq_u8_u64(vld1q_u64(pb + i));
    inter = vaddq_u64(inter, lane_counts(vandq_u8(va, vb)));
    uni = vaddq_u64(uni, lane_counts(vorrq_u8(va, vb)));
  }

  SetCounts counts{vaddvq_u64(inter), vaddvq_u64(uni)};
  for (; i < n; ++i) {
    counts.intersection += static_cast<std::uint64_t>(std::popcount(pa[i] & pb[i]));
    counts.union_ += static_cast<std::uint64_t>(std::popcount(pa[i] | pb[i]));
  }
  return counts;
}

std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_u64(acc, lane_counts(vreinterpretq_u8_u64(vld1q_u64(pa + i))));
  std::uint64_t total = vaddvq_u64(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(pa[i]));
  return total;
}

}  // namespace constellation::kernels::neon

#endif
