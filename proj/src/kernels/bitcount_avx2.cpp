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


// AVX2 variant. Compiled for every x86-64 build; the functions carry their
// own target attribute so the rest of the binary stays baseline x86-64 and
// dispatch decides at runtime whether they may run.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#include "constellation/kernels/bitcount.hpp"

#define CONSTELLATION_AVX2 __attribute__((target("avx2")))

namespace constellation::kernels::avx2 {
namespace {

// Nibble-lookup popcount: per-byte counts via two pshufb lookups, folded
// into four 64-bit lanes with psadbw.
CONSTELLATION_AVX2 inline __m256i byte_counts(__m256i v) noexcept {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

CONSTELLATION_AVX2 inline std::uint64_t hsum_epi64(__m256i v) noexcept {
  const __m128i sum = _mm_add_epi64(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(sum)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(sum, 1));
}

}  // namespace

CONSTELLATION_AVX2 SetCounts set_counts(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b) noexcept {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  const __m256i zero = _mm256_setzero_si256();
  __m256i inter = zero;
  __m256i uni = zero;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pb + i));
    inter = _mm256_add_epi64(inter, _mm256_sad_epu8(byte_counts(_mm256_and_si256(va, vb)), zero));
    uni = _mm256_add_epi64(uni, _mm256_sad_epu8(byte_counts(_mm256_or_si256(va, vb)), zero));
  }

  SetCounts counts{hsum_epi64(inter), hsum_epi64(uni)};
  for (; i < n; ++i) {
    counts.intersection += static_cast<std::uint64_t>(std::popcount(pa[i] & pb[i]));
    counts.union_ += static_cast<std::uint64_t>(std::popcount(pa[i] | pb[i]));
  }
  return counts;
}

CONSTELLATION_AVX2 std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept {
  const std::size_t n = a.size();
  const std::uint64_t* pa = a.data();
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(byte_counts(va), zero));
  }
  std::uint64_t total = hsum_epi64(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(pa[i]));
  return total;
}

}  // namespace constellation::kernels::avx2

#endif
