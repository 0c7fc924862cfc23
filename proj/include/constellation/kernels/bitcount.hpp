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


#pragma once

// Word-wise set kernels over image bitsets.
//
// Every variant computes the same pair of population counts,
//   intersection = popcount(a & b),  union = popcount(a | b),
// over two equally sized spans of 64-bit words. The scalar variant is the
// reference; vector variants must agree with it bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace constellation::kernels {

struct SetCounts {
  std::uint64_t intersection = 0;
  std::uint64_t union_ = 0;

  bool operator==(const SetCounts&) const = default;
};

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

using SetCountsFn = SetCounts (*)(std::span<const std::uint64_t>, std::span<const std::uint64_t>) noexcept;
using PopcountFn = std::uint64_t (*)(std::span<const std::uint64_t>) noexcept;

struct KernelTable {
  Isa isa;
  SetCountsFn set_counts;
  PopcountFn popcount;
};

namespace scalar {
SetCounts set_counts(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;
std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
SetCounts set_counts(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;
std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept;
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
SetCounts set_counts(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;
std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept;
}  // namespace neon
#endif

/// ISAs compiled in and supported by the running CPU, scalar first.
std::vector<Isa> available_isas();

/// Table for a specific ISA; falls back to scalar if it is unavailable.
const KernelTable& kernels_for(Isa isa) noexcept;

/// Best table for this CPU, chosen once. CONSTELLATION_SIMD=scalar|avx2|neon
/// in the environment forces a variant (if available).
const KernelTable& active() noexcept;

/// Preconditions: a.size() == b.size().
inline SetCounts set_counts(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  return active().set_counts(a, b);
}

inline std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept { return active().popcount(a); }

}  // namespace constellation::kernels
