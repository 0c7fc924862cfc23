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


#include <bit>

#include "constellation/kernels/bitcount.hpp"

namespace constellation::kernels::scalar {

SetCounts set_counts(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  SetCounts counts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    counts.intersection += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    counts.union_ += static_cast<std::uint64_t>(std::popcount(a[i] | b[i]));
  }
  return counts;
}

std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept {
  std::uint64_t total = 0;
  for (const std::uint64_t w : a) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

}  // namespace constellation::kernels::scalar
