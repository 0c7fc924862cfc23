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

#include <iosfwd>
#include <string>
#include <vector>

namespace constellation::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2 };

/// Entry point behind the `constellation` executable. Output goes to the
/// given streams so the commands can be driven in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Category names closest to `query` by edit distance (case-insensitive).
std::vector<std::string> near_matches(const std::string& query, const std::vector<std::string>& names,
                                      std::size_t limit = 3);

}  // namespace constellation::cli
