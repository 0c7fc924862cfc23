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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace constellation {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed annotation or graph document. Carries the byte offset and
/// 1-based line of the failure when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte = 0, std::size_t line = 0)
      : Error(what), byte_(byte), line_(line) {}

  std::size_t byte() const noexcept { return byte_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t byte_;
  std::size_t line_;
};

/// Dangling reference or duplicate key inside an otherwise well-formed dataset.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class MergeError : public Error {
 public:
  using Error::Error;
};

/// Unknown category / node id.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (threshold range, a == b, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace constellation
