/*
 * Copyright 2026 The vrstars Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VRSTARS_ERROR_H_
#define VRSTARS_ERROR_H_

#include <stdexcept>
#include <string>

namespace vrstars {

// Base exception for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external input (files, request bodies). `line` is 1-based when
// the failure is tied to a line of a line-oriented file, 0 otherwise.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Feature vectors that do not fit the schema (wrong length, non-finite value,
// non 0/1 binary, missing numeric).
class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace vrstars

#endif  // VRSTARS_ERROR_H_
