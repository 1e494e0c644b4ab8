// Copyright 2026 The IPIR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IPIR_ERRORS_HPP_
#define IPIR_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ipir {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition or range check on caller-supplied values failed.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured work budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// Text artifact rejected. line and column are 1-based; column 0 means the
// whole line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) +
              (column > 0 ? ", column " + std::to_string(column) : "") +
              ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ipir

#endif  // IPIR_ERRORS_HPP_
