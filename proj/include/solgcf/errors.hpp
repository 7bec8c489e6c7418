// Copyright 2026 The solgcf Authors
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

#ifndef SOLGCF_ERRORS_HPP
#define SOLGCF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace solgcf {

// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  range = 3,
  singular = 4,
  io = 5,
  numerical = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Argument outside the mathematical domain of a function (Lambert W branch,
// Ei at zero, closed forms leaving their sheet).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::domain, what) {}
};

// Exponentials of the Sol3 metric would overflow.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what)
      : Error(ErrorCode::range, what) {}
};

// Vector field evaluated on a singular line (cos(theta) = 0).
class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what)
      : Error(ErrorCode::singular, what) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

}  // namespace solgcf

#endif  // SOLGCF_ERRORS_HPP
