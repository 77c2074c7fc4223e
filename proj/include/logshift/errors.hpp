// Copyright 2026 The logshift Authors.
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

#ifndef LOGSHIFT_ERRORS_HPP_
#define LOGSHIFT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace logshift {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Argument lies on (or numerically at) a pole of the gamma function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// The integrand of a CF inversion has not decayed at the grid edge.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// No closed-form order-statistic CF is registered for the parent family.
class UnsupportedParent : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace logshift

#endif  // LOGSHIFT_ERRORS_HPP_
