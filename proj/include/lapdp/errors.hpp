// Copyright 2026 The lapdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace lapdp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameter or malformed input object.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// A Laplace-transform tail fails to decay, or the evaluated order lies
// outside the admissible strip.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Renyi order at a singular point (q = 0 or q = 1).
class SingularOrderError : public Error {
 public:
  using Error::Error;
};

// The profile admits no convergence strip in either direction.
class EmptyRocError : public Error {
 public:
  using Error::Error;
};

// Bromwich truncation did not stabilize within the doubling cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// Bisection bracket does not straddle the budget crossing.
class NoCrossingError : public Error {
 public:
  using Error::Error;
};

// Atom book exceeded its configured size cap.
class BookOverflowError : public Error {
 public:
  using Error::Error;
};

// Grid PLDs with incompatible steps.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

// Kernel extraction failed to reproduce its source profile.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

// Product support would exceed the oracle cap.
class SupportOverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace lapdp
