// Copyright 2026 The optokerr Authors
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

#include <stdexcept>
#include <string>

namespace optokerr {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ω_M − m·g_cK ≤ 0 for a photon number in use.
class SingularDenominator : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Sideband sum did not settle within the mechanical cutoff.
class NonConvergedSum : public Error {
 public:
  using Error::Error;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// ⟨a†a⟩ is too small for g²(0) to be defined.
class ZeroPhotonNumber : public Error {
 public:
  using Error::Error;
};

/// Requested cat branch has vanishing norm.
class DegenerateCat : public Error {
 public:
  using Error::Error;
};

/// Conditional measurement branch has vanishing probability.
class DegenerateBranch : public Error {
 public:
  using Error::Error;
};

/// Probability weight leaks past the mechanical cutoff.
class TruncationLoss : public Error {
 public:
  using Error::Error;
};

}  // namespace optokerr
