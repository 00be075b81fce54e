// Copyright 2026 The cdcg Authors
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

namespace cdcg {

// Bad input: wrong dimensions, non-Hermitian where Hermitian is required,
// schema violations in configuration files.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The computation left the regime where its result is meaningful, e.g. an
// eigenphase of a propagator sits on the branch cut of the logarithm.
class NumericalRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BranchAmbiguityError : public NumericalRegimeError {
 public:
  BranchAmbiguityError(const std::string& what, double closest_phase)
      : NumericalRegimeError(what), closest_phase_(closest_phase) {}

  // Eigenphase closest to +/- pi that triggered the error.
  double closest_phase() const { return closest_phase_; }

 private:
  double closest_phase_;
};

}  // namespace cdcg
