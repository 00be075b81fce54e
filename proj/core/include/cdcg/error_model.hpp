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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cdcg/operator.hpp"

namespace cdcg {

// Central spin-1/2 qubit coupled to `n_bath` spin-1/2 bath particles.
// Spin operators follow the S = sigma/2 convention.
struct SpinBathSpec {
  int n_bath = 3;
  double j_max = 10.0;   // Heisenberg couplings drawn from [0, j_max]
  double b_max = 1e-2;   // dipolar couplings drawn from [0, b_max]
  std::uint64_t seed = 1;
  // Coefficients of the system-only drift h_x X + h_y Y + h_z Z (Pauli, not spin).
  std::array<double, 3> h_drift{0.0, 0.0, 0.0};

  // Throws ValidationError on n_bath outside 1..8, j_max <= 0 or b_max < 0.
  void validate() const;
  Index bath_dim() const { return Index{1} << n_bath; }

  friend bool operator==(const SpinBathSpec&, const SpinBathSpec&) = default;
};

// Coupling constants in draw order. `dipolar` lists pairs (1,2), (1,3), ...,
// (1,n), (2,3), ... with bath spins numbered from 1.
struct BathCouplings {
  std::vector<double> heisenberg;
  std::vector<double> dipolar;
};

// Draws j_1..j_n then the b_ij in pair order from a std::mt19937_64 seeded
// with spec.seed. Each uniform deviate is (word >> 11) * 2^-53 scaled to the
// interval, so the stream is identical on every conforming platform.
BathCouplings draw_couplings(const SpinBathSpec& spec);

// sum_i j_i S . I^(i) on the system (x) bath space for `j.size()` bath spins.
Operator heisenberg_coupling(std::span<const double> j);
// I_S (x) sum_{i<k} b_ik (I_X I_X + I_Y I_Y - 2 I_Z I_Z); pair order as in BathCouplings.
Operator dipolar_bath(int n_bath, std::span<const double> b);
// (h . sigma) (x) I_B.
Operator system_drift(const std::array<double, 3>& h, int n_bath);

Operator build_heisenberg_coupling(const SpinBathSpec& spec);
Operator build_dipolar_bath(const SpinBathSpec& spec);

struct ErrorHamiltonian {
  Operator h_e;
  Operator h_se;
  Operator h_sb;
  Operator h_b;
  double norm_he = 0.0;
  double norm_err = 0.0;  // ||h_sb + h_se||
  BathCouplings couplings;
};

ErrorHamiltonian assemble(const SpinBathSpec& spec);
ErrorHamiltonian assemble(const SpinBathSpec& spec, const BathCouplings& couplings);

enum class PauliLabel { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLabel label);

// Bath partners B_a = (1/2) Tr_S((sigma_a (x) I_B) h), so that
// h = sum_a sigma_a (x) B_a. Requires a qubit system.
std::array<Operator, 4> pauli_decomposition(const Operator& h);

// Labels whose bath partner has spectral norm above 1e-12, in I, X, Y, Z order.
std::vector<PauliLabel> error_span(const Operator& h);
inline std::vector<PauliLabel> error_span(const ErrorHamiltonian& h) { return error_span(h.h_e); }

}  // namespace cdcg
