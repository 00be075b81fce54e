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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cdcg/operator.hpp"
#include "cdcg/synthesis.hpp"

namespace cdcg {

// exp(-i (H_seg (x) I_B + h_e) duration) with H_seg = amplitude * axis . sigma.
Operator segment_propagator(const PrimitiveSegment& seg, const Operator& h_e);

// Time-ordered product of segment propagators, later segments on the left.
// Propagators of repeated (axis, angle, duration) segments are reused.
Operator run_schedule(const Schedule& s, const Operator& h_e);

struct ErrorAction {
  Operator generator;  // E with U = (Q (x) I) exp(-i E)
  double eta = 0.0;    // ||mod_b(E)||
};

// Fixes the global phase of u_total so that Tr((Q^dagger (x) I) u_total) is
// real and positive, then takes the principal logarithm. Propagates
// BranchAmbiguityError.
ErrorAction error_action(const Operator& u_total, const GateSpec& target);

struct SimulationConfig {
  Schedule schedule;
  Operator h_e;
  GateSpec target;
  // Defaults to (|0> + |1>)/sqrt(2).
  std::optional<Vector> initial_system_state;
  // Defaults to the maximally mixed bath state.
  std::optional<DensityMatrix> bath_state;
  int level = 0;
  double tau_min = 0.0;
};

struct SimulationResult {
  Operator u_total;
  double epg_eta = 0.0;
  double trace_dist = 0.0;  // ||rho_a - rho_t||_1, in [0, 2]
  double fid = 1.0;         // Uhlmann fidelity
  // 1 - fid computed from the weight of the actual state orthogonal to the
  // (pure) target, accurate far below double-precision rounding of fid.
  double infidelity = 0.0;
  double total_duration = 0.0;
  int level = 0;
  double tau_min = 0.0;
  // Set when the error action could not be extracted; epg_eta is NaN then.
  bool branch_ambiguous = false;
};

SimulationResult evaluate(const SimulationConfig& cfg);

// Reduced system state Tr_B(u (psi psi^dagger (x) rho_B) u^dagger).
DensityMatrix reduced_final_state(const Operator& u, const Vector& psi, const DensityMatrix& rho_b);

struct TimedGate {
  Schedule schedule;
  GateSpec target;
};

// First-order composition sum_j P_{j-1}^dagger E_j P_{j-1} with partial
// control propagators P_j = Q_j ... Q_1 and P_0 = I.
Operator compose_first_order(std::span<const TimedGate> gates, const Operator& h_e);

}  // namespace cdcg
