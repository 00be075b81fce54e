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

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cdcg/config.hpp"

namespace cdcg {

struct SweepRow {
  int level = 0;
  double tau_min = 0.0;
  double tau_min_j = 0.0;  // tau_min * j_max
  double total_duration = 0.0;
  double eta = 0.0;
  double trace_dist = 0.0;
  double fidelity = 1.0;
  double infidelity = 0.0;
  std::uint64_t seed = 0;
  bool branch_ambiguous = false;
};

struct SweepOutcome {
  std::vector<SweepRow> rows;  // sorted by (level, tau_min, seed)
  std::size_t planned = 0;
  bool cancelled = false;
};

// Runs every (level, tau_min, seed) point on cfg.workers threads. If `cancel`
// becomes true, workers stop picking up new points and the rows finished so
// far are returned.
SweepOutcome run_sweep(const SweepConfig& cfg, const std::atomic<bool>* cancel = nullptr);

// Header row, comma separated, LF line endings, reals in %.16e.
// Columns: level, tau_min, tau_min_J, total_duration, eta, trace_dist,
// fidelity, log10_infidelity, seed, flag (ok | branch_ambiguity).
void write_csv(std::ostream& os, std::span<const SweepRow> rows);
std::string format_csv(std::span<const SweepRow> rows);
std::vector<SweepRow> read_csv(std::istream& is);

// Levels for which every row is flagged with branch ambiguity.
std::vector<int> fully_ambiguous_levels(std::span<const SweepRow> rows);

}  // namespace cdcg
