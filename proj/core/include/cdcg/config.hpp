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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cdcg/error_model.hpp"
#include "cdcg/group.hpp"

namespace cdcg {

inline constexpr int kMaxLevel = 4;

// Grid over log10(tau_min * J), J being the bath's j_max.
struct TauGrid {
  double log10_start = -6.0;
  double log10_stop = -1.0;
  int points = 21;

  std::vector<double> log10_values() const;

  friend bool operator==(const TauGrid&, const TauGrid&) = default;
};

struct SweepConfig {
  SpinBathSpec bath;
  GateSpec gate = default_gate();
  std::vector<int> levels{0, 1, 2, 3};
  TauGrid tau_grid;
  int replicates = 3;  // seeds bath.seed, bath.seed + 1, ...
  int workers = 1;
  std::string output_path = "sweep.csv";

  // exp(-i (pi/3) X): axis x, rotation angle 2 pi / 3.
  static GateSpec default_gate();

  // Throws ValidationError naming the offending field path.
  void validate() const;
  std::vector<std::uint64_t> seeds() const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

// JSON document; every field is optional and missing fields take the
// defaults above. Unknown keys are rejected.
SweepConfig parse_config(std::string_view json_text);
SweepConfig load_config(const std::filesystem::path& path);
// Fully populated JSON document, two-space indented.
std::string serialize_config(const SweepConfig& cfg);

}  // namespace cdcg
