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

#include <span>
#include <vector>

#include "cdcg/error_model.hpp"
#include "cdcg/errors.hpp"
#include "cdcg/group.hpp"

namespace cdcg {

inline constexpr double kFitEtaFloor = 1e-13;
inline constexpr double kFitEtaCeiling = 1e-2;
inline constexpr std::size_t kMinFitPoints = 4;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);
// Fit of log10(y) against log10(x); all inputs must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct SweepRow;

struct SlopeFit {
  int level = 0;
  LineFit fit;
};

class FitWindowError : public ValidationError {
 public:
  FitWindowError(int level, std::size_t points);
  int level() const { return level_; }

 private:
  int level_;
};

// Per-level slope of log10(eta) against log10(tau_min), pooling replicates
// and keeping rows with kFitEtaFloor <= eta <= kFitEtaCeiling. Levels are
// reported in ascending order. Throws FitWindowError naming the first level
// with fewer than kMinFitPoints usable rows.
std::vector<SlopeFit> fit_slopes(std::span<const SweepRow> rows);

// Envelope c chi^(l^2) tau0 ||H_SB + H_Se|| (4 chi tau0 ||H_e||)^l with c = 1.
struct BoundReport {
  double chi = 0.0;
  double norm_he = 0.0;
  double norm_err = 0.0;
  double tau0 = 0.0;
  std::vector<int> levels;
  std::vector<double> bound_per_level;  // parallel to `levels`
  int l_opt = 0;
};

// d (m + 3); 20 for the Pauli group with two generators.
double chi_factor(const DecouplingGroup& g);

double epg_bound(int level, double chi, double tau0, double norm_err, double norm_he);

// floor(-(log_chi(4 ||H_e|| tau0) + 1) / 2), clamped at zero.
int optimal_level(double norm_he, double tau0, double chi);

BoundReport bound_report(const ErrorHamiltonian& err, double tau0, std::span<const int> levels,
                         const DecouplingGroup& g);

}  // namespace cdcg
