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

#include "cdcg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cdcg/errors.hpp"
#include "cdcg/sweep.hpp"

namespace cdcg {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("fit_line: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("fit_line: need at least two points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("fit_line: all x values coincide");
  LineFit f;
  f.points = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / static_cast<double>(n));
  return f;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("fit_loglog: x and y differ in length");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("fit_loglog: inputs must be positive");
    lx.push_back(std::log10(x[i]));
    ly.push_back(std::log10(y[i]));
  }
  return fit_line(lx, ly);
}

FitWindowError::FitWindowError(int level, std::size_t points)
    : ValidationError([&] {
        std::ostringstream os;
        os << "fit_slopes: level " << level << " has " << points
           << " rows with eta in the fit window, need at least " << kMinFitPoints;
        return os.str();
      }()),
      level_(level) {}

std::vector<SlopeFit> fit_slopes(std::span<const SweepRow> rows) {
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_level;
  for (const auto& r : rows) {
    auto& [xs, ys] = by_level[r.level];
    if (r.branch_ambiguous || !std::isfinite(r.eta)) continue;
    if (r.eta < kFitEtaFloor || r.eta > kFitEtaCeiling) continue;
    xs.push_back(r.tau_min);
    ys.push_back(r.eta);
  }
  std::vector<SlopeFit> fits;
  for (const auto& [level, data] : by_level) {
    if (data.first.size() < kMinFitPoints) throw FitWindowError(level, data.first.size());
    fits.push_back({level, fit_loglog(data.first, data.second)});
  }
  return fits;
}

double chi_factor(const DecouplingGroup& g) {
  return static_cast<double>(g.order()) * (static_cast<double>(g.generator_count()) + 3.0);
}

double epg_bound(int level, double chi, double tau0, double norm_err, double norm_he) {
  const double l = static_cast<double>(level);
  return std::pow(chi, l * l) * tau0 * norm_err * std::pow(4.0 * chi * tau0 * norm_he, l);
}

int optimal_level(double norm_he, double tau0, double chi) {
  if (!(norm_he > 0.0) || !(tau0 > 0.0)) return 0;
  const double x = -0.5 * (std::log(4.0 * norm_he * tau0) / std::log(chi) + 1.0);
  return std::max(0, static_cast<int>(std::floor(x)));
}

BoundReport bound_report(const ErrorHamiltonian& err, double tau0, std::span<const int> levels,
                         const DecouplingGroup& g) {
  if (!(tau0 > 0.0)) throw ValidationError("bound_report: tau0 must be positive");
  BoundReport b;
  b.chi = chi_factor(g);
  b.norm_he = err.norm_he;
  b.norm_err = err.norm_err;
  b.tau0 = tau0;
  b.levels.assign(levels.begin(), levels.end());
  for (const int l : levels) b.bound_per_level.push_back(epg_bound(l, b.chi, tau0, b.norm_err, b.norm_he));
  b.l_opt = optimal_level(b.norm_he, tau0, b.chi);
  return b;
}

}  // namespace cdcg
