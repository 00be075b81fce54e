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

#include <algorithm>
#include <atomic>
#include <map>
#include <tuple>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cdcg/analysis.hpp"
#include "cdcg/error_model.hpp"
#include "cdcg/sweep.hpp"
#include "cdcg/synthesis.hpp"

namespace cdcg {
namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.levels = {0, 1, 2};
  c.tau_grid = {-4.0, -2.0, 5};
  c.replicates = 2;
  return c;
}

TEST(Sweep, RowCountOrderAndColumns) {
  const SweepConfig c = small_config();
  const SweepOutcome out = run_sweep(c);
  EXPECT_FALSE(out.cancelled);
  EXPECT_EQ(out.planned, 3u * 5u * 2u);
  ASSERT_EQ(out.rows.size(), out.planned);
  EXPECT_TRUE(std::is_sorted(out.rows.begin(), out.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.level, a.tau_min, a.seed) < std::tie(b.level, b.tau_min, b.seed);
  }));
  const DecouplingGroup g = pauli_group();
  for (const auto& r : out.rows) {
    EXPECT_NEAR(r.tau_min_j, r.tau_min * c.bath.j_max, 1e-15 * r.tau_min_j);
    EXPECT_NEAR(r.total_duration, duration(r.level, r.tau_min, g), 1e-12 * r.total_duration);
    EXPECT_FALSE(r.branch_ambiguous);
    EXPECT_LE(0.5 * r.trace_dist, r.eta + 1e-9);
  }
}

TEST(Sweep, TinyTauIsNearPerfect) {
  SweepConfig c;
  c.levels = {0};
  c.tau_grid = {-12.0, -11.0, 2};
  c.replicates = 1;
  for (const auto& r : run_sweep(c).rows) EXPECT_NEAR(r.fidelity, 1.0, 1e-15);
}

TEST(Sweep, InfidelityOrderedByLevelInWindow) {
  SweepConfig c;
  c.tau_grid = {-4.0, -2.0, 9};
  c.replicates = 1;
  const SweepOutcome out = run_sweep(c);
  // Smallest tau where every level has eta inside the fit window.
  std::map<double, std::vector<const SweepRow*>> by_tau;
  for (const auto& r : out.rows) by_tau[r.tau_min].push_back(&r);
  const std::vector<const SweepRow*>* chosen = nullptr;
  for (const auto& [tau, rows] : by_tau) {
    if (std::all_of(rows.begin(), rows.end(),
                    [](const SweepRow* r) { return r->eta >= kFitEtaFloor && r->eta <= kFitEtaCeiling; })) {
      chosen = &rows;
      break;
    }
  }
  ASSERT_NE(chosen, nullptr);
  ASSERT_EQ(chosen->size(), 4u);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_LT((*chosen)[k]->infidelity, (*chosen)[k - 1]->infidelity);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  SweepConfig c = small_config();
  const std::string serial = format_csv(run_sweep(c).rows);
  c.workers = 3;
  EXPECT_EQ(format_csv(run_sweep(c).rows), serial);
  EXPECT_EQ(format_csv(run_sweep(c).rows), serial);
}

// Default regime with one seed: fitted slopes rise with level and every
// row stays under the envelope wherever the envelope is below 1.
class DefaultRegime : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SweepConfig c;
    c.replicates = 1;
    c.workers = 2;
    config_ = new SweepConfig(c);
    outcome_ = new SweepOutcome(run_sweep(c));
  }
  static void TearDownTestSuite() {
    delete config_;
    delete outcome_;
  }
  static SweepConfig* config_;
  static SweepOutcome* outcome_;
};

SweepConfig* DefaultRegime::config_ = nullptr;
SweepOutcome* DefaultRegime::outcome_ = nullptr;

TEST_F(DefaultRegime, SlopesIncreaseWithLevel) {
  const auto fits = fit_slopes(outcome_->rows);
  ASSERT_EQ(fits.size(), 4u);
  for (std::size_t k = 1; k < fits.size(); ++k) EXPECT_GT(fits[k].fit.slope, fits[k - 1].fit.slope);
  EXPECT_NEAR(fits[0].fit.slope, 1.0, 0.3);
  EXPECT_NEAR(fits[2].fit.slope, 3.0, 0.3);
}

TEST_F(DefaultRegime, EtaBelowEnvelope) {
  const ErrorHamiltonian h = assemble(config_->bath);
  const DecouplingGroup g = pauli_group();
  std::size_t checked = 0;
  for (const auto& r : outcome_->rows) {
    const std::vector<int> level{r.level};
    const double bound = bound_report(h, r.tau_min, level, g).bound_per_level[0];
    if (bound >= 1.0) continue;
    EXPECT_LT(r.eta, bound) << "level " << r.level << " tau_min " << r.tau_min;
    ++checked;
  }
  EXPECT_GT(checked, outcome_->rows.size() / 2);
}

TEST_F(DefaultRegime, LevelThreeDurationRatio) {
  bool found = false;
  for (const auto& r : outcome_->rows) {
    if (r.level == 3 && std::abs(std::log10(r.tau_min_j) + 5.5) < 1e-9) {
      EXPECT_NEAR(r.total_duration / r.tau_min, 6.5e3, 50.0);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Sweep, CancelledBeforeStart) {
  std::atomic<bool> cancel{true};
  const SweepOutcome out = run_sweep(small_config(), &cancel);
  EXPECT_TRUE(out.cancelled);
  EXPECT_TRUE(out.rows.empty());
}

TEST(Csv, FormatAndRoundTrip) {
  SweepRow r;
  r.level = 2;
  r.tau_min = 1.0 / 3.0;
  r.tau_min_j = 10.0 / 3.0;
  r.total_duration = 121.5;
  r.eta = 2.5e-9;
  r.trace_dist = 1e-17;
  r.fidelity = 0.9999999;
  r.infidelity = 1.234e-20;
  r.seed = 3;
  SweepRow flagged = r;
  flagged.branch_ambiguous = true;
  flagged.eta = std::nan("");
  const std::vector<SweepRow> rows{r, flagged};
  const std::string text = format_csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "level,tau_min,tau_min_J,total_duration,eta,trace_dist,fidelity,log10_infidelity,seed,flag");
  EXPECT_NE(text.find("2,3.3333333333333331e-01,"), std::string::npos);
  EXPECT_NE(text.find(",3,ok\n"), std::string::npos);
  EXPECT_NE(text.find(",3,branch_ambiguity\n"), std::string::npos);
  std::istringstream is(text);
  const auto back = read_csv(is);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].tau_min, r.tau_min);
  EXPECT_EQ(back[0].eta, r.eta);
  EXPECT_EQ(back[0].fidelity, r.fidelity);
  EXPECT_NEAR(back[0].infidelity, r.infidelity, 1e-14 * r.infidelity);
  EXPECT_TRUE(std::isnan(back[1].eta));
  EXPECT_TRUE(back[1].branch_ambiguous);
  EXPECT_EQ(fully_ambiguous_levels(rows), std::vector<int>{});
  EXPECT_EQ(fully_ambiguous_levels(std::vector<SweepRow>{flagged}), std::vector<int>{2});
}

TEST(Csv, RejectsBadInput) {
  std::istringstream no_header("1,2,3\n");
  EXPECT_THROW(read_csv(no_header), ValidationError);
  std::istringstream short_row(
      "level,tau_min,tau_min_J,total_duration,eta,trace_dist,fidelity,log10_infidelity,seed,flag\n1,2\n");
  EXPECT_THROW(read_csv(short_row), ValidationError);
}

}  // namespace
}  // namespace cdcg
