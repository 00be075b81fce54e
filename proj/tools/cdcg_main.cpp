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

// Command-line driver: sweep, bound, synth, selftest.

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cdcg/analysis.hpp"
#include "cdcg/config.hpp"
#include "cdcg/errors.hpp"
#include "cdcg/selftest.hpp"
#include "cdcg/sweep.hpp"
#include "cdcg/synthesis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRegime = 2;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string levels;
  std::optional<int> tau_points;
  std::optional<int> workers;
  std::optional<std::string> output;
};

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cdcg::ValidationError("--levels: '" + item + "' is not an integer");
    }
  }
  return out;
}

cdcg::SweepConfig load(const std::string& path, const Overrides& o) {
  cdcg::SweepConfig cfg = cdcg::load_config(path);
  if (o.seed) cfg.bath.seed = *o.seed;
  if (!o.levels.empty()) cfg.levels = parse_levels(o.levels);
  if (o.tau_points) cfg.tau_grid.points = *o.tau_points;
  if (o.workers) cfg.workers = *o.workers;
  if (o.output) cfg.output_path = *o.output;
  cfg.validate();
  return cfg;
}

void print_fits(const std::vector<cdcg::SweepRow>& rows) {
  std::vector<int> levels;
  for (const auto& r : rows) {
    if (levels.empty() || levels.back() != r.level) levels.push_back(r.level);
  }
  for (const int l : levels) {
    std::vector<cdcg::SweepRow> mine;
    for (const auto& r : rows) {
      if (r.level == l) mine.push_back(r);
    }
    try {
      const auto fit = cdcg::fit_slopes(mine).front().fit;
      std::printf("level %d: slope %.3f (expected %d), rms residual %.3g, %zu points\n", l,
                  fit.slope, l + 1, fit.rms_residual, fit.points);
    } catch (const cdcg::FitWindowError& e) {
      std::printf("level %d: %s\n", l, e.what());
    }
  }
}

int cmd_sweep(const std::string& path, const Overrides& o) {
  const cdcg::SweepConfig cfg = load(path, o);
  std::signal(SIGINT, on_sigint);
  const cdcg::SweepOutcome out = cdcg::run_sweep(cfg, &g_cancel);
  std::signal(SIGINT, SIG_DFL);

  std::ofstream csv(cfg.output_path, std::ios::binary);
  if (!csv) throw cdcg::ValidationError("output: cannot write " + cfg.output_path);
  cdcg::write_csv(csv, out.rows);
  csv.close();
  if (!csv) throw cdcg::ValidationError("output: write to " + cfg.output_path + " failed");

  std::printf("wrote %zu of %zu rows to %s\n", out.rows.size(), out.planned,
              cfg.output_path.c_str());
  if (out.cancelled) {
    std::fprintf(stderr, "interrupted: flushed completed rows only\n");
    return kExitInterrupted;
  }
  print_fits(out.rows);

  const auto bad = cdcg::fully_ambiguous_levels(out.rows);
  if (!bad.empty()) {
    for (const int l : bad) {
      std::fprintf(stderr, "level %d: branch ambiguity at every tau_min; shorten the grid\n", l);
    }
    return kExitRegime;
  }
  return kExitOk;
}

int cmd_bound(const std::string& path, const Overrides& o) {
  cdcg::SweepConfig cfg = load(path, o);
  const cdcg::DecouplingGroup g = cdcg::pauli_group();
  const cdcg::ErrorHamiltonian err = cdcg::assemble(cfg.bath);

  cfg.replicates = 1;
  const cdcg::SweepOutcome measured = cdcg::run_sweep(cfg);

  std::printf("# envelope c=1, chi=%g, ||H_e||=%.6g, ||H_SB+H_Se||=%.6g, seed=%llu\n",
              cdcg::chi_factor(g), err.norm_he, err.norm_err,
              static_cast<unsigned long long>(cfg.bath.seed));
  std::printf("%-14s %-14s %-6s %-6s %-14s %-14s %-12s\n", "tau_min", "tau_min_J", "l_opt", "level",
              "bound", "eta", "eta/bound");
  for (const double x : cfg.tau_grid.log10_values()) {
    const double tau_j = std::pow(10.0, x);
    const double tau = tau_j / cfg.bath.j_max;
    const cdcg::BoundReport rep = cdcg::bound_report(err, tau, cfg.levels, g);
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
      double eta = std::nan("");
      for (const auto& r : measured.rows) {
        if (r.level == rep.levels[i] && r.tau_min == tau) eta = r.eta;
      }
      std::printf("%-14.6e %-14.6e %-6d %-6d %-14.6e %-14.6e %-12.4e\n", tau, tau_j, rep.l_opt,
                  rep.levels[i], rep.bound_per_level[i], eta, eta / rep.bound_per_level[i]);
    }
  }
  return kExitOk;
}

int cmd_synth(const std::string& path, const Overrides& o, double tau) {
  const cdcg::SweepConfig cfg = load(path, o);
  cdcg::Synthesizer synth(cdcg::pauli_group());
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (o.output) {
    file.open(*o.output, std::ios::binary);
    if (!file) throw cdcg::ValidationError("output: cannot write " + *o.output);
    os = &file;
  }
  for (const int l : cfg.levels) {
    const cdcg::GateTreePtr tree = synth.build(cfg.gate, l);
    const cdcg::Schedule s = cdcg::flatten(*tree, 1.0, tau);
    *os << "# gate " << tree->label << " level " << l << " segments " << s.segments.size()
        << " total_duration " << s.total_duration << '\n';
    cdcg::write_schedule_table(*os, s);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concatenated dynamically corrected gates: synthesis and spin-bath simulation"};
  app.require_subcommand(1);

  Overrides o;
  std::string config_path;
  double synth_tau = 1.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON configuration file")->required();
    sub->add_option("--seed", o.seed, "override bath.seed");
    sub->add_option("--levels", o.levels, "comma-separated concatenation levels");
    sub->add_option("--tau-points", o.tau_points, "override tau_grid.points");
    sub->add_option("--workers", o.workers, "worker threads");
    sub->add_option("--output", o.output, "output file");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "sweep tau_min x level and write CSV");
  add_common(sweep);
  CLI::App* bound = app.add_subcommand("bound", "print the EPG envelope, l_opt and measured ratio");
  add_common(bound);
  CLI::App* synth = app.add_subcommand("synth", "emit the primitive schedule table");
  add_common(synth);
  synth->add_option("--tau", synth_tau, "primitive switching time for the table (default 1)");
  CLI::App* selftest = app.add_subcommand("selftest", "run the invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(config_path, o);
    if (bound->parsed()) return cmd_bound(config_path, o);
    if (synth->parsed()) {
      if (!(synth_tau > 0.0)) throw cdcg::ValidationError("--tau: must be positive");
      return cmd_synth(config_path, o, synth_tau);
    }
    if (selftest->parsed()) return cdcg::run_selftest(std::cout) ? kExitOk : kExitValidation;
  } catch (const cdcg::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const cdcg::NumericalRegimeError& e) {
    std::fprintf(stderr, "numerical regime error: %s\n", e.what());
    return kExitRegime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitOk;
}
