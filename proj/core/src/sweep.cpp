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

#include "cdcg/sweep.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cdcg/errors.hpp"
#include "cdcg/simulate.hpp"
#include "cdcg/synthesis.hpp"

namespace cdcg {
namespace {

constexpr const char* kHeader =
    "level,tau_min,tau_min_J,total_duration,eta,trace_dist,fidelity,log10_infidelity,seed,flag";

struct WorkItem {
  int level;
  std::size_t tau_index;
  std::size_t seed_index;
};

void append_real(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  out += buf;
}

double parse_real(const std::string& field, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    // stod rejects "inf"/"nan" spellings on some platforms.
    if (field == "nan" || field == "-nan") return std::nan("");
    if (field == "inf") return HUGE_VAL;
    if (field == "-inf") return -HUGE_VAL;
    throw ValidationError("csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
}

}  // namespace

SweepOutcome run_sweep(const SweepConfig& cfg, const std::atomic<bool>* cancel) {
  cfg.validate();
  const std::vector<double> grid = cfg.tau_grid.log10_values();
  const std::vector<std::uint64_t> seeds = cfg.seeds();

  std::vector<ErrorHamiltonian> baths;
  for (const auto seed : seeds) {
    SpinBathSpec spec = cfg.bath;
    spec.seed = seed;
    baths.push_back(assemble(spec));
  }

  std::vector<int> levels = cfg.levels;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  Synthesizer synth(pauli_group());
  std::map<int, GateTreePtr> trees;
  for (const int l : levels) trees[l] = synth.build(cfg.gate, l);

  // Ascending tau within a level; the grid itself ascends in log10.
  std::vector<WorkItem> items;
  for (const int l : levels) {
    for (std::size_t t = 0; t < grid.size(); ++t) {
      for (std::size_t s = 0; s < seeds.size(); ++s) items.push_back({l, t, s});
    }
  }

  std::vector<std::optional<SweepRow>> results(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (;;) {
      if ((cancel && cancel->load()) || failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      const WorkItem& w = items[i];
      const double tau_j = std::pow(10.0, grid[w.tau_index]);
      const double tau = tau_j / cfg.bath.j_max;
      SimulationConfig sc;
      sc.schedule = flatten(*trees.at(w.level), 1.0, tau);
      sc.h_e = baths[w.seed_index].h_e;
      sc.target = cfg.gate;
      sc.level = w.level;
      sc.tau_min = tau;
      SimulationResult r;
      try {
        r = evaluate(sc);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed = true;
        return;
      }
      SweepRow row;
      row.level = w.level;
      row.tau_min = tau;
      row.tau_min_j = tau_j;
      row.total_duration = r.total_duration;
      row.eta = r.epg_eta;
      row.trace_dist = r.trace_dist;
      row.fidelity = r.fid;
      row.infidelity = r.infidelity;
      row.seed = seeds[w.seed_index];
      row.branch_ambiguous = r.branch_ambiguous;
      results[i] = row;
    }
  };

  const int n_threads = std::max(1, std::min<int>(cfg.workers, static_cast<int>(items.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }

  if (first_error) std::rethrow_exception(first_error);

  SweepOutcome out;
  out.planned = items.size();
  for (auto& r : results) {
    if (r) out.rows.push_back(*r);
  }
  out.cancelled = out.rows.size() != items.size();
  return out;
}

std::string format_csv(std::span<const SweepRow> rows) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.level);
    for (const double v : {r.tau_min, r.tau_min_j, r.total_duration, r.eta, r.trace_dist, r.fidelity,
                           std::log10(r.infidelity)}) {
      out += ',';
      append_real(out, v);
    }
    out += ',';
    out += std::to_string(r.seed);
    out += r.branch_ambiguous ? ",branch_ambiguity\n" : ",ok\n";
  }
  return out;
}

void write_csv(std::ostream& os, std::span<const SweepRow> rows) { os << format_csv(rows); }

std::vector<SweepRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kHeader) {
    throw ValidationError("csv: missing or unexpected header row");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) {
      throw ValidationError("csv line " + std::to_string(line_no) + ": expected 10 fields");
    }
    SweepRow r;
    r.level = std::stoi(f[0]);
    r.tau_min = parse_real(f[1], line_no);
    r.tau_min_j = parse_real(f[2], line_no);
    r.total_duration = parse_real(f[3], line_no);
    r.eta = parse_real(f[4], line_no);
    r.trace_dist = parse_real(f[5], line_no);
    r.fidelity = parse_real(f[6], line_no);
    r.infidelity = std::pow(10.0, parse_real(f[7], line_no));
    r.seed = std::stoull(f[8]);
    if (f[9] != "ok" && f[9] != "branch_ambiguity") {
      throw ValidationError("csv line " + std::to_string(line_no) + ": unknown flag '" + f[9] + "'");
    }
    r.branch_ambiguous = f[9] == "branch_ambiguity";
    rows.push_back(r);
  }
  return rows;
}

std::vector<int> fully_ambiguous_levels(std::span<const SweepRow> rows) {
  std::map<int, bool> all_flagged;
  for (const auto& r : rows) {
    auto [it, inserted] = all_flagged.emplace(r.level, true);
    it->second = it->second && r.branch_ambiguous;
  }
  std::vector<int> out;
  for (const auto& [level, flagged] : all_flagged) {
    if (flagged) out.push_back(level);
  }
  return out;
}

}  // namespace cdcg
