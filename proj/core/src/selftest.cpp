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

#include "cdcg/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "cdcg/config.hpp"
#include "cdcg/error_model.hpp"
#include "cdcg/simulate.hpp"
#include "cdcg/synthesis.hpp"

namespace cdcg {
namespace {

Matrix random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

}  // namespace

bool run_selftest(std::ostream& os) {
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  const DecouplingGroup g = pauli_group();

  checks.emplace_back("eulerian word is XYXYYXYX", [&] {
    std::string word;
    for (const auto j : eulerian_cycle(g)) word += g.generator_label(j);
    return word == "XYXYYXYX";
  });
  checks.emplace_back("pauli group decouples X, Y, Z and keeps I", [&] {
    const Operator id = Operator::on_system(pauli(0));
    return decouples(g, pauli(1)) && decouples(g, pauli(2)) && decouples(g, pauli(3)) &&
           spectral_norm(group_average(g, id) - id) <= 1e-12;
  });
  checks.emplace_back("flattened durations match closed form for levels 0..4", [&] {
    Synthesizer synth(g);
    for (int l = 0; l <= kMaxLevel; ++l) {
      const Schedule s = flatten(*synth.build(SweepConfig::default_gate(), l), 1.0, 1.0);
      const double closed = duration(l, 1.0, g);
      if (std::abs(s.total_duration - closed) > 1e-12 * closed) return false;
      if (s.segments.size() != static_cast<std::size_t>(std::pow(17, l))) return false;
    }
    return true;
  });
  checks.emplace_back("synthesized gates hit their targets up to phase", [&] {
    Synthesizer synth(g);
    for (int l = 0; l <= 3; ++l) {
      for (const GateSpec& q : {SweepConfig::default_gate(), g.generator(0), g.generator(1)}) {
        const Schedule s = flatten(*synth.build(q, l), 1.0, 1.0);
        if (!equal_up_to_phase(ideal_unitary(s), q.unitary(), 1e-9)) return false;
      }
    }
    return true;
  });
  checks.emplace_back("matexp is unitary and matlog inverts it", [&] {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 5; ++k) {
      Matrix h = random_hermitian(8, rng);
      h /= spectral_norm(h);
      const Operator hop(h, {2, 4});
      const Operator u = matexp(hop, 2.5);
      if (!u.is_unitary()) return false;
      if (spectral_norm(Matrix(matlog_unitary(u).matrix() - 2.5 * h)) > 1e-9) return false;
    }
    return true;
  });
  checks.emplace_back("mod_b is idempotent and kills pure-bath terms", [&] {
    std::mt19937_64 rng(11);
    const Operator e(random_hermitian(8, rng), {2, 4});
    const Operator once = mod_b(e);
    const Operator pure = tensor(pauli(0), random_hermitian(4, rng));
    return spectral_norm(mod_b(once) - once) <= 1e-12 && spectral_norm(mod_b(pure)) <= 1e-12;
  });
  checks.emplace_back("coupling draws are deterministic", [] {
    SpinBathSpec spec;
    return assemble(spec).h_e.matrix() == assemble(spec).h_e.matrix();
  });
  checks.emplace_back("bound chain holds on a level-1 simulation", [&] {
    SpinBathSpec spec;
    Synthesizer synth(g);
    SimulationConfig sc;
    sc.h_e = assemble(spec).h_e;
    sc.target = SweepConfig::default_gate();
    sc.schedule = flatten(*synth.build(sc.target, 1), 1.0, 1e-3 / spec.j_max);
    const SimulationResult r = evaluate(sc);
    const double d = 0.5 * r.trace_dist;
    return r.u_total.is_unitary() && d <= r.epg_eta + 1e-9 && r.infidelity <= d + 1e-12 &&
           r.infidelity + 1e-12 >= d * d / (1.0 + std::sqrt(1.0 - d * d));
  });

  bool all = true;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    std::string detail;
    try {
      ok = check();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    all = all && ok;
    os << (ok ? "[PASS] " : "[FAIL] ") << name << detail << '\n';
  }
  return all;
}

}  // namespace cdcg
