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

#include "cdcg/group.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <sstream>

#include "cdcg/errors.hpp"

namespace cdcg {

GateSpec::GateSpec(Vec3 axis, double angle) : axis_(axis), angle_(angle) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(n - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "GateSpec: rotation axis must be a unit vector, |axis| = " << n;
    throw ValidationError(os.str());
  }
}

Matrix GateSpec::unitary() const {
  Matrix n = axis_[0] * pauli(1) + axis_[1] * pauli(2) + axis_[2] * pauli(3);
  const double half = 0.5 * angle_;
  // n . sigma squares to the identity.
  return std::cos(half) * pauli(0) - Complex(0.0, std::sin(half)) * n;
}

double phase_distance(const Matrix& a, const Matrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return spectral_norm(Matrix(a - phase * b));
}

GateSpec gate_from_unitary(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || spectral_norm(Matrix(u.adjoint() * u - Matrix::Identity(2, 2))) > kUnitaryTol) {
    throw ValidationError("gate_from_unitary: expected a 2x2 unitary");
  }
  // Remove the phase so that det = 1, then read off cos(angle/2) I - i sin(angle/2) n.sigma.
  const Matrix su = u / std::sqrt(u.determinant());
  double c = 0.5 * su.trace().real();
  Vec3 v{};
  for (int a = 0; a < 3; ++a) v[static_cast<std::size_t>(a)] = -0.5 * (pauli(a + 1) * su).trace().imag();
  double s = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (s < 1e-15) return GateSpec::identity();
  if (c < 0.0) {
    c = -c;
    for (double& x : v) x = -x;
  }
  for (double& x : v) x /= s;
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  for (double& x : v) x /= norm;
  return GateSpec(v, 2.0 * std::atan2(s, c));
}

DecouplingGroup::DecouplingGroup(std::vector<Matrix> elements,
                                 std::vector<std::string> element_labels,
                                 std::vector<GateSpec> generators)
    : elements_(std::move(elements)),
      labels_(std::move(element_labels)),
      generators_(std::move(generators)) {
  if (elements_.empty() || labels_.size() != elements_.size()) {
    throw ValidationError("DecouplingGroup: need one label per element and at least one element");
  }
  const Index n = elements_.front().rows();
  if (!equal_up_to_phase(elements_.front(), Matrix::Identity(n, n))) {
    throw ValidationError("DecouplingGroup: element 0 must be the identity");
  }
  for (const auto& gen : generators_) {
    if (n != 2) throw ValidationError("DecouplingGroup: rotation generators require a qubit");
    generator_elements_.push_back(index_of(gen.unitary()));
  }
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    for (std::size_t b = 0; b < elements_.size(); ++b) {
      index_of(elements_[a] * elements_[b]);  // throws if not closed
    }
  }
  cayley_.resize(elements_.size());
  for (std::size_t v = 0; v < elements_.size(); ++v) {
    for (const auto& gen : generators_) cayley_[v].push_back(index_of(gen.unitary() * elements_[v]));
  }
}

std::size_t DecouplingGroup::index_of(const Matrix& u) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (u.rows() == elements_[i].rows() && equal_up_to_phase(u, elements_[i], 1e-9)) return i;
  }
  throw ValidationError("DecouplingGroup: operator is not a group element (closure violated)");
}

DecouplingGroup pauli_group() {
  constexpr double pi = std::numbers::pi;
  return DecouplingGroup({pauli(0), pauli(1), pauli(2), pauli(3)}, {"I", "X", "Y", "Z"},
                         {GateSpec({1.0, 0.0, 0.0}, pi), GateSpec({0.0, 1.0, 0.0}, pi)});
}

Operator group_average(const DecouplingGroup& g, const Operator& e) {
  if (e.dim_s() != g.system_dim()) {
    throw ValidationError("group_average: group acts on a different system dimension");
  }
  Operator sum = Operator::zero(e.factorization());
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Operator d = embed_system(g.element(i), e.dim_b());
    sum += d.adjoint() * e * d;
  }
  sum *= Complex(1.0 / static_cast<double>(g.order()));
  return sum;
}

bool decouples(const DecouplingGroup& g, const Matrix& system_op, double tol) {
  // With a trivial bath factor mod_b removes exactly the identity component.
  return spectral_norm(mod_b(group_average(g, Operator::on_system(system_op)))) <= tol;
}

std::vector<std::size_t> eulerian_cycle(const DecouplingGroup& g) {
  const std::size_t d = g.order();
  const std::size_t m = g.generator_count();
  if (m == 0) throw ValidationError("eulerian_cycle: no generators");

  std::vector<bool> seen(d, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t w = g.step(v, j);
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  if (reached != d) {
    std::ostringstream os;
    os << "eulerian_cycle: generators reach " << reached << " of " << d
       << " elements; the Cayley graph is disconnected";
    throw ValidationError(os.str());
  }

  struct Edge {
    std::size_t from;
    std::size_t gen;
  };
  std::vector<std::vector<bool>> used(d, std::vector<bool>(m, false));

  // Greedy closed trail from `start`, entered via `last` (if any).
  const auto trail = [&](std::size_t start, std::optional<std::size_t> last) {
    std::vector<Edge> path;
    std::size_t v = start;
    for (;;) {
      std::optional<std::size_t> pick;
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = last ? (*last + 1 + k) % m : k;
        if (!used[v][j]) {
          pick = j;
          break;
        }
      }
      if (!pick) break;
      used[v][*pick] = true;
      path.push_back({v, *pick});
      v = g.step(v, *pick);
      last = pick;
    }
    return path;
  };

  std::vector<Edge> cycle = trail(0, std::nullopt);
  for (;;) {
    std::size_t splice = cycle.size();
    for (std::size_t i = 0; i < cycle.size() && splice == cycle.size(); ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (!used[cycle[i].from][j]) {
          splice = i;
          break;
        }
      }
    }
    if (splice == cycle.size()) break;
    const std::optional<std::size_t> entry =
        splice == 0 ? std::nullopt : std::optional<std::size_t>(cycle[splice - 1].gen);
    std::vector<Edge> detour = trail(cycle[splice].from, entry);
    cycle.insert(cycle.begin() + static_cast<std::ptrdiff_t>(splice), detour.begin(), detour.end());
  }

  std::vector<std::size_t> word;
  word.reserve(cycle.size());
  for (const auto& e : cycle) word.push_back(e.gen);
  return word;
}

}  // namespace cdcg
