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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cdcg/operator.hpp"

namespace cdcg {

using Vec3 = std::array<double, 3>;

// Rotation exp(-i (angle/2) axis . sigma) on the Bloch sphere.
class GateSpec {
 public:
  GateSpec() = default;
  // Throws ValidationError unless |axis| = 1 within 1e-12.
  GateSpec(Vec3 axis, double angle);

  static GateSpec identity() { return {}; }

  const Vec3& axis() const { return axis_; }
  double angle() const { return angle_; }

  Matrix unitary() const;
  GateSpec inverse() const { return GateSpec(axis_, -angle_); }

  friend bool operator==(const GateSpec&, const GateSpec&) = default;

 private:
  Vec3 axis_{1.0, 0.0, 0.0};
  double angle_ = 0.0;
};

// min over phi of ||a - e^{i phi} b||, with phi fixed by aligning Tr(b^dagger a)
// to the positive real axis.
double phase_distance(const Matrix& a, const Matrix& b);

// Rotation equal to the 2x2 unitary `u` up to global phase, angle in [0, pi].
GateSpec gate_from_unitary(const Matrix& u);

inline bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol = 1e-10) {
  return phase_distance(a, b) <= tol;
}

// Projective unitary representation of a finite group on the system, with an
// ordered generating set. Element 0 is the identity.
class DecouplingGroup {
 public:
  // Throws ValidationError if the elements are not closed under
  // multiplication up to phase or a generator is not an element.
  DecouplingGroup(std::vector<Matrix> elements, std::vector<std::string> element_labels,
                  std::vector<GateSpec> generators);

  std::size_t order() const { return elements_.size(); }
  std::size_t generator_count() const { return generators_.size(); }
  Index system_dim() const { return elements_.front().rows(); }

  const Matrix& element(std::size_t i) const { return elements_[i]; }
  const std::string& element_label(std::size_t i) const { return labels_[i]; }
  const GateSpec& generator(std::size_t j) const { return generators_[j]; }
  const std::string& generator_label(std::size_t j) const { return labels_[generator_elements_[j]]; }

  // Index of the element equal to `u` up to phase; throws if none.
  std::size_t index_of(const Matrix& u) const;
  // Vertex reached by applying generator `gen` after `vertex`: F_gen * D_vertex.
  std::size_t step(std::size_t vertex, std::size_t gen) const { return cayley_[vertex][gen]; }

 private:
  std::vector<Matrix> elements_;
  std::vector<std::string> labels_;
  std::vector<GateSpec> generators_;
  std::vector<std::size_t> generator_elements_;
  std::vector<std::vector<std::size_t>> cayley_;
};

// {I, X, Y, Z} generated by X and Y, both realized as pi rotations.
DecouplingGroup pauli_group();

// (1/d) sum_i D_i^dagger e D_i with D_i acting on the system factor.
Operator group_average(const DecouplingGroup& g, const Operator& e);

// True when the group average of `system_op` (x) B carries no system
// dependence, i.e. mod_b of it vanishes for every bath operator B.
bool decouples(const DecouplingGroup& g, const Matrix& system_op, double tol = 1e-12);

// Eulerian cycle on the Cayley graph starting and ending at the identity.
// Returns generator indices in time order. Hierholzer's algorithm; at each
// vertex generators are tried in cyclic declared order beginning after the
// generator just applied. For the Pauli group with (X, Y) this yields
// X Y X Y Y X Y X. Throws ValidationError if the generators do not
// generate the group.
std::vector<std::size_t> eulerian_cycle(const DecouplingGroup& g);

}  // namespace cdcg
