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

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "cdcg/group.hpp"

namespace cdcg {

enum class GateKind { primitive, sequence };

struct GateTree;
using GateTreePtr = std::shared_ptr<const GateTree>;

struct GateChild {
  GateTreePtr gate;
  double stretch = 1.0;  // control profile slowed by this factor
};

// Composite gate description. Children are in time order (first applied
// first); operator products run the other way. Subtrees are shared, so a
// level-4 tree is small even though it expands to 17^4 primitives.
struct GateTree {
  int level = 0;
  GateKind kind = GateKind::primitive;
  std::string label;
  GateSpec target;
  std::vector<GateChild> children;
  // Duration before any external stretching, in units of the primitive
  // switching time tau0.
  double base_duration = 1.0;

  std::size_t primitive_count() const;
  // Product of the children's target unitaries, later children on the left.
  Matrix composed_unitary() const;
};

GateTreePtr make_primitive(const GateSpec& target, std::string label);

// Primitive inverse: same axis, negated angle.
GateTreePtr invert_primitive(const GateTree& q);

struct BalancePair {
  GateTreePtr identity;  // I_Q: Q[r tau] then Q^-1[tau], r = 2^(1/(level+1))
  GateTreePtr target;    // Q_*: Q[tau] then Q^-1[tau] then Q[tau]
};

// Builds the order-`q.level` balance pair from implementations of Q and Q^-1
// at the same level.
BalancePair balance_pair(const GateTreePtr& q, const GateTreePtr& q_inverse);

// Level-l building blocks for one concatenation step.
struct LevelGates {
  std::vector<GateTreePtr> generators;  // one per group generator, declared order
  GateTreePtr target;
  GateTreePtr target_inverse;
};

// Level l+1 implementation of gates.target: the Eulerian generator word with
// I_Q inserted right after the first visit to each non-identity vertex,
// followed by Q_*. Throws ValidationError for missing generator gates.
GateTreePtr concatenate(const LevelGates& gates, const DecouplingGroup& g);

// tau_{l+1} / tau_l = d m + (d - 1)(1 + 2^(1/(l+1))) + 3.
double level_duration_factor(int level, const DecouplingGroup& g);
// Closed-form tau_l for primitives of duration tau0.
double duration(int level, double tau0, const DecouplingGroup& g);

// Builds and memoizes DCG trees for the universal set generated by the
// group generators, a target gate, and their inverses. Not thread safe;
// the trees it returns are immutable and may be shared freely.
class Synthesizer {
 public:
  explicit Synthesizer(DecouplingGroup group);

  const DecouplingGroup& group() const { return group_; }

  GateTreePtr build(const GateSpec& target, int level);
  // Same-level implementation of the inverse target, built by the full
  // construction rather than by reversing q.
  GateTreePtr invert(const GateTree& q);
  BalancePair balance_pair(const GateSpec& target, int level);

 private:
  std::string label_for(const GateSpec& target) const;

  DecouplingGroup group_;
  std::map<std::tuple<double, double, double, double, int>, GateTreePtr> cache_;
};

struct PrimitiveSegment {
  Vec3 axis{1.0, 0.0, 0.0};
  double angle = 0.0;
  double duration = 1.0;

  // Rabi-type amplitude of the constant control Hamiltonian.
  double amplitude() const { return angle / (2.0 * duration); }
  Matrix unitary() const { return GateSpec(axis, angle).unitary(); }
};

struct Schedule {
  std::vector<PrimitiveSegment> segments;
  double total_duration = 0.0;
};

// Depth-first expansion. Stretch factors multiply down the tree; a primitive
// under accumulated stretch r becomes one segment of duration r * tau0 with
// its angle unchanged.
Schedule flatten(const GateTree& tree, double stretch, double tau0);

// Product of segment unitaries with no error Hamiltonian.
Matrix ideal_unitary(const Schedule& s);

// Plain-text table: a '#' header line, then one line per segment with
// index, axis_x, axis_y, axis_z, angle_rad, duration separated by spaces.
void write_schedule_table(std::ostream& os, const Schedule& s);
Schedule read_schedule_table(std::istream& is);

}  // namespace cdcg
