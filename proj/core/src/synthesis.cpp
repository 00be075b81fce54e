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

#include "cdcg/synthesis.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "cdcg/errors.hpp"

namespace cdcg {
namespace {

constexpr double kTargetTol = 1e-10;

GateTreePtr make_sequence(int level, std::string label, const GateSpec& target,
                          std::vector<GateChild> children) {
  auto node = std::make_shared<GateTree>();
  node->level = level;
  node->kind = GateKind::sequence;
  node->label = std::move(label);
  node->target = target;
  node->base_duration = 0.0;
  for (const auto& c : children) node->base_duration += c.stretch * c.gate->base_duration;
  node->children = std::move(children);
  const double miss = phase_distance(node->composed_unitary(), target.unitary());
  if (miss > kTargetTol) {
    std::ostringstream os;
    os << "gate '" << node->label << "': children compose to the wrong unitary (distance " << miss
       << ")";
    throw ValidationError(os.str());
  }
  return node;
}

void flatten_into(const GateTree& t, double stretch, double tau0, Schedule& out) {
  if (t.kind == GateKind::primitive) {
    out.segments.push_back({t.target.axis(), t.target.angle(), stretch * tau0});
    return;
  }
  for (const auto& c : t.children) flatten_into(*c.gate, stretch * c.stretch, tau0, out);
}

}  // namespace

std::size_t GateTree::primitive_count() const {
  if (kind == GateKind::primitive) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.gate->primitive_count();
  return n;
}

Matrix GateTree::composed_unitary() const {
  if (kind == GateKind::primitive) return target.unitary();
  Matrix u = Matrix::Identity(2, 2);
  for (const auto& c : children) u = c.gate->target.unitary() * u;
  return u;
}

GateTreePtr make_primitive(const GateSpec& target, std::string label) {
  auto node = std::make_shared<GateTree>();
  node->level = 0;
  node->kind = GateKind::primitive;
  node->label = std::move(label);
  node->target = target;
  node->base_duration = 1.0;
  return node;
}

GateTreePtr invert_primitive(const GateTree& q) {
  if (q.kind != GateKind::primitive) {
    throw ValidationError("invert_primitive: composite gates need Synthesizer::invert");
  }
  return make_primitive(q.target.inverse(), q.label + "^-1");
}

BalancePair balance_pair(const GateTreePtr& q, const GateTreePtr& q_inverse) {
  if (!q || !q_inverse) throw ValidationError("balance_pair: missing gate");
  if (q->level != q_inverse->level) {
    throw ValidationError("balance_pair: Q and Q^-1 must have the same level");
  }
  const int level = q->level;
  const double r = std::pow(2.0, 1.0 / (level + 1));
  BalancePair pair;
  pair.identity =
      make_sequence(level, "I_" + q->label, GateSpec::identity(), {{q, r}, {q_inverse, 1.0}});
  pair.target = make_sequence(level, q->label + "*", q->target,
                              {{q, 1.0}, {q_inverse, 1.0}, {q, 1.0}});
  return pair;
}

GateTreePtr concatenate(const LevelGates& gates, const DecouplingGroup& g) {
  if (gates.generators.size() != g.generator_count()) {
    std::ostringstream os;
    os << "concatenate: group has " << g.generator_count() << " generators but "
       << gates.generators.size() << " implementations were supplied";
    throw ValidationError(os.str());
  }
  for (std::size_t j = 0; j < gates.generators.size(); ++j) {
    if (!gates.generators[j]) {
      throw ValidationError("concatenate: missing implementation of generator " +
                            g.generator_label(j));
    }
  }
  if (!gates.target || !gates.target_inverse) {
    throw ValidationError("concatenate: missing target or inverse implementation");
  }
  const int level = gates.target->level;
  const BalancePair pair = balance_pair(gates.target, gates.target_inverse);

  std::vector<GateChild> children;
  std::vector<bool> visited(g.order(), false);
  visited[0] = true;
  std::size_t vertex = 0;
  for (const std::size_t j : eulerian_cycle(g)) {
    children.push_back({gates.generators[j], 1.0});
    vertex = g.step(vertex, j);
    if (!visited[vertex]) {
      visited[vertex] = true;
      children.push_back({pair.identity, 1.0});
    }
  }
  children.push_back({pair.target, 1.0});
  return make_sequence(level + 1, gates.target->label.substr(0, gates.target->label.find('[')) +
                                      "[" + std::to_string(level + 1) + "]",
                       gates.target->target, std::move(children));
}

double level_duration_factor(int level, const DecouplingGroup& g) {
  const double d = static_cast<double>(g.order());
  const double m = static_cast<double>(g.generator_count());
  return d * m + (d - 1.0) * (1.0 + std::pow(2.0, 1.0 / (level + 1))) + 3.0;
}

double duration(int level, double tau0, const DecouplingGroup& g) {
  if (level < 0) throw ValidationError("duration: level must be nonnegative");
  double tau = tau0;
  for (int k = 0; k < level; ++k) tau *= level_duration_factor(k, g);
  return tau;
}

Synthesizer::Synthesizer(DecouplingGroup group) : group_(std::move(group)) {}

std::string Synthesizer::label_for(const GateSpec& target) const {
  for (std::size_t j = 0; j < group_.generator_count(); ++j) {
    if (group_.generator(j) == target) return group_.generator_label(j);
    if (group_.generator(j).inverse() == target) return group_.generator_label(j) + "^-1";
  }
  std::ostringstream os;
  os << "R(" << target.axis()[0] << "," << target.axis()[1] << "," << target.axis()[2] << ";"
     << target.angle() << ")";
  return os.str();
}

GateTreePtr Synthesizer::build(const GateSpec& target, int level) {
  if (level < 0) throw ValidationError("Synthesizer::build: level must be nonnegative");
  const auto key = std::make_tuple(target.axis()[0], target.axis()[1], target.axis()[2],
                                   target.angle(), level);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  GateTreePtr tree;
  if (level == 0) {
    tree = make_primitive(target, label_for(target));
  } else {
    LevelGates gates;
    for (std::size_t j = 0; j < group_.generator_count(); ++j) {
      gates.generators.push_back(build(group_.generator(j), level - 1));
    }
    gates.target = build(target, level - 1);
    gates.target_inverse = build(target.inverse(), level - 1);
    tree = concatenate(gates, group_);
  }
  cache_.emplace(key, tree);
  return tree;
}

GateTreePtr Synthesizer::invert(const GateTree& q) { return build(q.target.inverse(), q.level); }

BalancePair Synthesizer::balance_pair(const GateSpec& target, int level) {
  return cdcg::balance_pair(build(target, level), build(target.inverse(), level));
}

Schedule flatten(const GateTree& tree, double stretch, double tau0) {
  if (!(stretch > 0.0) || !(tau0 > 0.0)) {
    throw ValidationError("flatten: stretch and tau0 must be positive");
  }
  Schedule s;
  s.segments.reserve(tree.primitive_count());
  flatten_into(tree, stretch, tau0, s);
  for (const auto& seg : s.segments) s.total_duration += seg.duration;
  return s;
}

Matrix ideal_unitary(const Schedule& s) {
  Matrix u = Matrix::Identity(2, 2);
  for (const auto& seg : s.segments) u = seg.unitary() * u;
  return u;
}

void write_schedule_table(std::ostream& os, const Schedule& s) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << "# index axis_x axis_y axis_z angle_rad duration\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const auto& seg = s.segments[i];
    os << i << ' ' << seg.axis[0] << ' ' << seg.axis[1] << ' ' << seg.axis[2] << ' ' << seg.angle
       << ' ' << seg.duration << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

Schedule read_schedule_table(std::istream& is) {
  Schedule s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::size_t index = 0;
    PrimitiveSegment seg;
    if (!(ls >> index >> seg.axis[0] >> seg.axis[1] >> seg.axis[2] >> seg.angle >> seg.duration)) {
      throw ValidationError("schedule table line " + std::to_string(line_no) + ": malformed");
    }
    if (index != s.segments.size()) {
      throw ValidationError("schedule table line " + std::to_string(line_no) +
                            ": segment index out of sequence");
    }
    if (!(seg.duration > 0.0)) {
      throw ValidationError("schedule table line " + std::to_string(line_no) +
                            ": duration must be positive");
    }
    s.total_duration += seg.duration;
    s.segments.push_back(seg);
  }
  return s;
}

}  // namespace cdcg
