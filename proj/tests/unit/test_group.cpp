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
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include <gtest/gtest.h>

#include "cdcg/errors.hpp"
#include "cdcg/group.hpp"
#include "test_util.hpp"

namespace cdcg {
namespace {

using testing::kron_loop;
using testing::max_abs;

constexpr double pi = std::numbers::pi;

std::string word(const DecouplingGroup& g, const std::vector<std::size_t>& cycle) {
  std::string w;
  for (std::size_t j : cycle) w += g.generator_label(j);
  return w;
}

// Checks the walk starts and ends at the identity and uses each Cayley edge once.
void expect_eulerian(const DecouplingGroup& g, const std::vector<std::size_t>& cycle) {
  ASSERT_EQ(cycle.size(), g.order() * g.generator_count());
  std::map<std::pair<std::size_t, std::size_t>, int> used;
  std::size_t v = 0;
  Matrix product = Matrix::Identity(g.system_dim(), g.system_dim());
  for (std::size_t j : cycle) {
    ++used[{v, j}];
    product = g.generator(j).unitary() * product;
    v = g.step(v, j);
    EXPECT_TRUE(equal_up_to_phase(product, g.element(v)));
  }
  EXPECT_EQ(v, 0u);
  for (const auto& [edge, count] : used) EXPECT_EQ(count, 1);
  EXPECT_EQ(used.size(), cycle.size());
}

TEST(GateSpec, RejectsNonUnitAxis) {
  EXPECT_THROW(GateSpec({1.0, 1.0, 0.0}, 1.0), ValidationError);
  EXPECT_NO_THROW(GateSpec({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0}, 1.0));
}

TEST(GateSpec, PiRotationIsPauli) {
  const Complex i(0.0, 1.0);
  EXPECT_LT(max_abs(GateSpec({1, 0, 0}, pi).unitary() + i * pauli(1)), 1e-15);
  EXPECT_LT(max_abs(GateSpec({0, 1, 0}, pi).unitary() + i * pauli(2)), 1e-15);
  EXPECT_LT(max_abs(GateSpec::identity().unitary() - pauli(0)), 1e-15);
}

TEST(GateSpec, InverseUndoes) {
  const GateSpec q({0.0, 0.6, 0.8}, 2.0 * pi / 3.0);
  EXPECT_LT(max_abs(q.inverse().unitary() * q.unitary() - pauli(0)), 1e-15);
}

TEST(PhaseDistance, IgnoresGlobalPhase) {
  const Matrix x = pauli(1);
  EXPECT_NEAR(phase_distance(x, std::polar(1.0, 1.234) * x), 0.0, 1e-15);
  EXPECT_GT(phase_distance(x, pauli(2)), 1.0);
}

TEST(PauliGroup, Structure) {
  const DecouplingGroup g = pauli_group();
  EXPECT_EQ(g.order(), 4u);
  EXPECT_EQ(g.generator_count(), 2u);
  EXPECT_EQ(g.generator_label(0), "X");
  EXPECT_EQ(g.generator_label(1), "Y");
  EXPECT_TRUE(equal_up_to_phase(g.element(0), pauli(0)));
  for (std::size_t v = 0; v < 4; ++v) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_TRUE(equal_up_to_phase(g.element(g.step(v, j)), g.generator(j).unitary() * g.element(v)));
    }
  }
}

TEST(PauliGroup, RejectsNonClosedSet) {
  EXPECT_THROW(DecouplingGroup({pauli(0), pauli(1), pauli(2)}, {"I", "X", "Y"},
                               {GateSpec({1, 0, 0}, pi), GateSpec({0, 1, 0}, pi)}),
               ValidationError);
}

TEST(GroupAverage, KillsSystemDependence) {
  const DecouplingGroup g = pauli_group();
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) {
    const Matrix b = testing::random_hermitian(4, rng);
    for (int a = 1; a <= 3; ++a) {
      EXPECT_LE(spectral_norm(group_average(g, tensor(pauli(a), b))), 1e-12);
    }
    const Operator bath = tensor(pauli(0), b);
    EXPECT_LT(max_abs(group_average(g, bath).matrix() - bath.matrix()), 1e-13);
  }
}

TEST(GroupAverage, MatchesExplicitSum) {
  const DecouplingGroup g = pauli_group();
  std::mt19937_64 rng(2);
  const Matrix e = testing::random_hermitian(8, rng);
  Matrix expected = Matrix::Zero(8, 8);
  for (int a = 0; a < 4; ++a) {
    const Matrix p = kron_loop(pauli(a), Matrix::Identity(4, 4));
    expected += 0.25 * p.adjoint() * e * p;
  }
  const Operator avg = group_average(g, Operator(e, {2, 4}));
  EXPECT_LT(max_abs(avg.matrix() - expected), 1e-13);
  EXPECT_LE(spectral_norm(mod_b(avg)), 1e-12);
}

TEST(Decouples, PauliGroupDecouplesEverything) {
  const DecouplingGroup g = pauli_group();
  for (int a = 1; a <= 3; ++a) EXPECT_TRUE(decouples(g, pauli(a)));
  const DecouplingGroup z2({pauli(0), pauli(1)}, {"I", "X"}, {GateSpec({1, 0, 0}, pi)});
  EXPECT_TRUE(decouples(z2, pauli(3)));
  EXPECT_FALSE(decouples(z2, pauli(1)));
}

TEST(Eulerian, PauliWord) {
  const DecouplingGroup g = pauli_group();
  const auto cycle = eulerian_cycle(g);
  EXPECT_EQ(word(g, cycle), "XYXYYXYX");
  expect_eulerian(g, cycle);
}

TEST(Eulerian, PartialProductsVisitEachVertexTwice) {
  const DecouplingGroup g = pauli_group();
  std::vector<int> visits(4, 0);
  std::size_t v = 0;
  for (std::size_t j : eulerian_cycle(g)) {
    v = g.step(v, j);
    ++visits[v];
  }
  for (int n : visits) EXPECT_EQ(n, 2);
}

TEST(Eulerian, OtherGeneratingSets) {
  const DecouplingGroup three({pauli(0), pauli(1), pauli(2), pauli(3)}, {"I", "X", "Y", "Z"},
                              {GateSpec({1, 0, 0}, pi), GateSpec({0, 1, 0}, pi), GateSpec({0, 0, 1}, pi)});
  expect_eulerian(three, eulerian_cycle(three));
  const DecouplingGroup z2({pauli(0), pauli(1)}, {"I", "X"}, {GateSpec({1, 0, 0}, pi)});
  EXPECT_EQ(word(z2, eulerian_cycle(z2)), "XX");
}

TEST(Eulerian, RejectsNonGeneratingSet) {
  const DecouplingGroup g({pauli(0), pauli(1), pauli(2), pauli(3)}, {"I", "X", "Y", "Z"},
                          {GateSpec({1, 0, 0}, pi)});
  EXPECT_THROW(eulerian_cycle(g), ValidationError);
}

}  // namespace
}  // namespace cdcg

namespace cdcg {
namespace {

TEST(GateFromUnitary, RecoversRotations) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> ang(-6.0, 6.0);
  for (int k = 0; k < 50; ++k) {
    Vec3 axis{n(rng), n(rng), n(rng)};
    const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    for (double& x : axis) x /= len;
    const Matrix u = std::polar(1.0, ang(rng)) * GateSpec(axis, ang(rng)).unitary();
    const GateSpec g = gate_from_unitary(u);
    EXPECT_LE(phase_distance(g.unitary(), u), 1e-12);
    EXPECT_GE(g.angle(), 0.0);
    EXPECT_LE(g.angle(), pi + 1e-12);
  }
  EXPECT_EQ(gate_from_unitary(pauli(0)), GateSpec::identity());
  EXPECT_THROW(gate_from_unitary(Matrix(2.0 * pauli(0))), ValidationError);
}

}  // namespace
}  // namespace cdcg
