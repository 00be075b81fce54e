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

#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "cdcg/config.hpp"
#include "cdcg/errors.hpp"

namespace cdcg {
namespace {

std::string error_of(const std::string& json) {
  try {
    parse_config(json);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, EmptyObjectGivesDefaults) {
  const SweepConfig c = parse_config("{}");
  EXPECT_EQ(c, SweepConfig{});
  EXPECT_EQ(c.bath.n_bath, 3);
  EXPECT_EQ(c.bath.j_max, 10.0);
  EXPECT_EQ(c.bath.b_max, 1e-2);
  EXPECT_EQ(c.levels, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(c.gate.axis(), (Vec3{1.0, 0.0, 0.0}));
  EXPECT_NEAR(c.gate.angle(), 2.0 * std::numbers::pi / 3.0, 1e-15);
  EXPECT_EQ(c.tau_grid.points, 21);
}

TEST(Config, TauGridValues) {
  const auto v = TauGrid{-6.0, -1.0, 21}.log10_values();
  ASSERT_EQ(v.size(), 21u);
  EXPECT_EQ(v.front(), -6.0);
  EXPECT_EQ(v.back(), -1.0);
  EXPECT_NEAR(v[1], -5.75, 1e-15);
}

TEST(Config, Seeds) {
  SweepConfig c;
  c.bath.seed = 7;
  c.replicates = 3;
  EXPECT_EQ(c.seeds(), (std::vector<std::uint64_t>{7, 8, 9}));
}

TEST(Config, ErrorsNameFieldPaths) {
  EXPECT_NE(error_of(R"({"levels":[5]})").find("levels[0]"), std::string::npos);
  EXPECT_NE(error_of(R"({"levels":[0, -1]})").find("levels[1]"), std::string::npos);
  EXPECT_NE(error_of(R"({"bath":{"nbath":3}})").find("bath.nbath"), std::string::npos);
  EXPECT_NE(error_of(R"({"bath":{"n_bath":"x"}})").find("bath.n_bath"), std::string::npos);
  EXPECT_NE(error_of(R"({"bath":{"n_bath":12}})").find("bath.n_bath"), std::string::npos);
  EXPECT_NE(error_of(R"({"bath":{"j_max":0}})").find("bath.j_max"), std::string::npos);
  EXPECT_NE(error_of(R"({"gate":{"axis":[1,1,0]}})").find("gate.axis"), std::string::npos);
  EXPECT_NE(error_of(R"({"tau_grid":{"points":1}})").find("tau_grid.points"), std::string::npos);
  EXPECT_NE(error_of(R"({"tau_grid":{"log10_start":-1,"log10_stop":-2}})").find("tau_grid"), std::string::npos);
  EXPECT_NE(error_of(R"({"replicates":0})").find("replicates"), std::string::npos);
  EXPECT_NE(error_of(R"({"workers":0})").find("workers"), std::string::npos);
  EXPECT_NE(error_of(R"({"levels":[]})").find("levels"), std::string::npos);
  EXPECT_FALSE(error_of("[1]").empty());
  EXPECT_FALSE(error_of("{").empty());
}

TEST(Config, RoundTrip) {
  SweepConfig c;
  c.bath.n_bath = 5;
  c.bath.j_max = 7.25;
  c.bath.b_max = 3e-3;
  c.bath.seed = 42;
  c.bath.h_drift = {0.1, -0.2, 1.0 / 3.0};
  c.gate = GateSpec({0.0, 0.6, 0.8}, 0.123456789012345);
  c.levels = {0, 2};
  c.tau_grid = {-5.5, -2.0, 8};
  c.replicates = 2;
  c.workers = 4;
  c.output_path = "out/run.csv";
  const std::string text = serialize_config(c);
  EXPECT_EQ(parse_config(text), c);
  EXPECT_EQ(serialize_config(parse_config(text)), text);
}

TEST(Config, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "cdcg_config_test.json";
  {
    std::ofstream os(path);
    os << R"({"bath": {"n_bath": 2}, "levels": [1]})";
  }
  const SweepConfig c = load_config(path);
  EXPECT_EQ(c.bath.n_bath, 2);
  EXPECT_EQ(c.levels, std::vector<int>{1});
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), ValidationError);
}

}  // namespace
}  // namespace cdcg
