// Copyright 2026 The cgnet Authors
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

#include "cgnet/config.hpp"

#include <gtest/gtest.h>

namespace cgnet {
namespace {

TEST(ScanConfig, DefaultsRoundTrip) {
  const ScanConfig c;
  const Json j = to_json(c);
  EXPECT_EQ(to_json(scan_config_from_json(j)), j);
  const auto p = protocol_config(c);
  EXPECT_EQ(p.passes.size(), 3u);
  EXPECT_EQ(p.scan.mode, ExecMode::sampled);
  EXPECT_EQ(p.scan.construction, Construction::reversal);
  EXPECT_EQ(p.scan.time_draws, TimeDraws::per_energy);
}

TEST(ScanConfig, PartialOverrides) {
  const auto c = scan_config_from_json(Json::parse(R"({
    "mode": "exact", "n_cycles": 3, "seed": 17, "time_draws": "shared",
    "passes": [{"sigma": 4}, {"sigma": 14, "n_circuits": 2}, {"sigma": 24, "n_shots": 512}],
    "noise": {"p2q": 0.0}
  })"));
  EXPECT_EQ(c.n_cycles, 3);
  EXPECT_EQ(c.seed, 17u);
  ASSERT_EQ(c.passes.size(), 3u);
  EXPECT_EQ(c.passes[1].n_circuits, 2);
  EXPECT_EQ(c.passes[2].n_shots, 512);
  EXPECT_EQ(protocol_config(c).scan.mode, ExecMode::exact);
  EXPECT_EQ(protocol_config(c).scan.time_draws, TimeDraws::shared);
}

TEST(ScanConfig, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(scan_config_from_json(Json::parse(R"({"n_cycle": 3})")), ConfigError);
  EXPECT_THROW(scan_config_from_json(Json::parse(R"({"noise": {"p3q": 0.1}})")), ConfigError);
  EXPECT_THROW(scan_config_from_json(Json::parse(R"({"passes": [{"width": 1}]})")), ConfigError);
  EXPECT_THROW(scan_config_from_json(Json::parse(R"({"n_cycles": "five"})")), ConfigError);
  EXPECT_THROW(scan_config_from_json(Json::parse("[1, 2]")), ConfigError);
}

TEST(ScanConfig, ValidationErrors) {
  const auto invalid = [](auto edit) {
    ScanConfig c;
    edit(c);
    EXPECT_THROW(protocol_config(c), ConfigError);
  };
  invalid([](ScanConfig& c) { c.n_cycles = 0; });
  invalid([](ScanConfig& c) { c.passes.pop_back(); });
  invalid([](ScanConfig& c) { c.passes[0].sigma = -1; });
  invalid([](ScanConfig& c) { c.mode = "analog"; });
  invalid([](ScanConfig& c) { c.construction = "mirror"; });
  invalid([](ScanConfig& c) { c.time_draws = "per_pass"; });
  invalid([](ScanConfig& c) { c.noise_p2q = 1.5; });
  invalid([](ScanConfig& c) {
    c.mode = "exact";
    c.noise_p2q = 0.01;
  });
  ScanConfig c;
  c.evolution = "split";
  EXPECT_THROW(evolution_setting(c), ConfigError);
  c.evolution = "trotter";
  c.dt = 0;
  EXPECT_THROW(evolution_setting(c), ConfigError);
}

TEST(VarsubConfig, RoundTripAndErrors) {
  VarsubConfig c;
  c.parameter_sets = {{0.1, 0.2, 0.3, 0.4}, {}};
  c.method = "hadamard";
  const Json j = to_json(c);
  const auto back = varsub_config_from_json(j);
  EXPECT_EQ(to_json(back), j);
  EXPECT_DOUBLE_EQ(back.parameter_sets[0].gamma, 0.3);
  EXPECT_THROW(varsub_config_from_json(Json::parse(R"({"parameter_sets": [{"epsilon": 1}]})")), ConfigError);
  EXPECT_THROW(varsub_config_from_json(Json::parse(R"({"parameter_sets": 3})")), ConfigError);
}

TEST(NoiseSweepConfig, RoundTripAndErrors) {
  NoiseSweepConfig c;
  c.eps = {0.02};
  c.mc_draws = 100;
  const Json j = to_json(c);
  EXPECT_EQ(to_json(noise_sweep_config_from_json(j)), j);
  EXPECT_THROW(noise_sweep_config_from_json(Json::parse(R"({"sigma": [4]})")), ConfigError);
}

TEST(BasisState, MostSignificantFirst) {
  const auto s = basis_state("01");
  EXPECT_NEAR(std::abs(s.amplitudes(1)), 1.0, 1e-15);
  EXPECT_THROW(basis_state(""), ConfigError);
  EXPECT_THROW(basis_state("0x"), ConfigError);
}

TEST(LoadJsonFile, MissingAndMalformed) {
  EXPECT_THROW(load_json_file("/nonexistent/cfg.json"), ConfigError);
}

}  // namespace
}  // namespace cgnet
