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

// JSON run configurations for the CLI. Every key is optional and falls back
// to the defaults below; unknown keys are rejected. to_json writes the full
// effective configuration, which parses back to the same values.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgnet/noise.hpp"
#include "cgnet/rodeo.hpp"
#include "cgnet/varsub.hpp"
#include "json.hpp"

namespace cgnet {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScanConfig {
  std::string hamiltonian;          // path; empty selects the built-in 2-qubit object Hamiltonian
  std::string initial_state = "00"; // computational basis bitstring, qubit 0 first
  std::string evolution = "exact";  // exact | trotter
  double dt = 0.1;
  std::string construction = "reversal";
  std::string mode = "sampled";
  std::string time_draws = "per_energy";  // per_energy | shared
  int n_cycles = 5;
  std::uint64_t seed = 1;
  int threads = 0;
  std::vector<PassSettings> passes = ProtocolConfig{}.passes;
  double k_sigma = 3.0;
  double validate_sigma = 3.0;
  double pass1_spacing = 0.25;
  double pass1_padding = 2.0;
  double pass2_halfwidth = 4.0;
  double pass2_spacing = 1.0 / 6.0;
  double merge_distance = 2.0;
  int pass3_points = 20;
  double pass3_halfwidth = 3.0;
  double noise_p2q = 0.0;
  double noise_p1q = 0.0;
  std::string noise_basis = "ibm";
};

struct VarsubConfig {
  std::string hamiltonian;  // path; empty selects Heisenberg a = b = c = 1
  std::vector<AnsatzParams> parameter_sets;
  std::string prep;         // optional circuit file
  std::string method = "network";
  std::string mode = "exact";
  int n_shots = 1024;
  std::uint64_t seed = 1;
  double svd_threshold = 1e-8;
};

struct NoiseSweepConfig {
  std::string hamiltonian;
  std::string initial_state = "00";
  std::vector<double> sigmas = {4.0, 14.0, 24.0};
  std::vector<int> cycles = {3, 5};
  std::vector<double> eps = {0.01, 0.05, 0.1};
  std::string jitter_mode = "both";  // per_cycle | per_shot | both
  int mc_draws = 0;                  // 0 skips the Monte-Carlo column
  std::uint64_t seed = 1;
};

ScanConfig scan_config_from_json(const Json& j);
Json to_json(const ScanConfig& c);
VarsubConfig varsub_config_from_json(const Json& j);
Json to_json(const VarsubConfig& c);
NoiseSweepConfig noise_sweep_config_from_json(const Json& j);
Json to_json(const NoiseSweepConfig& c);

// Reads and parses a JSON file; ConfigError on I/O or syntax errors.
Json load_json_file(const std::string& path);

// Derived run settings; ConfigError on invalid names or ranges.
ProtocolConfig protocol_config(const ScanConfig& c);
Evolution evolution_setting(const ScanConfig& c);
StateVector basis_state(const std::string& bits);

}  // namespace cgnet
