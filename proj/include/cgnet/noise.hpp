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

// Gaussian eigenvalue jitter and a two-qubit depolarizing channel.
//
// Jitter shifts each level E_k by dE ~ N(0, eps_k) with eigenvectors held
// fixed. per_cycle draws a fresh shift every cycle; per_shot draws one shift
// per shot and reuses it for all cycles.

#pragma once

#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "cgnet/circuit.hpp"
#include "cgnet/pauli.hpp"

namespace cgnet {

enum class JitterMode { per_cycle, per_shot };

std::string_view jitter_mode_name(JitterMode m);
std::optional<JitterMode> jitter_mode_from_name(std::string_view name);

// eps holds one shared value or one value per level.
struct Jitter {
  std::vector<double> eps{0.0};
  JitterMode mode = JitterMode::per_cycle;

  double eps_for(std::size_t level) const;
};

double noisy_Pn_per_cycle(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles,
                          const Jitter& jitter);
// Composite Simpson in the shift, refined until successive results agree to
// 1e-13. Throws std::runtime_error if the quadrature does not settle.
double noisy_Pn_per_shot(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles,
                         const Jitter& jitter);

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Averages the time-averaged success probability over sampled shifts.
McEstimate monte_carlo_jitter(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles,
                              const Jitter& jitter, int draws, std::mt19937_64& rng);

struct Depolarizing {
  double p2q = 0.0;
  double p1q = 0.0;  // off by default; faults after single-qubit gates
};

// One inserted Pauli: `first` acts on targets[0] of op `after`, `second`
// on targets[1] (two-qubit gates only).
struct Fault {
  std::size_t after = 0;
  char first = 'I';
  char second = 'I';
};

// Draws fault locations exactly as depolarizing_trajectory does.
std::vector<Fault> sample_faults(const Circuit& c, const Depolarizing& model, std::mt19937_64& rng);
Circuit apply_faults(const Circuit& c, const std::vector<Fault>& faults);

// After each two-qubit gate, with probability p2q, inserts a uniformly chosen
// non-identity two-qubit Pauli. No random numbers are drawn when both
// probabilities are zero. `faults` receives the number of insertions.
Circuit depolarizing_trajectory(const Circuit& c, const Depolarizing& model, std::mt19937_64& rng,
                                int* faults = nullptr);

}  // namespace cgnet
