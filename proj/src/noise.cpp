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

#include "cgnet/noise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cgnet {

namespace {

// Time-averaged single-cycle success for detuning x: (1 + e^{-x^2 s^2/2}) / 2.
double cycle_kernel(double x, double sigma) { return 0.5 * (1.0 + std::exp(-0.5 * x * x * sigma * sigma)); }

void check_args(const SpectrumResult& s, double sigma, int n_cycles, const Jitter& j) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (n_cycles < 1) throw std::invalid_argument("need at least one cycle");
  if (j.eps.empty() || (j.eps.size() != 1 && j.eps.size() != s.levels.size())) {
    throw std::invalid_argument("jitter needs one shared eps or one per level");
  }
  for (double e : j.eps) {
    if (!(e >= 0)) throw std::invalid_argument("jitter eps must be non-negative");
  }
}

// Composite Simpson over z in [-10, 10] for E_z[f(z)], z standard normal.
// The step resolves both the unit Gaussian and a feature of width `scale`.
template <typename F>
double normal_expectation(F f, double scale) {
  constexpr double kHalfRange = 10.0;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const auto simpson = [&](long panels) {
    const double h = 2 * kHalfRange / panels;
    double acc = 0.0;
    for (long i = 0; i <= panels; ++i) {
      const double z = -kHalfRange + i * h;
      const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * f(z) * std::exp(-0.5 * z * z);
    }
    return acc * h / 3.0 * inv_sqrt_2pi;
  };
  long panels = 2 * static_cast<long>(std::ceil(2 * kHalfRange / (std::min(1.0, scale) / 8.0) / 2.0));
  double prev = simpson(panels);
  for (int iter = 0; iter < 8; ++iter) {
    panels *= 2;
    const double next = simpson(panels);
    if (std::abs(next - prev) < 1e-13) return next;
    prev = next;
  }
  throw std::runtime_error("per-shot jitter quadrature did not converge");
}

}  // namespace

std::string_view jitter_mode_name(JitterMode m) { return m == JitterMode::per_cycle ? "per_cycle" : "per_shot"; }

std::optional<JitterMode> jitter_mode_from_name(std::string_view name) {
  if (name == "per_cycle") return JitterMode::per_cycle;
  if (name == "per_shot") return JitterMode::per_shot;
  return std::nullopt;
}

double Jitter::eps_for(std::size_t level) const { return eps.size() == 1 ? eps[0] : eps.at(level); }

double noisy_Pn_per_cycle(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles,
                          const Jitter& jitter) {
  check_args(spectrum, sigma, n_cycles, jitter);
  double p = 0.0;
  for (std::size_t k = 0; k < spectrum.levels.size(); ++k) {
    const double x = spectrum.levels[k] - energy;
    const double es2 = std::pow(jitter.eps_for(k) * sigma, 2);
    const double g = std::exp(-x * x * sigma * sigma / (2 * (1 + es2))) / std::sqrt(1 + es2);
    p += spectrum.overlaps[k] * std::pow(0.5 * (1 + g), n_cycles);
  }
  return p;
}

double noisy_Pn_per_shot(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles,
                         const Jitter& jitter) {
  check_args(spectrum, sigma, n_cycles, jitter);
  double p = 0.0;
  for (std::size_t k = 0; k < spectrum.levels.size(); ++k) {
    const double eps = jitter.eps_for(k);
    const double x = spectrum.levels[k] - energy;
    const auto shot = [&](double z) { return std::pow(cycle_kernel(x + eps * z, sigma), n_cycles); };
    p += spectrum.overlaps[k] * (eps == 0.0 ? shot(0.0) : normal_expectation(shot, 1.0 / (eps * sigma)));
  }
  return p;
}

McEstimate monte_carlo_jitter(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles,
                              const Jitter& jitter, int draws, std::mt19937_64& rng) {
  check_args(spectrum, sigma, n_cycles, jitter);
  if (draws < 2) throw std::invalid_argument("need at least two draws");
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0, sum2 = 0.0;
  for (int d = 0; d < draws; ++d) {
    double p = 0.0;
    for (std::size_t k = 0; k < spectrum.levels.size(); ++k) {
      const double eps = jitter.eps_for(k);
      const double x = spectrum.levels[k] - energy;
      double prod = 1.0;
      if (jitter.mode == JitterMode::per_shot) {
        prod = std::pow(cycle_kernel(x + eps * normal(rng), sigma), n_cycles);
      } else {
        for (int i = 0; i < n_cycles; ++i) prod *= cycle_kernel(x + eps * normal(rng), sigma);
      }
      p += spectrum.overlaps[k] * prod;
    }
    sum += p;
    sum2 += p * p;
  }
  McEstimate r;
  r.mean = sum / draws;
  const double var = std::max(0.0, (sum2 - draws * r.mean * r.mean) / (draws - 1));
  r.standard_error = std::sqrt(var / draws);
  return r;
}

std::vector<Fault> sample_faults(const Circuit& c, const Depolarizing& model, std::mt19937_64& rng) {
  if (model.p2q < 0 || model.p2q > 1 || model.p1q < 0 || model.p1q > 1) {
    throw std::invalid_argument("fault probabilities must lie in [0, 1]");
  }
  std::vector<Fault> out;
  if (model.p2q == 0 && model.p1q == 0) return out;
  static constexpr std::array<char, 4> kLetters = {'I', 'X', 'Y', 'Z'};
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto& ops = c.ops();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    if (op.kind == GateKind::Measure) continue;
    if (op.targets.size() == 2 && model.p2q > 0 && uniform(rng) < model.p2q) {
      const int which = std::uniform_int_distribution<int>(1, 15)(rng);
      out.push_back({i, kLetters[which / 4], kLetters[which % 4]});
    } else if (op.targets.size() == 1 && model.p1q > 0 && uniform(rng) < model.p1q) {
      out.push_back({i, kLetters[std::uniform_int_distribution<int>(1, 3)(rng)], 'I'});
    }
  }
  return out;
}

Circuit apply_faults(const Circuit& c, const std::vector<Fault>& faults) {
  Circuit out(c.n_qubits());
  auto next = faults.begin();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& op = c.ops()[i];
    out.add(op);
    for (; next != faults.end() && next->after == i; ++next) {
      if (next->first != 'I') out.add(gate::pauli(next->first, op.targets[0]));
      if (next->second != 'I') out.add(gate::pauli(next->second, op.targets[1]));
    }
  }
  return out;
}

Circuit depolarizing_trajectory(const Circuit& c, const Depolarizing& model, std::mt19937_64& rng, int* faults) {
  const auto f = sample_faults(c, model, rng);
  if (faults) *faults = static_cast<int>(f.size());
  return apply_faults(c, f);
}

}  // namespace cgnet
