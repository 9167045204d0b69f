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

// Rodeo cycles, scans and the three-pass eigenvalue search.
//
// A cycle draws a time t and targets energy E. Qubit 0 is the ancilla, the
// system occupies qubits 1..n. Success means the ancilla reads 0; for an
// eigenstate with energy E_k the success probability is cos^2((E_k - E) t/2)
// in both constructions:
//
//   reversal: H; open-controlled R; U(t/2); open-controlled R; P(E t); H
//             (the two branches evolve for +t/2 and -t/2)
//   standard: H; controlled U(t); P(E t); H

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgnet/circuit.hpp"
#include "cgnet/noise.hpp"
#include "cgnet/pauli.hpp"
#include "cgnet/peakfit.hpp"
#include "cgnet/statevec.hpp"
#include "cgnet/transpile.hpp"

namespace cgnet {

enum class Construction { reversal, standard };
enum class ExecMode { exact, sampled };

std::string_view construction_name(Construction c);
std::optional<Construction> construction_from_name(std::string_view name);
std::string_view exec_mode_name(ExecMode m);
std::optional<ExecMode> exec_mode_from_name(std::string_view name);

struct Evolution {
  enum class Kind { exact, trotter } kind = Kind::exact;
  double dt = 0.1;  // trotter only
};

struct RodeoSystem {
  PauliHamiltonian hamiltonian;
  StateVector initial;     // system register only
  PauliString reversal;    // anticommutes with every term
  Evolution evolution;
  SpectrumResult spectrum;
};

// Finds a single reversal gate for all terms; throws ReversalSearchError or
// std::invalid_argument ("reversal incompatible") otherwise.
RodeoSystem make_rodeo_system(PauliHamiltonian h, StateVector initial, Evolution ev = {},
                              int max_reversal_weight = -1);

// exp(-i H t) on the system register: the two-gate-layer XZ/ZX circuit, the
// chain Trotter circuit, or a dense custom unitary for anything else.
Circuit evolution_circuit(const RodeoSystem& sys, double t);

struct RodeoCycleSpec {
  double energy = 0.0;
  double time = 0.0;
  Construction construction = Construction::reversal;
};

// Ends with a measurement of the ancilla.
Circuit build_cycle_circuit(const RodeoSystem& sys, const RodeoCycleSpec& spec);

double analytic_single_cycle(double energy, double level, double sigma);
// sum_k overlap_k [(1 + exp(-(E - E_k)^2 sigma^2 / 2)) / 2]^n
double analytic_Pn(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles);

// Joint probability that every cycle succeeds for this time draw.
double run_rodeo_exact(const RodeoSystem& sys, double energy, const std::vector<double>& times,
                       Construction construction = Construction::reversal);

struct ScanPass {
  double sigma = 4.0;
  std::vector<double> energies;
  int n_circuits = 1;
  int n_shots = 1024;
  int n_cycles = 5;
};

struct ScanPoint {
  double energy = 0.0;
  long successes = 0;
  long trials = 0;
  double p_hat = 0.0;
  double epsilon = 0.0;         // sqrt(p (1 - p) / (N_s N_c))
  double circuit_spread = 0.0;  // standard error of the mean over circuits

  double effective_error() const;  // sqrt(epsilon^2 + circuit_spread^2)
};

struct ScanResult {
  double sigma = 0.0;
  int n_cycles = 0;
  std::vector<ScanPoint> points;

  std::vector<double> energies() const;
  std::vector<double> p_hats() const;
};

// shared: circuit c uses the same Gaussian times at every grid energy of a
// pass. per_energy: every (energy, circuit) pair draws its own times.
enum class TimeDraws { shared, per_energy };

std::string_view time_draws_name(TimeDraws d);
std::optional<TimeDraws> time_draws_from_name(std::string_view name);

struct ScanOptions {
  ExecMode mode = ExecMode::sampled;
  TimeDraws time_draws = TimeDraws::per_energy;
  Construction construction = Construction::reversal;
  Depolarizing noise;                              // sampled mode only
  NativeBasis noise_basis = NativeBasis::ibm_cnot_u;  // gates that faults attach to
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> stream_prefix;
  int threads = 0;
};

// Exact mode averages the joint projection probability over the N_c time
// draws; `successes` is then the rounded expected count.
ScanResult run_scan_pass(const RodeoSystem& sys, const ScanPass& pass, const ScanOptions& opt);

// Header "energy,successes,trials,p_hat,epsilon".
std::string to_csv(const ScanResult& r);

struct EnergyInterval {
  double lo = 0.0, hi = 0.0;
  double peak = 0.0;  // grid energy with the highest p_hat inside
};

// Runs of grid points with p_hat > 2^-n + k_sigma * err, where err is
// epsilon, or effective_error() when include_spread is set.
std::vector<EnergyInterval> detect_candidates(const ScanResult& r, int n_cycles, double k_sigma,
                                              bool include_spread = false);

// Peak fit over a scan window with the model defaults for (n, sigma).
PeakFit fit_scan_peak(const ScanResult& window, bool always_fix_width = false);
std::vector<PeakFit> fit_peaks(const std::vector<ScanResult>& windows);

// Analytic peak width sqrt(2) / (sqrt(n) sigma).
double nominal_peak_width(int n_cycles, double sigma);

struct PassSettings {
  double sigma;
  int n_circuits;
  int n_shots;
};

struct ProtocolConfig {
  int n_cycles = 5;
  std::vector<PassSettings> passes = {{4.0, 5, 1024}, {14.0, 2, 1024}, {24.0, 1, 1024}};
  double k_sigma = 3.0;         // pass-1 detection, uses effective_error()
  double validate_sigma = 3.0;  // pass-2 height significance
  double pass1_spacing = 0.25;  // units of 1/sigma_1
  double pass1_padding = 2.0;   // units of 1/sigma_1 beyond the coefficient norm
  double pass2_halfwidth = 4.0; // units of 1/sigma_1
  double pass2_spacing = 1.0 / 6.0;  // units of 1/sigma_2
  double merge_distance = 2.0;  // units of 1/sigma_2
  int pass3_points = 20;
  double pass3_halfwidth = 3.0; // units of 1/(sqrt(n) sigma_3)
  ScanOptions scan;
};

struct ProtocolResult {
  ScanResult pass1;
  std::vector<EnergyInterval> candidates;
  std::vector<ScanResult> pass2;
  std::vector<PeakFit> pass2_fits;
  std::vector<bool> pass2_accepted;
  std::vector<ScanResult> pass3;
  std::vector<PeakFit> peaks;  // sorted by center
};

ProtocolResult run_protocol(const RodeoSystem& sys, const ProtocolConfig& cfg);

std::vector<double> linspace(double lo, double hi, int n);
// lo, lo + step, ... up to hi (inclusive within 1e-9 step).
std::vector<double> arange(double lo, double hi, double step);

}  // namespace cgnet
