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

#include "cgnet/rodeo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace cgnet {
namespace {

RodeoSystem object_system(StateVector psi = StateVector(2)) {
  return make_rodeo_system(object_hamiltonian(2.5, 1.5), std::move(psi));
}

StateVector eigenstate(const RodeoSystem& sys, int k) {
  return StateVector::from_amplitudes(sys.spectrum.eigenvectors.col(k));
}

double cycle_success(const RodeoSystem& sys, double e, double t, Construction c) {
  return run_rodeo_exact(sys, e, {t}, c);
}

TEST(AnalyticKernel, SingleCycleValues) {
  EXPECT_DOUBLE_EQ(analytic_single_cycle(1.0, 1.0, 4.0), 1.0);
  EXPECT_NEAR(analytic_single_cycle(0.0, 100.0, 4.0), 0.5, 1e-15);
  // Oracle: (1 + e^-1) / 2 evaluated directly.
  EXPECT_NEAR(analytic_single_cycle(0.0, std::sqrt(2.0) / 4.0, 4.0), 0.6839397205857212, 1e-15);
  EXPECT_THROW(analytic_single_cycle(0, 0, 0), std::invalid_argument);
}

TEST(AnalyticKernel, PnAgainstClosedForm) {
  const auto sys = object_system();
  // Oracle sum over the four levels with weights 1/4.
  const double direct = oracle::rodeo_pn(-4.0, {-4, -1, 1, 4}, {0.25, 0.25, 0.25, 0.25}, 4.0, 5);
  EXPECT_NEAR(analytic_Pn(-4.0, sys.spectrum, 4.0, 5), direct, 1e-14);
  EXPECT_NEAR(direct, 0.2734375, 1e-9);
  EXPECT_NEAR(analytic_Pn(40.0, sys.spectrum, 4.0, 5), 1.0 / 32, 1e-15);
  for (double e = -6; e <= 6; e += 0.1) EXPECT_GE(analytic_Pn(e, sys.spectrum, 4.0, 3), 1.0 / 8 - 1e-15);
}

TEST(Cycle, CircuitShape) {
  const auto sys = object_system();
  const Circuit c = build_cycle_circuit(sys, {1.0, 0.5, Construction::reversal});
  EXPECT_EQ(c.n_qubits(), 3);
  EXPECT_EQ(c.ops().front().kind, GateKind::H);
  EXPECT_EQ(c.ops().back().kind, GateKind::Measure);
  int open_controlled_y = 0;
  for (const auto& op : c.ops()) {
    if (op.kind == GateKind::Y && op.controls.size() == 1 && op.controls[0].polarity == 0) ++open_controlled_y;
  }
  EXPECT_EQ(open_controlled_y, 2);
}

TEST(Cycle, NativeTwoQubitCounts) {
  const auto sys = object_system();
  const auto count = [&](Construction c) {
    return count_gates(transpile(build_cycle_circuit(sys, {0.3, 0.8, c}), NativeBasis::ibm_cnot_u)).two_qubit;
  };
  EXPECT_EQ(count(Construction::reversal), 4);
  EXPECT_EQ(count(Construction::standard), 20);
}

TEST(Cycle, ZeroTimeAlwaysSucceeds) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(4);
  for (auto& a : v) a = {g(rng), g(rng)};
  const auto sys = object_system(StateVector::from_amplitudes(v.normalized()));
  for (double e : {-3.0, 0.2, 5.0}) {
    EXPECT_NEAR(cycle_success(sys, e, 0.0, Construction::reversal), 1.0, 1e-12);
    EXPECT_NEAR(run_rodeo_exact(sys, e, {0, 0, 0}), 1.0, 1e-12);
  }
}

TEST(Cycle, EigenstateKernelBothConstructions) {
  const auto base = object_system();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> e_dist(-6, 6), t_dist(-3, 3);
  for (int k = 0; k < 4; ++k) {
    const auto sys = object_system(eigenstate(base, k));
    const double ek = base.spectrum.eigenvalues(k);
    for (int i = 0; i < 10; ++i) {
      const double e = e_dist(rng), t = t_dist(rng);
      const double expect = oracle::cycle_success(e, ek, t);
      EXPECT_NEAR(cycle_success(sys, e, t, Construction::reversal), expect, 1e-10);
      EXPECT_NEAR(cycle_success(sys, e, t, Construction::standard), expect, 1e-10);
    }
  }
}

TEST(Cycle, DenseEvolutionPath) {
  PauliHamiltonian h(2);
  h.add(1.0, "XZ").add(0.7, "ZY");
  const auto base = make_rodeo_system(h, StateVector(2));
  EXPECT_EQ(base.reversal.letters, "YI");
  const auto sys = make_rodeo_system(h, eigenstate(base, 2));
  const double ek = base.spectrum.eigenvalues(2);
  EXPECT_NEAR(cycle_success(sys, 0.3, 1.7, Construction::reversal), oracle::cycle_success(0.3, ek, 1.7), 1e-10);
}

TEST(Cycle, ConstructionsAgreeOnSuperpositions) {
  const auto sys = object_system();
  const std::vector<double> times = {0.4, -1.3, 2.2};
  for (double e : {-4.0, -0.5, 1.0, 3.3}) {
    EXPECT_NEAR(run_rodeo_exact(sys, e, times, Construction::reversal),
                run_rodeo_exact(sys, e, times, Construction::standard), 1e-12);
  }
}

TEST(Cycle, EigenstateJointProbabilityIsProduct) {
  const auto base = object_system();
  const auto sys = object_system(eigenstate(base, 1));
  const std::vector<double> times = {0.4, -1.3, 2.2, 0.9};
  double expect = 1.0;
  for (double t : times) expect *= oracle::cycle_success(0.2, -1.0, t);
  EXPECT_NEAR(run_rodeo_exact(sys, 0.2, times), expect, 1e-10);
}

TEST(System, RejectsIncompatibleHamiltonian) {
  EXPECT_THROW(make_rodeo_system(heisenberg(1, 1, 1), StateVector(2)), std::invalid_argument);
  EXPECT_THROW(make_rodeo_system(object_hamiltonian(1, 1), StateVector(3)), std::invalid_argument);
}

TEST(Scan, DeterministicAndCsvSchema) {
  const auto sys = object_system();
  ScanOptions opt;
  opt.seed = 42;
  opt.threads = 3;
  const ScanPass pass{4.0, linspace(-5, 5, 11), 2, 256, 3};
  const ScanResult a = run_scan_pass(sys, pass, opt);
  opt.threads = 1;
  const ScanResult b = run_scan_pass(sys, pass, opt);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(to_csv(a).substr(0, to_csv(a).find('\n')), "energy,successes,trials,p_hat,epsilon");
  for (const auto& p : a.points) {
    EXPECT_EQ(p.trials, 512);
    EXPECT_DOUBLE_EQ(p.p_hat, p.successes / 512.0);
    EXPECT_DOUBLE_EQ(p.epsilon, std::sqrt(p.p_hat * (1 - p.p_hat) / 512));
  }
  opt.seed = 43;
  EXPECT_NE(to_csv(run_scan_pass(sys, pass, opt)), to_csv(a));
}

TEST(Scan, SampledTracksExactForSameTimes) {
  const auto sys = object_system();
  ScanOptions opt;
  opt.seed = 5;
  const ScanPass pass{4.0, linspace(-6, 6, 41), 1, 1024, 3};
  const ScanResult sampled = run_scan_pass(sys, pass, opt);
  opt.mode = ExecMode::exact;
  const ScanResult exact = run_scan_pass(sys, pass, opt);
  int within = 0;
  for (std::size_t i = 0; i < sampled.points.size(); ++i) {
    const double p = exact.points[i].p_hat;
    const double eps = std::sqrt(p * (1 - p) / 1024);
    within += std::abs(sampled.points[i].p_hat - p) <= 3 * eps + 1e-12;
  }
  EXPECT_GE(within, static_cast<int>(0.95 * sampled.points.size()));
}

TEST(Scan, ValidatesPass) {
  const auto sys = object_system();
  EXPECT_THROW(run_scan_pass(sys, {0.0, {0.0}, 1, 1, 1}, {}), std::invalid_argument);
  EXPECT_THROW(run_scan_pass(sys, {4.0, {}, 1, 1, 1}, {}), std::invalid_argument);
  EXPECT_THROW(run_scan_pass(sys, {4.0, {0.0}, 0, 1, 1}, {}), std::invalid_argument);
  ScanOptions noisy;
  noisy.mode = ExecMode::exact;
  noisy.noise.p2q = 0.01;
  EXPECT_THROW(run_scan_pass(sys, {4.0, {0.0}, 1, 1, 1}, noisy), std::invalid_argument);
}

TEST(Scan, ZeroNoiseMatchesNoiselessBitForBit) {
  const auto sys = object_system();
  ScanOptions opt;
  opt.seed = 8;
  const ScanPass pass{4.0, linspace(-5, 5, 7), 2, 128, 3};
  const ScanResult clean = run_scan_pass(sys, pass, opt);
  opt.noise.p2q = 0.0;
  opt.noise_basis = NativeBasis::qtm_rzz;
  EXPECT_EQ(to_csv(run_scan_pass(sys, pass, opt)), to_csv(clean));
}

ScanResult flat_result(double p, int n) {
  ScanResult r;
  r.sigma = 4;
  r.n_cycles = n;
  for (int i = 0; i < 10; ++i) r.points.push_back({i * 0.1, 0, 1000, p, std::sqrt(p * (1 - p) / 1000), 0.0});
  return r;
}

TEST(Detect, FlatBackgroundHasNoCandidates) {
  EXPECT_TRUE(detect_candidates(flat_result(1.0 / 8, 3), 3, 3.0).empty());
}

TEST(Detect, MergesAdjacentPointsAndPicksPeak) {
  ScanResult r = flat_result(1.0 / 8, 3);
  r.points[3].p_hat = 0.4;
  r.points[4].p_hat = 0.6;
  r.points[5].p_hat = 0.3;
  r.points[8].p_hat = 0.5;
  for (auto& p : r.points) p.epsilon = std::sqrt(p.p_hat * (1 - p.p_hat) / 1000);
  const auto c = detect_candidates(r, 3, 5.0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0].peak, 0.4, 1e-12);
  EXPECT_NEAR(c[0].lo, 0.25, 1e-12);
  EXPECT_NEAR(c[0].hi, 0.55, 1e-12);
  EXPECT_NEAR(c[1].peak, 0.8, 1e-12);
  // k = 0 keeps anything above background.
  r.points[0].p_hat = 0.126;
  EXPECT_EQ(detect_candidates(r, 3, 0.0).size(), 3u);
}

TEST(Fit, RecoversSyntheticGaussian) {
  const std::vector<double> x = linspace(3.8, 4.2, 25);
  std::vector<double> y, err(x.size(), 0.01);
  for (double e : x) y.push_back(0.04 + 0.7 * std::exp(-std::pow(e - 4.003, 2) / (2 * 0.05 * 0.05)));
  PeakFitOptions opt{0.04, 0.04, 0.05, false, 1e-4};
  const PeakFit f = fit_peak(x, y, err, opt);
  ASSERT_TRUE(f.converged);
  EXPECT_NEAR(f.center, 4.003, 1e-6);
  EXPECT_NEAR(f.height, 0.7, 1e-6);
  EXPECT_NEAR(f.width, 0.05, 1e-6);
  EXPECT_NEAR(f.offset, 0.04, 1e-6);
}

TEST(Fit, SymmetricDataGivesExactCenter) {
  const std::vector<double> x = linspace(-1.2, -0.8, 21);
  std::vector<double> y, err(x.size(), 0.02);
  for (double e : x) y.push_back(0.1 + 0.5 / (1 + 50 * (e + 1) * (e + 1)));
  const PeakFit f = fit_peak(x, y, err, {0.1, 0.1, 0.1, false, 1e-4});
  EXPECT_NEAR(f.center, -1.0, 1e-9);
}

TEST(Fit, NeedsFivePoints) {
  EXPECT_THROW(fit_peak({0, 1, 2, 3}, {0, 1, 1, 0}, {1, 1, 1, 1}, {}), std::invalid_argument);
}

TEST(Fit, NominalWidth) { EXPECT_NEAR(nominal_peak_width(5, 24), std::sqrt(2.0) / (std::sqrt(5.0) * 24), 1e-15); }

TEST(Grid, LinspaceAndArange) {
  const auto l = linspace(-1, 1, 5);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_DOUBLE_EQ(l[2], 0.0);
  const auto a = arange(0, 1, 0.25);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_DOUBLE_EQ(a.back(), 1.0);
  EXPECT_THROW(arange(0, 1, 0), std::invalid_argument);
}

TEST(Protocol, ExactModeFindsAllFourLevels) {
  ProtocolConfig cfg;
  cfg.n_cycles = 5;
  cfg.scan.mode = ExecMode::exact;
  cfg.scan.seed = 3;
  cfg.passes = {{4.0, 5, 1024}, {14.0, 2, 1024}, {24.0, 1, 1024}};
  const auto res = run_protocol(object_system(), cfg);
  ASSERT_EQ(res.peaks.size(), 4u);
  const std::vector<double> levels = {-4, -1, 1, 4};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(res.peaks[k].center, levels[k], 0.02);
}

}  // namespace
}  // namespace cgnet
