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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cgnet/rng.hpp"

namespace cgnet {

namespace {

std::vector<int> shifted_map(int n_system) {
  std::vector<int> m(n_system);
  std::iota(m.begin(), m.end(), 1);
  return m;
}

bool is_xz_pair(const PauliHamiltonian& h) {
  if (h.n_qubits() != 2) return false;
  return std::all_of(h.terms().begin(), h.terms().end(), [](const PauliTerm& t) {
    return t.string.letters == "XZ" || t.string.letters == "ZX";
  });
}

Circuit without_measurements(const Circuit& c) {
  Circuit out(c.n_qubits());
  for (const auto& op : c.ops()) {
    if (op.kind != GateKind::Measure) out.add(op);
  }
  return out;
}

void add_reversal(Circuit& c, const PauliString& r) {
  for (int q = 0; q < r.n_qubits(); ++q) {
    if (r.letters[q] != 'I') c.add(with_control(gate::pauli(r.letters[q], q + 1), {0, 0}));
  }
}

}  // namespace

std::string_view construction_name(Construction c) { return c == Construction::reversal ? "reversal" : "standard"; }

std::optional<Construction> construction_from_name(std::string_view name) {
  if (name == "reversal") return Construction::reversal;
  if (name == "standard") return Construction::standard;
  return std::nullopt;
}

std::string_view exec_mode_name(ExecMode m) { return m == ExecMode::exact ? "exact" : "sampled"; }

std::optional<ExecMode> exec_mode_from_name(std::string_view name) {
  if (name == "exact") return ExecMode::exact;
  if (name == "sampled") return ExecMode::sampled;
  return std::nullopt;
}

std::string_view time_draws_name(TimeDraws d) { return d == TimeDraws::shared ? "shared" : "per_energy"; }

std::optional<TimeDraws> time_draws_from_name(std::string_view name) {
  if (name == "shared") return TimeDraws::shared;
  if (name == "per_energy") return TimeDraws::per_energy;
  return std::nullopt;
}

RodeoSystem make_rodeo_system(PauliHamiltonian h, StateVector initial, Evolution ev, int max_reversal_weight) {
  if (initial.n_qubits != h.n_qubits()) throw std::invalid_argument("initial state size mismatch");
  if (ev.kind == Evolution::Kind::trotter && !(ev.dt > 0)) throw std::invalid_argument("dt must be positive");
  const int w = max_reversal_weight < 0 ? h.n_qubits() : max_reversal_weight;
  const auto parts = find_reversal_partition(h, w);
  if (parts.size() != 1) throw std::invalid_argument("reversal incompatible: no single gate flips every term");
  RodeoSystem sys;
  sys.spectrum = diagonalize(h, initial);
  sys.reversal = parts.front().reversal;
  sys.hamiltonian = std::move(h);
  sys.initial = std::move(initial);
  sys.evolution = ev;
  return sys;
}

Circuit evolution_circuit(const RodeoSystem& sys, double t) {
  const auto& h = sys.hamiltonian;
  if (sys.evolution.kind == Evolution::Kind::trotter) return trotter2_circuit(h, t, sys.evolution.dt);
  if (is_xz_pair(h)) return exact_evolution_circuit(h, t);
  Circuit c(h.n_qubits());
  std::vector<int> all(h.n_qubits());
  std::iota(all.begin(), all.end(), 0);
  c.add(gate::custom(all, evolution_operator(h, t)));
  return c;
}

Circuit build_cycle_circuit(const RodeoSystem& sys, const RodeoCycleSpec& spec) {
  const int ns = sys.hamiltonian.n_qubits();
  const auto map = shifted_map(ns);
  Circuit c(ns + 1);
  c.add(gate::h(0));
  if (spec.construction == Construction::reversal) {
    add_reversal(c, sys.reversal);
    c.append(remap(evolution_circuit(sys, spec.time / 2), map, ns + 1));
    add_reversal(c, sys.reversal);
  } else {
    c.append(controlled(remap(evolution_circuit(sys, spec.time), map, ns + 1), {0, 1}));
  }
  c.add(gate::phase(0, spec.energy * spec.time));
  c.add(gate::h(0));
  c.add(gate::measure(0));
  return c;
}

double analytic_single_cycle(double energy, double level, double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  const double x = level - energy;
  return 0.5 * (1.0 + std::exp(-0.5 * x * x * sigma * sigma));
}

double analytic_Pn(double energy, const SpectrumResult& spectrum, double sigma, int n_cycles) {
  double p = 0.0;
  for (std::size_t k = 0; k < spectrum.levels.size(); ++k) {
    p += spectrum.overlaps[k] * std::pow(analytic_single_cycle(energy, spectrum.levels[k], sigma), n_cycles);
  }
  return p;
}

double run_rodeo_exact(const RodeoSystem& sys, double energy, const std::vector<double>& times,
                       Construction construction) {
  StateVector state = tensor(StateVector(1), sys.initial);
  double p = 1.0;
  for (double t : times) {
    apply_circuit(state, without_measurements(build_cycle_circuit(sys, {energy, t, construction})));
    const double branch = collapse_inplace(state, 0, 0);
    if (branch < kZeroProbability) return 0.0;
    p *= branch;
  }
  return p;
}

double ScanPoint::effective_error() const { return std::sqrt(epsilon * epsilon + circuit_spread * circuit_spread); }

std::vector<double> ScanResult::energies() const {
  std::vector<double> v;
  for (const auto& p : points) v.push_back(p.energy);
  return v;
}

std::vector<double> ScanResult::p_hats() const {
  std::vector<double> v;
  for (const auto& p : points) v.push_back(p.p_hat);
  return v;
}

namespace {

struct CircuitRun {
  double fraction = 0.0;
  long successes = 0;
};

CircuitRun run_sampled_circuit(const RodeoSystem& sys, double energy, const std::vector<double>& times,
                               const ScanPass& pass, const ScanOptions& opt, std::mt19937_64& shots,
                               std::mt19937_64& faults) {
  const bool noisy = opt.noise.p2q > 0 || opt.noise.p1q > 0;
  std::vector<Unitary> unitaries;
  std::vector<Circuit> native;
  for (double t : times) {
    const Circuit body = without_measurements(build_cycle_circuit(sys, {energy, t, opt.construction}));
    unitaries.push_back(circuit_to_unitary(body));
    if (noisy) native.push_back(transpile(body, opt.noise_basis));
  }
  const StateVector start = tensor(StateVector(1), sys.initial);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> u(times.size());
  CircuitRun run;
  for (int s = 0; s < pass.n_shots; ++s) {
    for (auto& v : u) v = uniform(shots);
    StateVector state = start;
    bool ok = true;
    for (std::size_t k = 0; k < times.size() && ok; ++k) {
      if (noisy) {
        const auto f = sample_faults(native[k], opt.noise, faults);
        if (!f.empty()) {
          apply_circuit(state, apply_faults(native[k], f));
        } else {
          state.amplitudes = unitaries[k] * state.amplitudes;
        }
      } else {
        state.amplitudes = unitaries[k] * state.amplitudes;
      }
      ok = measure_inplace(state, 0, u[k]) == 0;
    }
    run.successes += ok ? 1 : 0;
  }
  run.fraction = static_cast<double>(run.successes) / pass.n_shots;
  return run;
}

}  // namespace

ScanResult run_scan_pass(const RodeoSystem& sys, const ScanPass& pass, const ScanOptions& opt) {
  if (!(pass.sigma > 0)) throw std::invalid_argument("sigma must be positive");
  if (pass.n_circuits < 1 || pass.n_shots < 1 || pass.n_cycles < 1) {
    throw std::invalid_argument("N_c, N_s and n must be at least 1");
  }
  if (pass.energies.empty()) throw std::invalid_argument("empty energy grid");
  if (opt.mode == ExecMode::exact && (opt.noise.p2q > 0 || opt.noise.p1q > 0)) {
    throw std::invalid_argument("depolarizing noise needs sampled mode");
  }
  ScanResult result;
  result.sigma = pass.sigma;
  result.n_cycles = pass.n_cycles;
  result.points.resize(pass.energies.size());

  parallel_for(pass.energies.size(), opt.threads, [&](std::size_t i) {
    const double energy = pass.energies[i];
    std::vector<double> fractions;
    long successes = 0;
    for (int c = 0; c < pass.n_circuits; ++c) {
      auto path = opt.stream_prefix;
      path.push_back(i);
      path.push_back(static_cast<std::uint64_t>(c));
      auto time_path = path, shot_path = path, fault_path = path;
      if (opt.time_draws == TimeDraws::shared) {
        time_path = opt.stream_prefix;
        time_path.push_back(static_cast<std::uint64_t>(c));
      }
      time_path.push_back(0);
      shot_path.push_back(1);
      fault_path.push_back(2);
      auto time_rng = make_stream(opt.seed, time_path);
      std::normal_distribution<double> normal(0.0, pass.sigma);
      std::vector<double> times(pass.n_cycles);
      for (auto& t : times) t = normal(time_rng);

      if (opt.mode == ExecMode::exact) {
        fractions.push_back(run_rodeo_exact(sys, energy, times, opt.construction));
      } else {
        auto shot_rng = make_stream(opt.seed, shot_path);
        auto fault_rng = make_stream(opt.seed, fault_path);
        const auto run = run_sampled_circuit(sys, energy, times, pass, opt, shot_rng, fault_rng);
        fractions.push_back(run.fraction);
        successes += run.successes;
      }
    }
    ScanPoint& pt = result.points[i];
    pt.energy = energy;
    pt.trials = static_cast<long>(pass.n_shots) * pass.n_circuits;
    const double mean = std::accumulate(fractions.begin(), fractions.end(), 0.0) / fractions.size();
    if (opt.mode == ExecMode::exact) {
      pt.p_hat = mean;
      pt.successes = std::lround(mean * pt.trials);
    } else {
      pt.successes = successes;
      pt.p_hat = static_cast<double>(successes) / pt.trials;
    }
    pt.epsilon = std::sqrt(pt.p_hat * (1.0 - pt.p_hat) / pt.trials);
    if (fractions.size() > 1) {
      double ss = 0.0;
      for (double f : fractions) ss += (f - mean) * (f - mean);
      pt.circuit_spread = std::sqrt(ss / (fractions.size() - 1) / fractions.size());
    }
  });
  return result;
}

std::string to_csv(const ScanResult& r) {
  std::ostringstream os;
  os << "energy,successes,trials,p_hat,epsilon\n" << std::setprecision(17);
  for (const auto& p : r.points) {
    os << p.energy << ',' << p.successes << ',' << p.trials << ',' << p.p_hat << ',' << p.epsilon << '\n';
  }
  return os.str();
}

std::vector<EnergyInterval> detect_candidates(const ScanResult& r, int n_cycles, double k_sigma, bool include_spread) {
  const double background = std::ldexp(1.0, -n_cycles);
  const auto& pts = r.points;
  std::vector<EnergyInterval> out;
  const auto above = [&](std::size_t i) {
    const double err = include_spread ? pts[i].effective_error() : pts[i].epsilon;
    return pts[i].p_hat > background + k_sigma * err;
  };
  const auto half_gap = [&](std::size_t i, std::size_t j) { return 0.5 * std::abs(pts[j].energy - pts[i].energy); };
  std::size_t i = 0;
  while (i < pts.size()) {
    if (!above(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < pts.size() && above(j + 1)) ++j;
    EnergyInterval iv;
    iv.lo = pts[i].energy - (i > 0 ? half_gap(i - 1, i) : 0.0);
    iv.hi = pts[j].energy + (j + 1 < pts.size() ? half_gap(j, j + 1) : 0.0);
    std::size_t best = i;
    for (std::size_t k = i; k <= j; ++k) {
      if (pts[k].p_hat > pts[best].p_hat) best = k;
    }
    iv.peak = pts[best].energy;
    out.push_back(iv);
    i = j + 1;
  }
  return out;
}

double nominal_peak_width(int n_cycles, double sigma) { return std::sqrt(2.0) / (std::sqrt(double(n_cycles)) * sigma); }

PeakFit fit_scan_peak(const ScanResult& window, bool always_fix_width) {
  std::vector<double> err;
  for (const auto& p : window.points) err.push_back(p.epsilon);
  PeakFitOptions opt;
  opt.background = std::ldexp(1.0, -window.n_cycles);
  opt.initial_width = 1.0 / (std::sqrt(double(window.n_cycles)) * window.sigma);
  opt.fallback_width = nominal_peak_width(window.n_cycles, window.sigma);
  opt.always_fix_width = always_fix_width;
  return fit_peak(window.energies(), window.p_hats(), err, opt);
}

std::vector<PeakFit> fit_peaks(const std::vector<ScanResult>& windows) {
  std::vector<PeakFit> out;
  for (const auto& w : windows) out.push_back(fit_scan_peak(w));
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) return {lo};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> arange(double lo, double hi, double step) {
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  std::vector<double> v;
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) v.push_back(lo + i * step);
  return v;
}

ProtocolResult run_protocol(const RodeoSystem& sys, const ProtocolConfig& cfg) {
  if (cfg.passes.size() != 3) throw std::invalid_argument("the protocol needs three passes");
  const int n = cfg.n_cycles;
  const auto& p1 = cfg.passes[0];
  const auto& p2 = cfg.passes[1];
  const auto& p3 = cfg.passes[2];
  ProtocolResult res;

  auto scan = [&](double sigma, const PassSettings& ps, std::vector<double> grid, std::vector<std::uint64_t> prefix) {
    ScanOptions opt = cfg.scan;
    opt.stream_prefix = std::move(prefix);
    return run_scan_pass(sys, {sigma, std::move(grid), ps.n_circuits, ps.n_shots, n}, opt);
  };

  const double reach = sys.hamiltonian.coefficient_norm() + cfg.pass1_padding / p1.sigma;
  res.pass1 = scan(p1.sigma, p1, arange(-reach, reach, cfg.pass1_spacing / p1.sigma), {1});
  res.candidates = detect_candidates(res.pass1, n, cfg.k_sigma, true);

  struct Accepted {
    double center;
    double height;
  };
  std::vector<Accepted> accepted;
  for (std::size_t j = 0; j < res.candidates.size(); ++j) {
    const double c = res.candidates[j].peak;
    const double hw = cfg.pass2_halfwidth / p1.sigma;
    res.pass2.push_back(scan(p2.sigma, p2, arange(c - hw, c + hw, cfg.pass2_spacing / p2.sigma), {2, j}));
    const auto& window = res.pass2.back();
    const PeakFit fit = fit_scan_peak(window, true);
    const bool ok = fit.converged && std::isfinite(fit.height_err) && fit.center > window.points.front().energy &&
                    fit.center < window.points.back().energy && fit.height > cfg.validate_sigma * fit.height_err;
    res.pass2_fits.push_back(fit);
    res.pass2_accepted.push_back(ok);
    if (!ok) continue;
    auto dup = std::find_if(accepted.begin(), accepted.end(), [&](const Accepted& a) {
      return std::abs(a.center - fit.center) < cfg.merge_distance / p2.sigma;
    });
    if (dup == accepted.end()) accepted.push_back({fit.center, fit.height});
    else if (fit.height > dup->height) *dup = {fit.center, fit.height};
  }
  std::sort(accepted.begin(), accepted.end(), [](const Accepted& a, const Accepted& b) { return a.center < b.center; });

  const double hw3 = cfg.pass3_halfwidth / (std::sqrt(double(n)) * p3.sigma);
  for (std::size_t j = 0; j < accepted.size(); ++j) {
    const double c = accepted[j].center;
    res.pass3.push_back(scan(p3.sigma, p3, linspace(c - hw3, c + hw3, cfg.pass3_points), {3, j}));
    res.peaks.push_back(fit_scan_peak(res.pass3.back()));
  }
  std::sort(res.peaks.begin(), res.peaks.end(), [](const PeakFit& a, const PeakFit& b) { return a.center < b.center; });
  return res;
}

}  // namespace cgnet
