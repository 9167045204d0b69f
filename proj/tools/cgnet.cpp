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

// cgnet command-line driver.
//
// Exit codes: 0 success, 1 I/O failure, 2 scan found no peaks, 3 config or
// input error, 4 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cgnet/circuit.hpp"
#include "cgnet/config.hpp"
#include "cgnet/noise.hpp"
#include "cgnet/pauli.hpp"
#include "cgnet/rng.hpp"
#include "cgnet/rodeo.hpp"
#include "cgnet/transpile.hpp"
#include "cgnet/varsub.hpp"

namespace fs = std::filesystem;
using namespace cgnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitNoPeaks = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  return fs::path(dir);
}

PauliHamiltonian load_hamiltonian(const std::string& path, PauliHamiltonian fallback) {
  if (path.empty()) return fallback;
  auto h = parse_hamiltonian(read_file(path));
  if (h.n_qubits() > kMaxUnitaryQubits) throw ConfigError("Hamiltonian exceeds the 12-qubit size guard");
  return h;
}

Json fit_json(const PeakFit& f) {
  return {{"center", f.center},   {"center_err", f.center_err},
          {"height", f.height},   {"height_err", f.height_err},
          {"width", f.width},     {"width_err", f.width_err},
          {"offset", f.offset},   {"offset_err", f.offset_err},
          {"chi2", f.chi2},       {"dof", f.dof},
          {"width_fixed", f.width_fixed}, {"offset_fixed", f.offset_fixed},
          {"converged", f.converged},     {"note", f.note}};
}

Json complex_matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

// ---- diagonalize ------------------------------------------------------------

int cmd_diagonalize(const std::string& ham_path, const std::string& initial) {
  const auto h = load_hamiltonian(ham_path, object_hamiltonian(2.5, 1.5));
  const std::string bits = initial.empty() ? std::string(h.n_qubits(), '0') : initial;
  const auto psi = basis_state(bits);
  if (psi.n_qubits != h.n_qubits()) throw ConfigError("initial state size does not match the Hamiltonian");
  const auto s = diagonalize(h, psi);
  Json ev = Json::array();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) ev.push_back(s.eigenvalues(i));
  Json levels = Json::array();
  for (std::size_t k = 0; k < s.levels.size(); ++k) {
    levels.push_back({{"energy", s.levels[k]}, {"overlap", s.overlaps[k]}});
  }
  std::cout << Json{{"eigenvalues", ev}, {"levels", levels}, {"initial_state", bits}}.dump(2) << "\n";
  return kExitOk;
}

// ---- scan -------------------------------------------------------------------

int cmd_scan(const ScanConfig& cfg, const std::string& out_dir) {
  const auto h = load_hamiltonian(cfg.hamiltonian, object_hamiltonian(2.5, 1.5));
  const auto psi = basis_state(cfg.initial_state);
  if (psi.n_qubits != h.n_qubits()) throw ConfigError("initial state size does not match the Hamiltonian");
  const ProtocolConfig pc = protocol_config(cfg);
  const RodeoSystem sys = make_rodeo_system(h, psi, evolution_setting(cfg));
  const ProtocolResult res = run_protocol(sys, pc);

  const fs::path out = prepare_out(out_dir);
  write_file(out / "effective_config.json", to_json(cfg).dump(2) + "\n");
  write_file(out / "pass1.csv", to_csv(res.pass1));
  for (std::size_t j = 0; j < res.pass2.size(); ++j) {
    write_file(out / ("pass2_" + std::to_string(j) + ".csv"), to_csv(res.pass2[j]));
  }
  for (std::size_t j = 0; j < res.pass3.size(); ++j) {
    write_file(out / ("pass3_" + std::to_string(j) + ".csv"), to_csv(res.pass3[j]));
  }
  Json candidates = Json::array();
  for (std::size_t j = 0; j < res.candidates.size(); ++j) {
    const auto& c = res.candidates[j];
    candidates.push_back({{"lo", c.lo},
                          {"hi", c.hi},
                          {"peak", c.peak},
                          {"pass2_fit", fit_json(res.pass2_fits[j])},
                          {"accepted", static_cast<bool>(res.pass2_accepted[j])}});
  }
  Json peaks = Json::array();
  for (const auto& f : res.peaks) peaks.push_back(fit_json(f));
  const Json report = {{"reversal", sys.reversal.letters}, {"candidates", candidates}, {"peaks", peaks}};
  write_file(out / "peaks.json", report.dump(2) + "\n");
  std::cout << Json{{"peaks", peaks}}.dump(2) << "\n";
  if (res.peaks.empty()) {
    std::cerr << "no peaks found\n";
    return kExitNoPeaks;
  }
  return kExitOk;
}

// ---- count ------------------------------------------------------------------

AnsatzParams sample_params() { return {0.37, -0.61, 0.83, 0.29}; }
ParamDelta sample_delta() { return {0.11, 0.23, -0.17, 0.41}; }

Json count_json(const std::string& name, NativeBasis basis, const Circuit& source) {
  const Circuit native = transpile(source, basis);
  const GateCount n = count_gates(native);
  Json j = {{"circuit", name}, {"basis", basis_name(basis)}, {"two_qubit", n.two_qubit}, {"one_qubit", n.one_qubit}};
  Circuit bare(source.n_qubits()), bare_native(native.n_qubits());
  for (const auto& op : source.ops()) {
    if (op.kind != GateKind::Measure) bare.add(op);
  }
  for (const auto& op : native.ops()) {
    if (op.kind != GateKind::Measure) bare_native.add(op);
  }
  if (bare.n_qubits() <= kMaxUnitaryQubits) {
    j["equivalent"] = unitary_equiv_up_to_phase(circuit_to_unitary(bare), circuit_to_unitary(bare_native));
  }
  return j;
}

int cmd_count(const std::string& name, const std::string& basis_str) {
  const auto basis = basis_from_name(basis_str);
  if (!basis) throw ConfigError("basis must be ibm or qtm");
  const auto obj = make_rodeo_system(object_hamiltonian(2.5, 1.5), StateVector(2));
  Json report;
  if (name == "fig2_network") {
    report = count_json(name, *basis, build_network_overlap_circuit(sample_params(), sample_delta(), Axis::y));
  } else if (name == "fig4_hadamard") {
    report = count_json(name, *basis, build_hadamard_test_circuit(sample_params(), sample_delta(), Axis::y));
  } else if (name == "rodeo_cycle_reversal") {
    report = count_json(name, *basis, build_cycle_circuit(obj, {1.0, 0.7, Construction::reversal}));
  } else if (name == "rodeo_cycle_naive") {
    report = count_json(name, *basis, build_cycle_circuit(obj, {1.0, 0.7, Construction::standard}));
  } else {
    static const std::regex chain_re(R"(chain\(\s*([0-9]+)\s*,\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\))");
    std::smatch m;
    if (std::regex_match(name, m, chain_re)) {
      const int n = std::stoi(m[1]);
      const double sigma = std::stod(m[2]), dt = std::stod(m[3]);
      if (n < 4 || n % 2 != 0 || n > kMaxUnitaryQubits - 1) throw ConfigError("chain needs even N in [4, 10]");
      const auto sys = make_rodeo_system(chain_hamiltonian(n, 1.0, 0.5), StateVector(n), {Evolution::Kind::trotter, dt});
      TrotterInfo info;
      trotter2_circuit(sys.hamiltonian, sigma, dt, &info);
      const auto rev = count_gates(transpile(build_cycle_circuit(sys, {0.0, sigma, Construction::reversal}), *basis));
      const auto naive = count_gates(transpile(build_cycle_circuit(sys, {0.0, sigma, Construction::standard}), *basis));
      report = {{"circuit", name},
                {"basis", basis_name(*basis)},
                {"trotter_steps", info.steps},
                {"exponentials", info.exponentials},
                {"reversal", {{"two_qubit", rev.two_qubit},
                              {"one_qubit", rev.one_qubit},
                              {"predicted_two_qubit", predict_chain_counts(n, sigma, dt, ChainMethod::reversal)}}},
                {"naive", {{"two_qubit", naive.two_qubit},
                           {"one_qubit", naive.one_qubit},
                           {"predicted_two_qubit", predict_chain_counts(n, sigma, dt, ChainMethod::naive_controlled)}}},
                {"error_budget_per_gate", error_budget_per_gate(n)}};
    } else if (fs::exists(name)) {
      report = count_json(name, *basis, parse_circuit(read_file(name)));
    } else {
      throw ConfigError("unknown circuit '" + name + "'");
    }
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

// ---- transpile --------------------------------------------------------------

int cmd_transpile(const std::string& path, const std::string& basis_str, const std::string& out_file) {
  const auto basis = basis_from_name(basis_str);
  if (!basis) throw ConfigError("basis must be ibm or qtm");
  const Circuit native = transpile(parse_circuit(read_file(path)), *basis);
  const GateCount n = count_gates(native);
  const std::string text = to_text(native);
  if (out_file.empty()) {
    std::cout << text;
  } else {
    write_file(out_file, text);
  }
  std::cerr << "two_qubit " << n.two_qubit << " one_qubit " << n.one_qubit << "\n";
  return kExitOk;
}

// ---- varsub -----------------------------------------------------------------

int cmd_varsub(const VarsubConfig& cfg, const std::string& out_dir) {
  const auto h = load_hamiltonian(cfg.hamiltonian, heisenberg(1.0, 1.0, 1.0));
  if (cfg.parameter_sets.empty()) throw ConfigError("varsub needs at least one parameter set");
  EstimatorOptions opt;
  const auto method = method_from_name(cfg.method);
  const auto mode = exec_mode_from_name(cfg.mode);
  if (!method) throw ConfigError("method must be network or hadamard");
  if (!mode) throw ConfigError("mode must be exact or sampled");
  if (*mode == ExecMode::sampled && cfg.n_shots < 1) throw ConfigError("n_shots must be positive");
  opt.method = *method;
  opt.mode = *mode;
  opt.n_shots = cfg.n_shots;
  opt.seed = cfg.seed;
  if (!cfg.prep.empty()) opt.prep = parse_circuit(read_file(cfg.prep));

  const SubspaceMatrices m = build_subspace(cfg.parameter_sets, h, opt);
  Json report = {{"labels", m.labels}, {"S", complex_matrix_json(m.S)}, {"H", complex_matrix_json(m.Htilde)}};
  int code = kExitOk;
  try {
    const GeneralizedEig g = solve_generalized_eig(m, cfg.svd_threshold);
    report["energies"] = g.energies;
    report["rank"] = g.rank;
    report["s_eigenvalues"] = g.s_eigenvalues;
  } catch (const SingularSubspaceError& e) {
    report["error"] = e.what();
    report["rank"] = e.rank;
    report["s_eigenvalues"] = e.s_eigenvalues;
    code = kExitNumerical;
  }
  if (!out_dir.empty()) {
    const fs::path out = prepare_out(out_dir);
    write_file(out / "effective_config.json", to_json(cfg).dump(2) + "\n");
    write_file(out / "varsub.json", report.dump(2) + "\n");
  }
  std::cout << report.dump(2) << "\n";
  return code;
}

// ---- noise-sweep ------------------------------------------------------------

int cmd_noise_sweep(const NoiseSweepConfig& cfg, const std::string& out_dir) {
  const auto h = load_hamiltonian(cfg.hamiltonian, object_hamiltonian(2.5, 1.5));
  const auto psi = basis_state(cfg.initial_state);
  if (psi.n_qubits != h.n_qubits()) throw ConfigError("initial state size does not match the Hamiltonian");
  std::vector<JitterMode> modes;
  if (cfg.jitter_mode == "both") {
    modes = {JitterMode::per_cycle, JitterMode::per_shot};
  } else if (auto m = jitter_mode_from_name(cfg.jitter_mode)) {
    modes = {*m};
  } else {
    throw ConfigError("jitter_mode must be per_cycle, per_shot or both");
  }
  for (double s : cfg.sigmas) {
    if (!(s > 0)) throw ConfigError("sigmas must be positive");
  }
  for (int n : cfg.cycles) {
    if (n < 1) throw ConfigError("cycles must be at least 1");
  }
  for (double e : cfg.eps) {
    if (!(e >= 0)) throw ConfigError("eps must be non-negative");
  }
  if (cfg.mc_draws != 0 && cfg.mc_draws < 2) throw ConfigError("mc_draws must be 0 or at least 2");

  const auto spec = diagonalize(h, psi);
  std::ostringstream csv;
  csv << "mode,sigma,n,eps,level,noiseless,noisy,ratio,mc_mean,mc_se\n" << std::setprecision(12);
  std::uint64_t row = 0;
  for (JitterMode mode : modes) {
    for (double sigma : cfg.sigmas) {
      for (int n : cfg.cycles) {
        for (double eps : cfg.eps) {
          const Jitter jit{{eps}, mode};
          for (double level : spec.levels) {
            const double clean = analytic_Pn(level, spec, sigma, n);
            const double noisy = mode == JitterMode::per_cycle ? noisy_Pn_per_cycle(level, spec, sigma, n, jit)
                                                               : noisy_Pn_per_shot(level, spec, sigma, n, jit);
            csv << jitter_mode_name(mode) << ',' << sigma << ',' << n << ',' << eps << ',' << level << ',' << clean
                << ',' << noisy << ',' << noisy / clean << ',';
            if (cfg.mc_draws > 0) {
              auto rng = make_stream(cfg.seed, {row});
              const auto mc = monte_carlo_jitter(level, spec, sigma, n, jit, cfg.mc_draws, rng);
              csv << mc.mean << ',' << mc.standard_error;
            } else {
              csv << ',';
            }
            csv << '\n';
            ++row;
          }
        }
      }
    }
  }
  if (out_dir.empty()) {
    std::cout << csv.str();
  } else {
    const fs::path out = prepare_out(out_dir);
    write_file(out / "effective_config.json", to_json(cfg).dump(2) + "\n");
    write_file(out / "noise_sweep.csv", csv.str());
  }
  return kExitOk;
}

template <typename T>
T load_config(const std::string& path, T (*from_json)(const Json&)) {
  return path.empty() ? from_json(Json::object()) : from_json(load_json_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cgnet: controlled gate networks, rodeo scans and variational subspaces"};
  app.require_subcommand(1);

  std::string ham_path, initial, config_path, out_dir, basis = "ibm", circuit_name, circuit_path, out_file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode, jitter_mode, method;
  std::optional<int> cycles;
  std::optional<double> noise_p2q, jitter_eps;

  auto* diag = app.add_subcommand("diagonalize", "eigenvalues and initial-state overlaps");
  diag->add_option("--hamiltonian", ham_path, "Pauli Hamiltonian file (default: object Hamiltonian)");
  diag->add_option("--initial", initial, "basis bitstring, qubit 0 first");

  auto* scan = app.add_subcommand("scan", "three-pass rodeo scan with peak fits");
  scan->add_option("--config", config_path, "JSON scan configuration");
  scan->add_option("--hamiltonian", ham_path, "Pauli Hamiltonian file");
  scan->add_option("--seed", seed, "master seed");
  scan->add_option("--mode", mode, "exact | sampled");
  scan->add_option("--cycles", cycles, "rodeo cycles n");
  scan->add_option("--noise-p2q", noise_p2q, "depolarizing probability per two-qubit gate");
  scan->add_option("--out", out_dir, "output directory")->required();

  auto* count = app.add_subcommand("count", "native gate counts for a built-in or file circuit");
  count->add_option("circuit", circuit_name,
                    "fig2_network | fig4_hadamard | rodeo_cycle_reversal | rodeo_cycle_naive | chain(N,sigma,dt) | file")
      ->required();
  count->add_option("--basis", basis, "ibm | qtm");

  auto* tp = app.add_subcommand("transpile", "lower a circuit file to a native basis");
  tp->add_option("circuit", circuit_path, "circuit file")->required();
  tp->add_option("--basis", basis, "ibm | qtm");
  tp->add_option("--out", out_file, "output circuit file (default: stdout)");

  auto* vs = app.add_subcommand("varsub", "overlap and Hamiltonian matrices with the generalized eigensolve");
  vs->add_option("--config", config_path, "JSON varsub configuration");
  vs->add_option("--hamiltonian", ham_path, "Pauli Hamiltonian file");
  vs->add_option("--seed", seed, "master seed");
  vs->add_option("--mode", mode, "exact | sampled");
  vs->add_option("--method", method, "network | hadamard");
  vs->add_option("--out", out_dir, "output directory");

  auto* ns = app.add_subcommand("noise-sweep", "jitter-suppressed peak heights");
  ns->add_option("--config", config_path, "JSON noise-sweep configuration");
  ns->add_option("--hamiltonian", ham_path, "Pauli Hamiltonian file");
  ns->add_option("--seed", seed, "master seed");
  ns->add_option("--cycles", cycles, "rodeo cycles n");
  ns->add_option("--jitter-eps", jitter_eps, "jitter standard deviation");
  ns->add_option("--jitter-mode", jitter_mode, "per_cycle | per_shot | both");
  ns->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*diag) return cmd_diagonalize(ham_path, initial);
    if (*count) return cmd_count(circuit_name, basis);
    if (*tp) return cmd_transpile(circuit_path, basis, out_file);
    if (*scan) {
      auto cfg = load_config(config_path, scan_config_from_json);
      if (!ham_path.empty()) cfg.hamiltonian = ham_path;
      if (seed) cfg.seed = *seed;
      if (mode) cfg.mode = *mode;
      if (cycles) cfg.n_cycles = *cycles;
      if (noise_p2q) cfg.noise_p2q = *noise_p2q;
      return cmd_scan(cfg, out_dir);
    }
    if (*vs) {
      auto cfg = load_config(config_path, varsub_config_from_json);
      if (!ham_path.empty()) cfg.hamiltonian = ham_path;
      if (seed) cfg.seed = *seed;
      if (mode) cfg.mode = *mode;
      if (method) cfg.method = *method;
      return cmd_varsub(cfg, out_dir);
    }
    if (*ns) {
      auto cfg = load_config(config_path, noise_sweep_config_from_json);
      if (!ham_path.empty()) cfg.hamiltonian = ham_path;
      if (seed) cfg.seed = *seed;
      if (cycles) cfg.cycles = {*cycles};
      if (jitter_eps) cfg.eps = {*jitter_eps};
      if (jitter_mode) cfg.jitter_mode = *jitter_mode;
      return cmd_noise_sweep(cfg, out_dir);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const HamiltonianParseError& e) {
    std::cerr << "hamiltonian error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CircuitParseError& e) {
    std::cerr << "circuit error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ReversalSearchError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
