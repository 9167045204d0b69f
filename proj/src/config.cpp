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

#include <fstream>
#include <set>
#include <sstream>

namespace cgnet {

namespace {

// Pulls typed fields out of one JSON object and rejects keys nobody asked for.
class Reader {
 public:
  Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const Json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  const Json* sub(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(where_ + ": unknown key '" + item.key() + "'");
    }
  }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

ScanConfig scan_config_from_json(const Json& j) {
  ScanConfig c;
  Reader r(j, "scan");
  r.get("hamiltonian", c.hamiltonian);
  r.get("initial_state", c.initial_state);
  r.get("evolution", c.evolution);
  r.get("dt", c.dt);
  r.get("construction", c.construction);
  r.get("mode", c.mode);
  r.get("time_draws", c.time_draws);
  r.get("n_cycles", c.n_cycles);
  r.get("seed", c.seed);
  r.get("threads", c.threads);
  if (const Json* passes = r.sub("passes")) {
    require(passes->is_array(), "scan.passes: expected an array");
    c.passes.clear();
    for (const auto& p : *passes) {
      PassSettings s{0.0, 1, 1024};
      Reader pr(p, "scan.passes[]");
      pr.get("sigma", s.sigma);
      pr.get("n_circuits", s.n_circuits);
      pr.get("n_shots", s.n_shots);
      pr.finish();
      c.passes.push_back(s);
    }
  }
  r.get("k_sigma", c.k_sigma);
  r.get("validate_sigma", c.validate_sigma);
  r.get("pass1_spacing", c.pass1_spacing);
  r.get("pass1_padding", c.pass1_padding);
  r.get("pass2_halfwidth", c.pass2_halfwidth);
  r.get("pass2_spacing", c.pass2_spacing);
  r.get("merge_distance", c.merge_distance);
  r.get("pass3_points", c.pass3_points);
  r.get("pass3_halfwidth", c.pass3_halfwidth);
  if (const Json* noise = r.sub("noise")) {
    Reader nr(*noise, "scan.noise");
    nr.get("p2q", c.noise_p2q);
    nr.get("p1q", c.noise_p1q);
    nr.get("basis", c.noise_basis);
    nr.finish();
  }
  r.finish();
  return c;
}

Json to_json(const ScanConfig& c) {
  Json passes = Json::array();
  for (const auto& p : c.passes) passes.push_back({{"sigma", p.sigma}, {"n_circuits", p.n_circuits}, {"n_shots", p.n_shots}});
  return {{"hamiltonian", c.hamiltonian},
          {"initial_state", c.initial_state},
          {"evolution", c.evolution},
          {"dt", c.dt},
          {"construction", c.construction},
          {"mode", c.mode},
          {"time_draws", c.time_draws},
          {"n_cycles", c.n_cycles},
          {"seed", c.seed},
          {"threads", c.threads},
          {"passes", passes},
          {"k_sigma", c.k_sigma},
          {"validate_sigma", c.validate_sigma},
          {"pass1_spacing", c.pass1_spacing},
          {"pass1_padding", c.pass1_padding},
          {"pass2_halfwidth", c.pass2_halfwidth},
          {"pass2_spacing", c.pass2_spacing},
          {"merge_distance", c.merge_distance},
          {"pass3_points", c.pass3_points},
          {"pass3_halfwidth", c.pass3_halfwidth},
          {"noise", {{"p2q", c.noise_p2q}, {"p1q", c.noise_p1q}, {"basis", c.noise_basis}}}};
}

VarsubConfig varsub_config_from_json(const Json& j) {
  VarsubConfig c;
  Reader r(j, "varsub");
  r.get("hamiltonian", c.hamiltonian);
  if (const Json* sets = r.sub("parameter_sets")) {
    require(sets->is_array(), "varsub.parameter_sets: expected an array");
    for (const auto& s : *sets) {
      AnsatzParams p;
      Reader sr(s, "varsub.parameter_sets[]");
      sr.get("alpha", p.alpha);
      sr.get("beta", p.beta);
      sr.get("gamma", p.gamma);
      sr.get("delta", p.delta);
      sr.finish();
      c.parameter_sets.push_back(p);
    }
  }
  r.get("prep", c.prep);
  r.get("method", c.method);
  r.get("mode", c.mode);
  r.get("n_shots", c.n_shots);
  r.get("seed", c.seed);
  r.get("svd_threshold", c.svd_threshold);
  r.finish();
  return c;
}

Json to_json(const VarsubConfig& c) {
  Json sets = Json::array();
  for (const auto& p : c.parameter_sets) {
    sets.push_back({{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}});
  }
  return {{"hamiltonian", c.hamiltonian}, {"parameter_sets", sets}, {"prep", c.prep},
          {"method", c.method},           {"mode", c.mode},         {"n_shots", c.n_shots},
          {"seed", c.seed},               {"svd_threshold", c.svd_threshold}};
}

NoiseSweepConfig noise_sweep_config_from_json(const Json& j) {
  NoiseSweepConfig c;
  Reader r(j, "noise_sweep");
  r.get("hamiltonian", c.hamiltonian);
  r.get("initial_state", c.initial_state);
  r.get("sigmas", c.sigmas);
  r.get("cycles", c.cycles);
  r.get("eps", c.eps);
  r.get("jitter_mode", c.jitter_mode);
  r.get("mc_draws", c.mc_draws);
  r.get("seed", c.seed);
  r.finish();
  return c;
}

Json to_json(const NoiseSweepConfig& c) {
  return {{"hamiltonian", c.hamiltonian}, {"initial_state", c.initial_state}, {"sigmas", c.sigmas},
          {"cycles", c.cycles},           {"eps", c.eps},                     {"jitter_mode", c.jitter_mode},
          {"mc_draws", c.mc_draws},       {"seed", c.seed}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ProtocolConfig protocol_config(const ScanConfig& c) {
  require(c.n_cycles >= 1, "n_cycles must be at least 1");
  require(c.passes.size() == 3, "passes must hold exactly three entries");
  for (const auto& p : c.passes) {
    require(p.sigma > 0, "pass sigma must be positive");
    require(p.n_circuits >= 1 && p.n_shots >= 1, "pass n_circuits and n_shots must be at least 1");
  }
  require(c.pass3_points >= 5, "pass3_points must be at least 5");
  require(c.noise_p2q >= 0 && c.noise_p2q <= 1 && c.noise_p1q >= 0 && c.noise_p1q <= 1,
          "noise probabilities must lie in [0, 1]");
  ProtocolConfig p;
  p.n_cycles = c.n_cycles;
  p.passes = c.passes;
  p.k_sigma = c.k_sigma;
  p.validate_sigma = c.validate_sigma;
  p.pass1_spacing = c.pass1_spacing;
  p.pass1_padding = c.pass1_padding;
  p.pass2_halfwidth = c.pass2_halfwidth;
  p.pass2_spacing = c.pass2_spacing;
  p.merge_distance = c.merge_distance;
  p.pass3_points = c.pass3_points;
  p.pass3_halfwidth = c.pass3_halfwidth;
  const auto mode = exec_mode_from_name(c.mode);
  const auto construction = construction_from_name(c.construction);
  const auto basis = basis_from_name(c.noise_basis);
  const auto draws = time_draws_from_name(c.time_draws);
  require(mode.has_value(), "mode must be exact or sampled");
  require(construction.has_value(), "construction must be reversal or standard");
  require(basis.has_value(), "noise basis must be ibm or qtm");
  require(draws.has_value(), "time_draws must be per_energy or shared");
  require(*mode == ExecMode::sampled || (c.noise_p2q == 0 && c.noise_p1q == 0),
          "depolarizing noise needs sampled mode");
  p.scan.mode = *mode;
  p.scan.construction = *construction;
  p.scan.time_draws = *draws;
  p.scan.noise = {c.noise_p2q, c.noise_p1q};
  p.scan.noise_basis = *basis;
  p.scan.seed = c.seed;
  p.scan.threads = c.threads;
  return p;
}

Evolution evolution_setting(const ScanConfig& c) {
  Evolution ev;
  if (c.evolution == "exact") {
    ev.kind = Evolution::Kind::exact;
  } else if (c.evolution == "trotter") {
    ev.kind = Evolution::Kind::trotter;
    require(c.dt > 0, "dt must be positive");
  } else {
    throw ConfigError("evolution must be exact or trotter");
  }
  ev.dt = c.dt;
  return ev;
}

StateVector basis_state(const std::string& bits) {
  require(!bits.empty() && bits.size() <= 62, "initial_state must be a non-empty bitstring");
  std::uint64_t index = 0;
  for (char b : bits) {
    require(b == '0' || b == '1', "initial_state must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(b - '0');
  }
  return StateVector::basis(static_cast<int>(bits.size()), index);
}

}  // namespace cgnet
