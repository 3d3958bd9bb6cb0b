#include "kernrl/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kernrl/errors.hpp"

namespace kernrl {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidConfig(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw InvalidConfig(where + ": unknown field '" + key + "'");
  }
}

template <typename T>
void get(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidConfig(where + "." + key + ": " + e.what());
  }
}

TemporalKernel parse_temporal(const json& j, std::size_t period) {
  check_keys(j, {"kind", "eta", "window"}, "temporal");
  std::string kind = "exp_discount";
  get(j, "kind", kind, "temporal");
  if (kind == "exp_discount") {
    double eta = default_eta(period);
    get(j, "eta", eta, "temporal");
    return TemporalKernel::exp_discount(eta);
  }
  if (kind == "sliding_window") {
    std::size_t w = 0;
    if (!j.contains("window")) throw InvalidConfig("temporal: sliding_window needs a window");
    get(j, "window", w, "temporal");
    return TemporalKernel::sliding_window(w);
  }
  if (kind == "constant") return TemporalKernel::constant();
  throw InvalidConfig("temporal: unknown kind '" + kind + "'");
}

SpatialKernel parse_spatial(const json& j) {
  check_keys(j, {"kind", "sigma"}, "spatial");
  std::string kind = "exp_p4";
  double sigma = 0.05;
  get(j, "kind", kind, "spatial");
  get(j, "sigma", sigma, "spatial");
  if (kind == "gaussian") return SpatialKernel::gaussian(sigma);
  if (kind == "exp_p4") return SpatialKernel::exp_p4(sigma);
  if (kind == "exact_match") return SpatialKernel::exact_match();
  throw InvalidConfig("spatial: unknown kind '" + kind + "'");
}

BonusConfig parse_bonus(const json& j) {
  check_keys(j, {"mode", "c", "c1", "c2", "c3", "delta", "d1", "d2", "lipschitz_reward", "lipschitz_transition",
                 "num_episodes", "diameter", "kernel_c1", "kernel_c2"},
             "bonus");
  BonusConfig b;
  std::string mode = "experiment";
  get(j, "mode", mode, "bonus");
  if (mode == "experiment") {
    b.mode = BonusConfig::Mode::experiment;
  } else if (mode == "simple") {
    b.mode = BonusConfig::Mode::simple;
  } else if (mode == "theory") {
    b.mode = BonusConfig::Mode::theory;
  } else {
    throw InvalidConfig("bonus: unknown mode '" + mode + "'");
  }
  get(j, "c", b.c_exp, "bonus");
  get(j, "c1", b.c1, "bonus");
  get(j, "c2", b.c2, "bonus");
  get(j, "c3", b.c3, "bonus");
  get(j, "delta", b.delta, "bonus");
  get(j, "d1", b.d1, "bonus");
  get(j, "d2", b.d2, "bonus");
  get(j, "lipschitz_reward", b.lipschitz_reward, "bonus");
  get(j, "lipschitz_transition", b.lipschitz_transition, "bonus");
  get(j, "num_episodes", b.num_episodes, "bonus");
  get(j, "diameter", b.diameter, "bonus");
  get(j, "kernel_c1", b.kernel_c1, "bonus");
  get(j, "kernel_c2", b.kernel_c2, "bonus");
  return b;
}

AgentSpec parse_agent(const json& j, std::size_t period) {
  check_keys(j, {"name", "type", "kernel", "beta", "lipschitz_q", "bonus", "rs", "restart"}, "agent");
  AgentSpec a;
  get(j, "type", a.type, "agent");
  a.name = a.type;
  get(j, "name", a.name, "agent");
  const std::string where = "agent '" + a.name + "'";
  a.temporal = TemporalKernel::exp_discount(default_eta(period));
  if (j.contains("kernel")) {
    const auto& k = j.at("kernel");
    check_keys(k, {"temporal", "spatial"}, where + ".kernel");
    if (k.contains("temporal")) a.temporal = parse_temporal(k.at("temporal"), period);
    if (k.contains("spatial")) a.spatial = parse_spatial(k.at("spatial"));
  }
  get(j, "beta", a.beta, where);
  get(j, "lipschitz_q", a.lipschitz_q, where);
  if (j.contains("bonus")) a.bonus = parse_bonus(j.at("bonus"));
  if (j.contains("rs")) {
    const auto& rs = j.at("rs");
    check_keys(rs, {"eps", "eps_x", "interpolation"}, where + ".rs");
    get(rs, "eps", a.eps, where + ".rs");
    get(rs, "eps_x", a.eps_next, where + ".rs");
    std::string interp = "nearest_neighbor";
    get(rs, "interpolation", interp, where + ".rs");
    if (interp == "nearest_neighbor") {
      a.interpolation = Interpolation::nearest_neighbor;
    } else if (interp == "lipschitz") {
      a.interpolation = Interpolation::lipschitz;
    } else {
      throw InvalidConfig(where + ": unknown interpolation '" + interp + "'");
    }
  }
  get(j, "restart", a.restart, where);
  if (a.type == "restart_baseline") a.restart = true;
  return a;
}

}  // namespace

double default_eta(std::size_t period) {
  if (period == 0) throw InvalidConfig("period must be positive");
  return std::exp(-std::pow(1.0 / static_cast<double>(period), 2.0 / 3.0));
}

std::vector<AgentSpec> default_agents(std::size_t period) {
  std::vector<AgentSpec> out;
  for (const char* type : {"rs_kerns", "rs_kernel_ucbvi", "restart_baseline"}) {
    AgentSpec a;
    a.name = a.type = type;
    a.temporal = TemporalKernel::exp_discount(default_eta(period));
    a.restart = a.type == "restart_baseline";
    out.push_back(a);
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"K", "H", "env", "agents", "seeds", "regret_oracle", "output", "dump_representatives"}, "config");

  ExperimentConfig c;
  get(j, "K", c.num_episodes, "config");
  get(j, "H", c.horizon, "config");
  if (j.contains("env")) {
    const auto& e = j.at("env");
    check_keys(e, {"type", "N", "noise_std", "step_size", "reward_noise", "oracle_resolution", "variation_resolution"},
               "env");
    get(e, "type", c.env.type, "env");
    get(e, "N", c.env.period, "env");
    get(e, "noise_std", c.env.noise_std, "env");
    get(e, "step_size", c.env.step_size, "env");
    get(e, "reward_noise", c.env.reward_noise, "env");
    get(e, "oracle_resolution", c.env.oracle_resolution, "env");
    get(e, "variation_resolution", c.env.variation_resolution, "env");
  }
  if (c.env.period == 0) throw InvalidConfig("env.N must be positive");
  if (j.contains("agents")) {
    if (!j.at("agents").is_array()) throw InvalidConfig("agents: expected an array");
    for (const auto& a : j.at("agents")) c.agents.push_back(parse_agent(a, c.env.period));
  } else {
    c.agents = default_agents(c.env.period);
  }
  get(j, "seeds", c.seeds, "config");
  get(j, "regret_oracle", c.regret_oracle, "config");
  get(j, "output", c.output, "config");
  get(j, "dump_representatives", c.dump_representatives, "config");
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
  if (c.num_episodes < 1) throw InvalidConfig("K must be at least 1");
  if (c.horizon < 1) throw InvalidConfig("H must be at least 1");
  if (c.agents.empty()) throw InvalidConfig("at least one agent is required");
  if (c.seeds.empty()) throw InvalidConfig("at least one seed is required");
  if (c.env.type != "ball_world") throw InvalidConfig("unsupported env type '" + c.env.type + "'");
  if (!(c.env.noise_std >= 0.0) || !(c.env.step_size > 0.0)) throw InvalidConfig("bad env dynamics");
  if (!(c.env.reward_noise >= 0.0)) throw InvalidConfig("reward_noise must be non-negative");
  if (c.env.oracle_resolution < 2 || c.env.variation_resolution < 2) throw InvalidConfig("grid resolution must be at least 2");

  std::set<std::string> names;
  for (const auto& a : c.agents) {
    if (!names.insert(a.name).second) throw InvalidConfig("duplicate agent name '" + a.name + "'");
    if (a.type != "kerns" && a.type != "rs_kerns" && a.type != "rs_kernel_ucbvi" && a.type != "restart_baseline") {
      throw InvalidConfig("unknown agent type '" + a.type + "'");
    }
    validate(KernelSpec{a.temporal, a.spatial, a.beta});
    validate(a.bonus);
    if (!(a.lipschitz_q >= 0.0)) throw InvalidConfig("lipschitz_q must be non-negative");
    if (!(a.eps >= 0.0) || !(a.eps_next >= 0.0)) throw InvalidConfig("eps must be non-negative");
    if (a.type == "rs_kerns" && a.temporal.kind == TemporalKernel::Kind::sliding_window) {
      throw InvalidConfig("rs_kerns needs an exponential or constant temporal kernel");
    }
    if (a.restart && a.type != "rs_kerns" && a.type != "restart_baseline") {
      throw InvalidConfig("restart is only supported by representative-set agents");
    }
  }
}

}  // namespace kernrl
