#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kernrl/bonus.hpp"
#include "kernrl/kernels.hpp"
#include "kernrl/qfunction.hpp"

namespace kernrl {

struct EnvSpec {
  std::string type = "ball_world";
  std::size_t period = 2000;  ///< N, episodes between changes
  double noise_std = 0.01;
  double step_size = 0.1;
  double reward_noise = 0.0;
  std::size_t oracle_resolution = 41;
  std::size_t variation_resolution = 201;
};

struct AgentSpec {
  std::string name;
  std::string type = "rs_kerns";  ///< kerns | rs_kerns | rs_kernel_ucbvi | restart_baseline
  TemporalKernel temporal;        ///< filled from the period when not given
  SpatialKernel spatial = SpatialKernel::exp_p4(0.05);
  double beta = 0.01;
  double lipschitz_q = 1.0;
  BonusConfig bonus;
  double eps = 0.1;
  double eps_next = 0.1;
  Interpolation interpolation = Interpolation::nearest_neighbor;
  bool restart = false;
};

struct ExperimentConfig {
  std::size_t num_episodes = 20000;
  std::size_t horizon = 15;
  EnvSpec env;
  std::vector<AgentSpec> agents;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3};
  bool regret_oracle = false;
  std::string output = "runs";
  bool dump_representatives = false;
};

/// eta = exp(-(1/N)^(2/3)).
double default_eta(std::size_t period);

/// The three agents of the benchmark figure, all with the default kernel parameters.
std::vector<AgentSpec> default_agents(std::size_t period);

/// Parse a JSON document. Missing fields take the defaults above; unknown fields and
/// out-of-range values throw InvalidConfig.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Throws InvalidConfig when the config cannot be run.
void validate(const ExperimentConfig& config);

}  // namespace kernrl
