#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kernrl/agent.hpp"
#include "kernrl/config.hpp"
#include "kernrl/environment.hpp"

namespace kernrl {

struct RunLogRow {
  std::string run_id;
  std::string agent;
  std::uint64_t seed = 0;
  std::size_t episode = 0;
  double episodic_return = 0.0;
  double cumulative_return = 0.0;
  std::optional<double> optimal_value;
  std::optional<double> cumulative_regret;
};

struct RunHooks {
  std::function<void(const TransitionRecord&)> on_transition;
  std::function<void(std::size_t episode, const Agent&)> on_episode_end;
};

struct RunResult {
  std::string agent;
  std::uint64_t seed = 0;
  std::vector<RunLogRow> rows;
  std::vector<std::uint64_t> episode_writes;  ///< model-update cell writes per episode
  std::unique_ptr<Agent> final_agent;
};

inline const char* kCsvHeader =
    "run_id,agent,seed,episode,episodic_return,cumulative_return,optimal_value,cumulative_regret";

/// Independent generator for (seed, label); different labels give unrelated streams.
Rng derive_rng(std::uint64_t seed, const std::string& label);

std::unique_ptr<Environment> make_environment(const ExperimentConfig& config);
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const ExperimentConfig& config, const Environment& env);

/// V*_1 estimate per episode, computed once per stretch between change episodes.
std::vector<double> optimal_values(const ExperimentConfig& config, const Environment& env);

/// One (agent, seed) run. `oracle` (one value per episode) fills the regret columns.
RunResult run_single(const ExperimentConfig& config, const AgentSpec& spec, std::uint64_t seed,
                     const RunHooks& hooks = {}, const std::vector<double>* oracle = nullptr);

/// Every (agent, seed) pair, in parallel up to `threads`; results in (agent, seed) order.
std::vector<RunResult> run_all(const ExperimentConfig& config, unsigned threads);

/// KERNRL_THREADS if set, else the hardware concurrency (at least 1).
unsigned thread_cap();

/// cumulative_regret(k) = sum_{j <= k} (oracle_j - episodic_return_j). Length mismatch throws InvalidInput.
void compute_regret_column(std::vector<RunLogRow>& rows, const std::vector<double>& oracle);

void write_csv(std::ostream& os, const std::vector<RunResult>& results);

/// Runs everything and writes <output>/runs.csv (and representative dumps when asked). Returns the CSV path.
std::filesystem::path run_experiment(const ExperimentConfig& config);

}  // namespace kernrl
