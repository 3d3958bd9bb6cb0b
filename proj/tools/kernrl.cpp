// kernrl: run experiments, tune kernel parameters, check kernel assumptions.
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kernrl/config.hpp"
#include "kernrl/errors.hpp"
#include "kernrl/harness.hpp"
#include "kernrl/kernels.hpp"
#include "kernrl/tuning.hpp"

namespace {

constexpr int kInvalidConfig = 2;
constexpr int kCheckFailed = 3;

template <typename T>
std::vector<T> split_list(const std::string& s, T (*conv)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(conv(item));
  }
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t pos = 0;
  const auto v = std::stoull(s, &pos);
  if (pos != s.size()) throw kernrl::InvalidConfig("bad seed '" + s + "'");
  return v;
}

std::string to_str(const std::string& s) { return s; }

int cmd_run(const std::string& config_path, const std::string& out, const std::string& seeds, long episodes,
            const std::string& agents) {
  auto config = kernrl::load_config(config_path);
  if (!out.empty()) config.output = out;
  if (!seeds.empty()) config.seeds = split_list<std::uint64_t>(seeds, to_u64);
  if (episodes > 0) config.num_episodes = static_cast<std::size_t>(episodes);
  if (!agents.empty()) {
    const auto names = split_list<std::string>(agents, to_str);
    std::vector<kernrl::AgentSpec> kept;
    for (const auto& n : names) {
      bool found = false;
      for (const auto& a : config.agents) {
        if (a.name == n) {
          kept.push_back(a);
          found = true;
        }
      }
      if (!found) throw kernrl::InvalidConfig("no agent named '" + n + "' in the config");
    }
    config.agents = kept;
  }
  kernrl::validate(config);
  const auto path = kernrl::run_experiment(config);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_tune(long K, double delta, double d1, double d2, const std::string& bound, long H) {
  if (K < 2) throw kernrl::InvalidConfig("K must be at least 2");
  if (H < 1) throw kernrl::InvalidConfig("H must be positive");
  const auto p = kernrl::tune_parameters(static_cast<std::size_t>(K), delta, d1, d2, kernrl::parse_bound(bound),
                                         static_cast<std::size_t>(H));
  std::printf("sigma=%.9g\neta=%.9g\nW=%zu\nbound=%s\n", p.sigma, p.eta, p.window,
              p.bound == kernrl::BoundFamily::r1 ? "r1" : "r2");
  return 0;
}

int cmd_check(const std::string& config_path, double c1_limit) {
  const auto config = kernrl::load_config(config_path);
  bool ok = true;
  for (const auto& a : config.agents) {
    if (a.spatial.kind == kernrl::SpatialKernel::Kind::exact_match) {
      std::cout << a.name << ": exact-match kernel, nothing to check\n";
      continue;
    }
    kernrl::AssumptionCheckOptions options;
    options.c1_limit = c1_limit;
    const auto report = kernrl::check_assumptions(kernrl::KernelSpec{a.temporal, a.spatial, a.beta}, options);
    const auto& c = report.constants;
    if (report.passed()) {
      std::printf("%s: ok C1=%.6g C2=%.6g C3=%.6g G4=%.6g eta=%.9g W=%zu\n", a.name.c_str(), c.c1, c.c2, c.c3,
                  c.g4, c.eta, c.window);
    } else {
      ok = false;
      for (const auto& f : report.failures) std::printf("%s: %s\n", a.name.c_str(), f.message.c_str());
      std::printf("%s: smallest C1 on the grid is %.6g\n", a.name.c_str(), c.c1);
    }
  }
  return ok ? 0 : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel-based RL for non-stationary MDPs"};
  app.require_subcommand(1);

  std::string config_path, out, seeds, agents;
  long episodes = 0;
  auto* run = app.add_subcommand("run", "run an experiment and write runs.csv");
  run->add_option("--config", config_path, "JSON config")->required();
  run->add_option("--out", out, "output directory");
  run->add_option("--seeds", seeds, "comma-separated seeds");
  run->add_option("--episodes", episodes, "number of episodes K");
  run->add_option("--agents", agents, "comma-separated agent names");

  long K = 0, H = 1;
  double delta = 0.0, d1 = 0.0, d2 = 0.0;
  std::string bound = "r1";
  auto* tune = app.add_subcommand("tune", "closed-form kernel parameters");
  tune->add_option("--K", K, "number of episodes")->required();
  tune->add_option("--delta", delta, "variation budget")->required();
  tune->add_option("--d1", d1, "state covering dimension")->required();
  tune->add_option("--d2", d2, "action covering dimension")->required();
  tune->add_option("--bound", bound, "r1 or r2")->required();
  tune->add_option("--H", H, "horizon (used by r2)");

  std::string check_path;
  auto* check = app.add_subcommand("check-kernel", "check kernel regularity conditions");
  check->add_option("--config", check_path, "JSON config")->required();
  double c1_limit = 1.0;
  check->add_option("--c1-limit", c1_limit, "largest accepted envelope constant C1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInvalidConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out, seeds, episodes, agents);
    if (*tune) return cmd_tune(K, delta, d1, d2, bound, H);
    if (*check) return cmd_check(check_path, c1_limit);
  } catch (const std::invalid_argument& e) {
    // InvalidConfig, InvalidInput and bad numbers all land here
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
