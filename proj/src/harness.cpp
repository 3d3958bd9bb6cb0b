#include "kernrl/harness.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "kernrl/ball_world.hpp"
#include "kernrl/errors.hpp"
#include "kernrl/kerns_agent.hpp"
#include "kernrl/oracle.hpp"
#include "kernrl/rs_kerns_agent.hpp"

namespace kernrl {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string run_id(const std::string& agent, std::uint64_t seed) { return agent + "-s" + std::to_string(seed); }

}  // namespace

Rng derive_rng(std::uint64_t seed, const std::string& label) {
  const std::uint64_t l = fnv1a(label);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(l >> 32)};
  return Rng(seq);
}

std::unique_ptr<Environment> make_environment(const ExperimentConfig& c) {
  if (c.env.type != "ball_world") throw InvalidConfig("unsupported env type '" + c.env.type + "'");
  BallWorldConfig bw;
  bw.horizon = c.horizon;
  bw.period = c.env.period;
  bw.noise_std = c.env.noise_std;
  bw.step_size = c.env.step_size;
  bw.reward_noise = c.env.reward_noise;
  return std::make_unique<BallWorldEnv>(bw);
}

std::unique_ptr<Agent> make_agent(const AgentSpec& a, const ExperimentConfig& c, const Environment& env) {
  const KernelSpec kernel{a.temporal, a.spatial, a.beta};
  if (a.type == "kerns") {
    KernsParams p;
    p.horizon = c.horizon;
    p.num_actions = env.num_actions();
    p.lipschitz_q = a.lipschitz_q;
    p.kernel = kernel;
    p.bonus = a.bonus;
    p.metric = env.metric();
    p.interpolation = a.interpolation;
    return std::make_unique<KernsAgent>(p);
  }
  RsParams p;
  p.horizon = c.horizon;
  p.num_actions = env.num_actions();
  p.eps = a.eps;
  p.eps_next = a.eps_next;
  p.lipschitz_q = a.lipschitz_q;
  p.kernel = kernel;
  p.bonus = a.bonus;
  p.metric = env.metric();
  p.interpolation = a.interpolation;
  p.restart = a.restart;
  if (a.type == "rs_kerns") return std::make_unique<RsKernsAgent>(p);
  if (a.type == "rs_kernel_ucbvi") return std::make_unique<RsKernsAgent>(make_rs_kernel_ucbvi(p));
  if (a.type == "restart_baseline") return std::make_unique<RsKernsAgent>(make_restart_baseline(p));
  throw InvalidConfig("unknown agent type '" + a.type + "'");
}

std::vector<double> optimal_values(const ExperimentConfig& c, const Environment& env) {
  const std::size_t K = c.num_episodes;
  auto starts = env.change_episodes(K);
  starts.insert(starts.begin(), 0);
  std::vector<double> out(K, 0.0);
  const GridSpec grid{c.env.oracle_resolution};
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : K;
    const double v = grid_value_iteration(env, starts[i], grid).value;
    for (std::size_t k = starts[i]; k < end; ++k) out[k] = v;
  }
  return out;
}

RunResult run_single(const ExperimentConfig& c, const AgentSpec& spec, std::uint64_t seed, const RunHooks& hooks,
                     const std::vector<double>* oracle) {
  auto env = make_environment(c);
  auto agent = make_agent(spec, c, *env);
  Rng rng = derive_rng(seed, "env");

  const auto changes = env->change_episodes(c.num_episodes);
  const std::set<std::size_t> change_set(changes.begin(), changes.end());

  RunResult out;
  out.agent = spec.name;
  out.seed = seed;
  out.rows.reserve(c.num_episodes);
  out.episode_writes.reserve(c.num_episodes);
  const std::string id = run_id(spec.name, seed);

  double cumulative = 0.0;
  for (std::size_t k = 0; k < c.num_episodes; ++k) {
    if (agent->supports_restart() && change_set.count(k)) agent->notify_change(k);
    agent->plan(k);
    const std::uint64_t writes_before = agent->model_writes();

    Point x = env->reset(k);
    double episode_return = 0.0;
    for (std::size_t h = 0; h < c.horizon; ++h) {
      const ActionId a = agent->act(h, x);
      StepResult s = env->step(k, h, x, a, rng);
      TransitionRecord rec{k, h, x, a, s.next_state, s.reward};
      agent->observe(rec);
      if (hooks.on_transition) hooks.on_transition(rec);
      episode_return += s.reward;
      x = std::move(s.next_state);
    }
    cumulative += episode_return;
    out.episode_writes.push_back(agent->model_writes() - writes_before);

    RunLogRow row;
    row.run_id = id;
    row.agent = spec.name;
    row.seed = seed;
    row.episode = k;
    row.episodic_return = episode_return;
    row.cumulative_return = cumulative;
    out.rows.push_back(std::move(row));
    if (hooks.on_episode_end) hooks.on_episode_end(k, *agent);
  }
  if (oracle) compute_regret_column(out.rows, *oracle);
  out.final_agent = std::move(agent);
  return out;
}

unsigned thread_cap() {
  if (const char* v = std::getenv("KERNRL_THREADS")) {
    const long n = std::strtol(v, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RunResult> run_all(const ExperimentConfig& c, unsigned threads) {
  validate(c);
  std::vector<double> oracle;
  if (c.regret_oracle) oracle = optimal_values(c, *make_environment(c));

  std::vector<std::pair<const AgentSpec*, std::uint64_t>> jobs;
  for (const auto& a : c.agents) {
    for (auto s : c.seeds) jobs.emplace_back(&a, s);
  }
  std::vector<RunResult> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        results[i] = run_single(c, *jobs[i].first, jobs[i].second, {}, c.regret_oracle ? &oracle : nullptr);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void compute_regret_column(std::vector<RunLogRow>& rows, const std::vector<double>& oracle) {
  if (rows.size() != oracle.size()) {
    throw InvalidInput("regret oracle has " + std::to_string(oracle.size()) + " values for " +
                       std::to_string(rows.size()) + " episodes");
  }
  double regret = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    regret += oracle[i] - rows[i].episodic_return;
    rows[i].optimal_value = oracle[i];
    rows[i].cumulative_regret = regret;
  }
}

void write_csv(std::ostream& os, const std::vector<RunResult>& results) {
  os << kCsvHeader << '\n';
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      os << row.run_id << ',' << row.agent << ',' << row.seed << ',' << row.episode << ','
         << fmt6(row.episodic_return) << ',' << fmt6(row.cumulative_return) << ','
         << (row.optimal_value ? fmt6(*row.optimal_value) : "") << ','
         << (row.cumulative_regret ? fmt6(*row.cumulative_regret) : "") << '\n';
    }
  }
}

std::filesystem::path run_experiment(const ExperimentConfig& c) {
  const auto results = run_all(c, thread_cap());
  const std::filesystem::path dir(c.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

  const auto path = dir / "runs.csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(out, results);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");

  if (c.dump_representatives) {
    for (const auto& r : results) {
      const auto* rs = dynamic_cast<const RsKernsAgent*>(r.final_agent.get());
      if (!rs) continue;
      const auto rep_path = dir / ("reps_" + run_id(r.agent, r.seed) + ".csv");
      std::ofstream rep(rep_path);
      if (!rep) throw std::runtime_error("cannot open '" + rep_path.string() + "' for writing");
      rs->dump_representatives(rep);
    }
  }
  return path;
}

}  // namespace kernrl
