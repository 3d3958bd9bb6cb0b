#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kernrl/errors.hpp"
#include "kernrl/rep_sets.hpp"
#include "kernrl/rs_kerns_agent.hpp"
#include "kernrl/rs_model.hpp"
#include "kernrl/tabular_env.hpp"
#include "support/batch_oracle.hpp"

using namespace kernrl;
using kernrl::testing::batch_recompute;
using kernrl::testing::MappedRecord;

namespace {

Point p1(double x) { return Point::continuous({x}); }
StateAction at(double x, ActionId a = 0) { return {p1(x), a}; }

using Stream = kernrl::testing::OnlineStream;

Stream make_stream(double eps, const KernelSpec& kernel, bool restart = false) { return Stream(eps, kernel, restart); }

}  // namespace

TEST_CASE("projection") {
  RepSets sets(0.1, 0.1, MetricSpec{});
  CHECK_THROWS_AS(sets.project_pair(at(0.0)), InvalidInput);
  sets.update(at(0.0), p1(0.0), 0);
  CHECK(sets.project_pair(at(0.7)) == 0);
  sets.update(at(1.0), p1(1.0), 0);
  CHECK(sets.project_pair(at(0.5)) == 0);
  CHECK(sets.project_pair(at(0.9)) == 1);
  CHECK(sets.project_next(p1(0.5)) == 0);
  // another action is never the projection while one with the same action exists
  sets.update(at(0.5, 1), p1(0.5), 0);
  CHECK(sets.project_pair(at(0.5, 0)) == 0);
  CHECK(sets.project_pair(at(0.0, 1)) == 2);
}

TEST_CASE("representative insertion threshold is strict") {
  RepSets sets(0.25, 0.25, MetricSpec{});
  auto u = sets.update(at(0.0), p1(0.0), 0);
  CHECK(u.pair_added);
  CHECK(u.next_added);
  u = sets.update(at(0.25), p1(0.25), 1);
  CHECK_FALSE(u.pair_added);
  CHECK_FALSE(u.next_added);
  CHECK(u.pair_index == 0);
  u = sets.update(at(0.375), p1(0.375), 2);
  CHECK(u.pair_added);
  CHECK(u.next_added);
  CHECK(u.pair_index == 1);
  CHECK(sets.pair_episodes() == std::vector<std::size_t>{0, 2});
  // a new action at the same state is far away under the same-action rule
  CHECK(sets.update(at(0.0, 1), p1(0.0), 3).pair_added);
}

TEST_CASE("representatives stay separated and within the greedy cover count") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double eps : {0.05, 0.2, 0.5}) {
    RepSets sets(eps, eps / 2, MetricSpec{});
    std::vector<StateAction> visited;
    std::vector<Point> nexts;
    for (int i = 0; i < 2000; ++i) {
      const StateAction pair{Point::continuous({u(rng), u(rng)}), static_cast<ActionId>(rng() % 3)};
      const Point next = Point::continuous({u(rng), u(rng)});
      visited.push_back(pair);
      nexts.push_back(next);
      sets.update(pair, next, static_cast<std::size_t>(i));
    }
    const auto& ps = sets.pairs();
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) REQUIRE(distance(MetricSpec{}, ps[i], ps[j]) > eps);
    const auto& ys = sets.next_states();
    for (std::size_t i = 0; i < ys.size(); ++i)
      for (std::size_t j = i + 1; j < ys.size(); ++j) REQUIRE(state_distance(MetricSpec{}, ys[i], ys[j]) > eps / 2);
    const auto cover = greedy_cover_indices(visited, eps, [](const StateAction& a, const StateAction& b) {
      return distance(MetricSpec{}, a, b);
    });
    CHECK(ps.size() <= cover.size());
    CHECK(ps.size() <= visited.size());
  }
}

TEST_CASE("first record") {
  const KernelSpec k{TemporalKernel::exp_discount(0.9), SpatialKernel::gaussian(0.1), 0.01};
  auto s = make_stream(0.1, k);
  s.push(0, at(0.0), p1(0.3), 0.7);
  CHECK(s.model.weight(0) == 1.0);
  CHECK(s.model.reward(0) == doctest::Approx(0.7 / 1.01).epsilon(1e-15));
  CHECK(s.model.transition(0, 0) == doctest::Approx(1.0 / 1.01).epsilon(1e-15));
  CHECK(s.model.aux_count(0) == 1.0);
  CHECK(s.model.aux_reward_sum(0) == 0.7);
  CHECK(s.model.aux_transition_count(0, 0) == 1.0);
}

TEST_CASE("two hits with discount one half") {
  const KernelSpec k{TemporalKernel::exp_discount(0.5), SpatialKernel::gaussian(0.1), 1e-12};
  auto s = make_stream(0.1, k);
  s.push(0, at(0.0), p1(0.0), 1.0);
  s.push(1, at(0.0), p1(0.0), 0.0);
  CHECK(s.model.weight(0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(s.model.reward(0) - 1.0 / 3.0) <= 1e-9);
  CHECK(s.max_gap() <= 1e-12);
}

TEST_CASE("constant kernel with far apart representatives counts hits") {
  const KernelSpec k{TemporalKernel::constant(), SpatialKernel::gaussian(0.01), 0.01};
  auto s = make_stream(0.1, k);
  const double xs[] = {0.0, 5.0, 10.0, 0.0, 0.0, 10.0};
  for (std::size_t i = 0; i < 6; ++i) s.push(i, at(xs[i]), p1(xs[i]), 0.5);
  CHECK(s.model.weight(0) == 3.0);
  CHECK(s.model.weight(1) == 1.0);
  CHECK(s.model.weight(2) == 2.0);
}

TEST_CASE("batch oracle on an empty history") {
  RepSets sets(0.1, 0.1, MetricSpec{});
  const auto b = batch_recompute({}, sets, KernelSpec{});
  CHECK(b.weight.empty());
  CHECK(b.transition.empty());
}

TEST_CASE("online tables match the batch oracle") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double etas[] = {0.3, 0.9, 1.0};
  const double epss[] = {0.0, 0.05, 0.2};
  for (int run = 0; run < 12; ++run) {
    const double eta = etas[run % 3];
    const double eps = epss[(run / 3) % 3];
    const bool restart = run >= 9;
    const KernelSpec k{eta == 1.0 ? TemporalKernel::constant() : TemporalKernel::exp_discount(eta),
                       SpatialKernel::gaussian(0.15), 0.01};
    auto s = make_stream(eps, k, restart);
    std::size_t episode = 0;
    for (int i = 0; i < 150; ++i) {
      episode += rng() % 3;
      // restarts happen at the start of an episode, before its first record
      if (restart && i % 40 == 39) s.reset(++episode);
      s.push(episode, at(u(rng), rng() % 2), p1(u(rng)), u(rng));
    }
    INFO("eta=" << eta << " eps=" << eps << " restart=" << restart);
    CHECK(s.max_gap() <= 1e-9);
  }
}

TEST_CASE("undiscounted tables are plain kernel-weighted counts") {
  const KernelSpec k{TemporalKernel::constant(), SpatialKernel::gaussian(0.3), 0.01};
  auto s = make_stream(0.2, k);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::size_t> mapped;
  for (std::size_t i = 0; i < 60; ++i) {
    s.push(i, at(u(rng)), p1(u(rng)), u(rng));
    mapped.push_back(s.records.back().pair_index);
  }
  for (std::size_t p = 0; p < s.model.num_pairs(); ++p) {
    double w = 0.0;
    for (auto m : mapped) w += spatial_weight(k.spatial, distance(MetricSpec{}, s.sets.pairs()[p], s.sets.pairs()[m]));
    CHECK(s.model.weight(p) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("transition rows are sub-probabilities") {
  const KernelSpec k{TemporalKernel::exp_discount(0.8), SpatialKernel::gaussian(0.2), 0.05};
  auto s = make_stream(0.1, k);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < 10000; ++i) {
    s.push(i / 3, at(u(rng), rng() % 2), p1(u(rng)), u(rng));
    if (i % 97 == 0) {
      for (std::size_t p = 0; p < s.model.num_pairs(); ++p) {
        double mass = 0.0;
        for (double v : s.model.transition_row(p)) {
          REQUIRE(v >= 0.0);
          mass += v;
        }
        const double w = s.model.weight(p);
        REQUIRE(mass <= w / (k.beta + w) + 1e-9);
      }
    }
  }
}

TEST_CASE("write counts") {
  const KernelSpec k{TemporalKernel::exp_discount(0.9), SpatialKernel::gaussian(0.2), 0.01};
  auto s = make_stream(0.3, k);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uint64_t previous = 0;
  for (std::size_t i = 0; i < 400; ++i) {
    const std::size_t before = s.model.num_pairs();
    const std::size_t next_before = s.model.num_next();
    s.push(i, at(u(rng)), p1(u(rng)), u(rng));
    const std::uint64_t P = s.model.num_pairs(), Y = s.model.num_next();
    REQUIRE(s.model.last_update_writes() <= P * (Y + 2) + P * Y);
    if (i > 100 && before == P && next_before == Y && previous != 0) {
      REQUIRE(s.model.last_update_writes() == previous);
    }
    previous = s.model.last_update_writes();
  }
  // the interval only holds 4 pairs and 4 next states at this scale
  CHECK(s.model.num_pairs() <= 4);
}

TEST_CASE("windowed kernels are rejected for online updates") {
  CHECK_THROWS_AS(RepresentativeModel(KernelSpec{TemporalKernel::sliding_window(3), SpatialKernel::gaussian(1.0)}, false),
                  InvalidConfig);
  RsParams p;
  p.kernel.temporal = TemporalKernel::sliding_window(3);
  CHECK_THROWS_AS(RsKernsAgent{p}, InvalidConfig);
}

namespace {

RsParams line_params(std::size_t H, double eta, Interpolation interp = Interpolation::nearest_neighbor) {
  RsParams p;
  p.horizon = H;
  p.num_actions = 2;
  p.eps = 0.1;
  p.eps_next = 0.1;
  p.kernel = {eta == 1.0 ? TemporalKernel::constant() : TemporalKernel::exp_discount(eta), SpatialKernel::gaussian(0.1),
              0.01};
  p.interpolation = interp;
  return p;
}

void feed(RsKernsAgent& agent, std::size_t from, std::size_t to, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t H = agent.params().horizon;
  for (std::size_t k = from; k < to; ++k) {
    double x = 0.1 * u(rng);
    for (std::size_t h = 0; h < H; ++h) {
      const ActionId a = rng() % 2;
      const double nx = std::clamp(x + (a ? 0.2 : -0.2) + 0.05 * u(rng), -1.0, 1.0);
      agent.observe({k, h, p1(x), a, p1(nx), (u(rng) + 1) / 2});
      x = nx;
    }
  }
}

}  // namespace

TEST_CASE("rs plan at the first episode is the clip everywhere") {
  RsKernsAgent agent(line_params(3, 0.9));
  agent.plan(0);
  for (std::size_t h = 0; h < 3; ++h) {
    CHECK(agent.q().value(h, at(0.4, 1)) == 3.0 - h);
    CHECK(agent.act(h, p1(0.4)) == 0);
  }
}

TEST_CASE("rs one-step composition") {
  RsParams p;
  p.horizon = 1;
  p.num_actions = 1;
  p.kernel = {TemporalKernel::constant(), SpatialKernel::gaussian(0.2), 0.01};
  p.bonus.mode = BonusConfig::Mode::simple;
  p.bonus.c1 = p.bonus.c2 = 0.0;
  p.bonus.c3 = 1.0;
  p.lipschitz_q = 1.0;
  RsKernsAgent agent(p);
  agent.observe({0, 0, p1(0.0), 0, p1(0.0), 0.3 * 1.01});
  agent.plan(1);
  CHECK(agent.model(0).reward(0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(agent.q().step(0).q.at(0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rs backward induction uses the clipped next values") {
  RsKernsAgent agent(line_params(4, 0.9, Interpolation::lipschitz));
  feed(agent, 0, 20, 4);
  agent.plan(20);
  const BonusContext ctx{4, 0.01, 0.1, 1.0};
  for (std::size_t h = 0; h < 4; ++h) {
    const auto& sets = agent.rep_sets(h);
    const auto& model = agent.model(h);
    const auto& v = agent.next_values(h);
    REQUIRE(v.size() == sets.next_states().size());
    for (std::size_t y = 0; y < v.size(); ++y) {
      const double expected = h + 1 < 4 ? agent.q().state_value(h + 1, sets.next_states()[y]) : 0.0;
      REQUIRE(v[y] == expected);
      REQUIRE(v[y] >= 0.0);
      REQUIRE(v[y] <= 3.0 - h + 1e-12);
    }
    for (std::size_t p = 0; p < model.num_pairs(); ++p) {
      double q = model.reward(p) + bonus(0.01 + model.weight(p), 20, agent.params().bonus, ctx);
      for (std::size_t y = 0; y < v.size(); ++y) q += model.transition(p, y) * v[y];
      REQUIRE(agent.q().step(h).q[p] == doctest::Approx(q).epsilon(1e-13));
    }
  }
}

TEST_CASE("rs lipschitz interpolation bound") {
  RsKernsAgent agent(line_params(3, 0.9, Interpolation::lipschitz));
  feed(agent, 0, 30, 5);
  agent.plan(30);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 10000; ++i) {
    const ActionId a = i % 2;
    const auto x = at(u(rng), a), y = at(u(rng), a);
    REQUIRE(std::abs(agent.q().value(0, x) - agent.q().value(0, y)) <= distance(MetricSpec{}, x, y) + 1e-9);
  }
}

TEST_CASE("rs observe contract") {
  RsKernsAgent agent(line_params(2, 0.9));
  agent.observe({0, 0, p1(0.0), 0, p1(0.1), 0.5});
  CHECK_THROWS_AS(agent.observe({0, 0, p1(0.0), 0, p1(0.1), 0.5}), InvalidInput);
  CHECK_THROWS_AS(agent.observe({1, 0, p1(0.0), 0, p1(0.1), -0.5}), InvalidInput);
  CHECK_THROWS_AS(agent.observe({1, 3, p1(0.0), 0, p1(0.1), 0.5}), InvalidInput);
  CHECK_THROWS_AS(agent.notify_change(1), InvalidConfig);
}

TEST_CASE("stationary baseline") {
  auto ucb = make_rs_kernel_ucbvi(line_params(3, 0.5));
  CHECK(ucb.params().kernel.temporal.kind == TemporalKernel::Kind::constant);
  CHECK_FALSE(ucb.supports_restart());

  // continuity in eta
  auto near = RsKernsAgent(line_params(3, 1.0 - 1e-12));
  feed(ucb, 0, 100, 9);
  feed(near, 0, 100, 9);
  double gap = 0.0;
  for (std::size_t h = 0; h < 3; ++h) {
    const auto& a = ucb.model(h);
    const auto& b = near.model(h);
    REQUIRE(a.num_pairs() == b.num_pairs());
    for (std::size_t p = 0; p < a.num_pairs(); ++p) {
      gap = std::max({gap, std::abs(a.weight(p) - b.weight(p)), std::abs(a.reward(p) - b.reward(p))});
      for (std::size_t y = 0; y < a.num_next(); ++y) gap = std::max(gap, std::abs(a.transition(p, y) - b.transition(p, y)));
    }
  }
  CHECK(gap <= 1e-6);
}

TEST_CASE("stationary baseline blends reward blocks") {
  RsParams p;
  p.horizon = 1;
  p.num_actions = 1;
  p.kernel = {TemporalKernel::constant(), SpatialKernel::gaussian(0.1), 0.01};
  auto ucb = make_rs_kernel_ucbvi(p);
  p.kernel.temporal = TemporalKernel::exp_discount(0.8);
  RsKernsAgent kerns(p);
  for (std::size_t k = 0; k < 100; ++k) {
    const double r = k < 50 ? 1.0 : 0.0;
    ucb.observe({k, 0, p1(0.0), 0, p1(0.0), r});
    kerns.observe({k, 0, p1(0.0), 0, p1(0.0), r});
  }
  CHECK(ucb.model(0).reward(0) == doctest::Approx(50.0 / 100.01).epsilon(1e-12));
  CHECK(kerns.model(0).reward(0) < 1e-4);
}

TEST_CASE("restart baseline") {
  auto agent = make_restart_baseline(line_params(2, 0.9));
  CHECK(agent.supports_restart());
  CHECK(agent.params().kernel.temporal.kind == TemporalKernel::Kind::constant);
  feed(agent, 0, 15, 6);
  std::vector<std::vector<double>> rows;
  const auto& m = agent.model(0);
  for (std::size_t p = 0; p < m.num_pairs(); ++p) rows.push_back(m.transition_row(p));
  agent.notify_change(15);
  for (std::size_t p = 0; p < m.num_pairs(); ++p) {
    CHECK(m.reward(p) == 0.0);
    CHECK(m.reward_weight(p) == 0.0);
    CHECK(m.transition_row(p) == rows[p]);
  }
  agent.plan(15);
  const BonusContext ctx{2, 0.01, 0.1, 1.0};
  const double fresh = bonus(0.01, 15, agent.params().bonus, ctx);
  const auto& v = agent.next_values(1);
  CHECK(v.size() == agent.rep_sets(1).next_states().size());
  for (std::size_t p = 0; p < agent.model(1).num_pairs(); ++p) {
    CHECK(agent.q().step(1).q[p] == doctest::Approx(fresh).epsilon(1e-14));
  }
}

TEST_CASE("discounting adapts to a switching bandit") {
  // one state, two arms whose means swap every 300 episodes
  TabularBlock a, b;
  a.rewards = {{{0.9, 0.1}}};
  b.rewards = {{{0.1, 0.9}}};
  a.transitions = b.transitions = {{{{1.0}, {1.0}}}};
  TabularNSEnv env(1, 2, 1, {a, b}, {300, 600, 900});

  RsParams p;
  p.horizon = 1;
  p.num_actions = 2;
  p.eps = p.eps_next = 0.5;
  p.metric = {StateMetric::discrete};
  p.kernel = {TemporalKernel::exp_discount(0.95), SpatialKernel::exact_match(), 0.01};
  p.interpolation = Interpolation::nearest_neighbor;

  auto total = [&](RsKernsAgent agent) {
    Rng rng(0);
    double sum = 0.0;
    for (std::size_t k = 0; k < 1200; ++k) {
      agent.plan(k);
      const Point x = env.reset(k);
      const ActionId act = agent.act(0, x);
      const auto s = env.step(k, 0, x, act, rng);
      agent.observe({k, 0, x, act, s.next_state, s.reward});
      sum += s.reward;
    }
    return sum;
  };
  const double adaptive = total(RsKernsAgent(p));
  const double stationary = total(make_rs_kernel_ucbvi(p));
  CHECK(adaptive > 1.3 * stationary);
  CHECK(adaptive > 0.8 * 1200 * 0.9);
}
