#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "kernrl/ball_world.hpp"
#include "kernrl/errors.hpp"
#include "kernrl/metric.hpp"
#include "kernrl/tabular_env.hpp"
#include "kernrl/variation.hpp"

using namespace kernrl;

namespace {

StateAction sa(double x, double y, ActionId a) { return {Point::continuous({x, y}), a}; }

// X states, one action, deterministic moves given by succ[h][x]
TabularBlock deterministic_block(std::size_t X, std::size_t H, const std::vector<std::vector<std::size_t>>& succ,
                                 double reward = 0.0) {
  TabularBlock b;
  b.rewards.assign(H, std::vector<std::vector<double>>(X, std::vector<double>(1, reward)));
  b.transitions.assign(H, std::vector<std::vector<std::vector<double>>>(
                              X, std::vector<std::vector<double>>(1, std::vector<double>(X, 0.0))));
  for (std::size_t h = 0; h < H; ++h)
    for (std::size_t x = 0; x < X; ++x) b.transitions[h][x][0][succ[h][x]] = 1.0;
  return b;
}

}  // namespace

TEST_CASE("distance examples") {
  const MetricSpec m;
  CHECK(distance(m, sa(0, 0, 0), sa(0, 0, 0)) == 0.0);
  CHECK(distance(m, sa(0, 0, 0), sa(3, 4, 0)) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(std::isinf(distance(m, sa(0, 0, 0), sa(0, 0, 1))));

  const MetricSpec additive{StateMetric::euclidean, ActionCrossRule::additive, 0.5};
  CHECK(distance(additive, sa(0, 0, 0), sa(3, 4, 1)) == doctest::Approx(5.5));
}

TEST_CASE("distance rejects mismatched spaces") {
  const MetricSpec m;
  CHECK_THROWS_AS(state_distance(m, Point::continuous({0, 0}), Point::continuous({0, 0, 0})), InvalidInput);
  CHECK_THROWS_AS(state_distance(m, Point::continuous({0}), Point::discrete(0)), InvalidInput);
  CHECK(state_distance(m, Point::discrete(2), Point::discrete(2)) == 0.0);
  CHECK(state_distance(m, Point::discrete(2), Point::discrete(3)) == 1.0);
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> act(0, 2);
  const MetricSpec rules[] = {{}, {StateMetric::euclidean, ActionCrossRule::additive, 0.3}};
  for (const auto& m : rules) {
    for (int i = 0; i < 10000; ++i) {
      const auto a = sa(u(rng), u(rng), act(rng));
      const auto b = sa(u(rng), u(rng), act(rng));
      const auto c = sa(u(rng), u(rng), act(rng));
      const double ab = distance(m, a, b), ba = distance(m, b, a);
      REQUIRE(ab >= 0.0);
      REQUIRE((ab == ba || std::abs(ab - ba) <= 1e-12));
      REQUIRE(distance(m, a, a) == 0.0);
      if (!(a == b)) REQUIRE(ab > 0.0);
      const double ac = distance(m, a, c), cb = distance(m, c, b);
      REQUIRE(ab <= ac + cb + 1e-12);
      // same action never exceeds the state distance
      const auto b_same = StateAction{b.state, a.action};
      REQUIRE(distance(m, a, b_same) <= state_distance(m, a.state, b.state));
    }
  }
}

TEST_CASE("ball world mean reward") {
  BallWorldEnv env(BallWorldConfig{.period = 10});
  CHECK(env.mean_reward(0, Point::continuous({0.8, 0.0})) == doctest::Approx(0.25));
  for (std::size_t k : {0, 10, 20, 30, 45}) CHECK(env.mean_reward(k, Point::continuous({0.0, 0.0})) == 0.0);
  CHECK(env.mean_reward(30, Point::continuous({0.0, -0.8})) == doctest::Approx(1.0));
  CHECK(env.block(9) == 0);
  CHECK(env.block(10) == 1);
  CHECK(env.block(39) == 3);
  CHECK(env.block(40) == 0);
  // independent of the step
  const auto x = Point::continuous({0.5, 0.1});
  CHECK(env.true_mean_reward(25, 0, x, 1) == env.true_mean_reward(25, 7, x, 3));
}

TEST_CASE("ball world step") {
  BallWorldEnv env(BallWorldConfig{.noise_std = 0.0});
  Rng rng(1);
  auto s = env.step(0, 0, Point::continuous({0.0, 0.0}), static_cast<ActionId>(BallAction::right), rng);
  CHECK(s.next_state.coords()[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(s.next_state.coords()[1] == 0.0);
  s = env.step(0, 0, Point::continuous({1.0, 0.0}), static_cast<ActionId>(BallAction::right), rng);
  CHECK(s.next_state.coords()[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.next_state.coords()[1] == 0.0);
  s = env.step(0, 0, Point::continuous({0.0, 0.0}), static_cast<ActionId>(BallAction::down), rng);
  CHECK(s.next_state.coords()[1] == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK_THROWS_AS(env.step(0, 0, Point::continuous({0.0, 0.0}), 4, rng), InvalidInput);
}

TEST_CASE("ball world keeps states in the ball and pays the mean reward") {
  BallWorldEnv env(BallWorldConfig{.period = 50, .noise_std = 0.05});
  Rng rng(3);
  std::uniform_int_distribution<int> act(0, 3);
  Point x = env.reset(0);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = static_cast<std::size_t>(i) / 15;
    const double expected = env.mean_reward(k, x);
    auto s = env.step(k, i % 15, x, act(rng), rng);
    REQUIRE(s.reward == expected);
    REQUIRE(s.reward >= 0.0);
    REQUIRE(s.reward <= 1.0);
    const auto c = s.next_state.coords();
    REQUIRE(std::hypot(c[0], c[1]) <= 1.0 + 1e-12);
    x = i % 15 == 14 ? env.reset(k + 1) : s.next_state;
  }
}

TEST_CASE("ball world reward noise stays in range") {
  BallWorldEnv env(BallWorldConfig{.reward_noise = 0.2});
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    auto s = env.step(3500, 0, Point::continuous({0.0, -0.75}), 0, rng);
    REQUIRE(s.reward >= 0.0);
    REQUIRE(s.reward <= 1.0);
  }
}

TEST_CASE("ball world reward is Lipschitz") {
  BallWorldEnv env(BallWorldConfig{.period = 1});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& b = env.config().coefficients[k];
    const double bound = 2.0 * (b[0] + b[1] + b[2] + b[3]);
    CHECK(env.lipschitz_constant(k) == doctest::Approx(bound));
    for (int i = 0; i < 2500; ++i) {
      const double x = u(rng), y = u(rng);
      const double dx = 1e-4 * u(rng), dy = 1e-4 * u(rng);
      const double d = std::hypot(dx, dy);
      if (d == 0.0) continue;
      const double slope = std::abs(env.mean_reward(k, Point::continuous({x + dx, y + dy})) -
                                    env.mean_reward(k, Point::continuous({x, y}))) / d;
      REQUIRE(slope <= bound * (1 + 1e-6));
    }
  }
}

TEST_CASE("ball world change episodes") {
  BallWorldEnv env(BallWorldConfig{.period = 100});
  CHECK(env.change_episodes(100).empty());
  CHECK(env.change_episodes(101) == std::vector<std::size_t>{100});
  CHECK(env.change_episodes(350) == std::vector<std::size_t>{100, 200, 300});
}

TEST_CASE("tabular env validation and dynamics") {
  const auto a = deterministic_block(2, 1, {{1, 1}}, 0.5);
  TabularNSEnv env(2, 1, 1, {a}, {});
  Rng rng(0);
  auto s = env.step(0, 0, Point::discrete(0), 0, rng);
  CHECK(s.next_state.id() == 1);
  CHECK(s.reward == 0.5);
  CHECK_THROWS_AS(env.step(0, 0, Point::discrete(5), 0, rng), InvalidInput);

  auto bad = a;
  bad.transitions[0][0][0] = {0.5, 0.4};
  CHECK_THROWS_AS(TabularNSEnv(2, 1, 1, {bad}, {}), InvalidConfig);
  bad = a;
  bad.rewards[0][0][0] = 1.5;
  CHECK_THROWS_AS(TabularNSEnv(2, 1, 1, {bad}, {}), InvalidConfig);
}

TEST_CASE("tabular env block schedule") {
  const auto a = deterministic_block(2, 1, {{0, 0}});
  const auto b = deterministic_block(2, 1, {{1, 1}});
  TabularNSEnv env(2, 1, 1, {a, b}, {3, 5});
  CHECK(&env.block_at(0) == &env.block_at(2));
  CHECK(&env.block_at(3) != &env.block_at(2));
  CHECK(&env.block_at(5) == &env.block_at(0));
  CHECK(env.change_episodes(10) == std::vector<std::size_t>{3, 5});
  CHECK(env.change_episodes(4) == std::vector<std::size_t>{3});
}

TEST_CASE("reward variation") {
  BallWorldEnv env(BallWorldConfig{.period = 100});
  CHECK(mdp_variation_reward(env, 100) == 0.0);
  CHECK(mdp_variation_reward(env, 101) == doctest::Approx(7.5).epsilon(1e-12));

  const auto a = deterministic_block(2, 2, {{0, 1}, {0, 1}}, 0.3);
  TabularNSEnv constant(2, 1, 2, {a}, {});
  CHECK(mdp_variation_reward(constant, 50) == 0.0);
}

TEST_CASE("reward variation is additive over adjacent ranges") {
  BallWorldEnv env(BallWorldConfig{.period = 7});
  const double whole = reward_variation(env, 0, 40, 41);
  const double split = reward_variation(env, 0, 13, 41) + reward_variation(env, 13, 21, 41) +
                       reward_variation(env, 21, 40, 41);
  CHECK(whole == doctest::Approx(split).epsilon(1e-12));
  CHECK(whole > 0.0);
}

TEST_CASE("transition variation") {
  const auto a = deterministic_block(2, 1, {{0, 0}});
  const auto b = deterministic_block(2, 1, {{1, 0}});
  TabularNSEnv flip(2, 1, 1, {a, b}, {1});
  CHECK(mdp_variation_transition_tv(flip, 2) == doctest::Approx(2.0));
  CHECK(mdp_variation_transition_tv(flip, 1) == 0.0);

  TabularNSEnv constant(2, 1, 1, {a}, {});
  CHECK(mdp_variation_transition_tv(constant, 10) == 0.0);

  auto c = deterministic_block(2, 2, {{0, 0}, {0, 0}});
  auto d = c;
  for (std::size_t h = 0; h < 2; ++h) d.transitions[h][0][0] = {0.7, 0.3};
  TabularNSEnv moved(2, 1, 2, {c, d}, {1});
  CHECK(mdp_variation_transition_tv(moved, 2) == doctest::Approx(1.2).epsilon(1e-12));

  BallWorldEnv ball;
  CHECK_THROWS_AS(mdp_variation_transition_tv(ball, 10), UnsupportedOperation);
}
