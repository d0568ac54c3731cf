#include <doctest.h>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

#include "hdcb/agents.hpp"

using namespace hdcb;

namespace {

constexpr Index kDim = 1024;

Eigen::VectorXd unit(Index d, Index k) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
  e[k] = 1.0;
  return e;
}

BipolarHV random_hv(std::uint64_t seed, Index dim = kDim) {
  CounterRng rng(seed);
  return BipolarHV::random(dim, rng);
}

Eigen::VectorXd random_context(CounterRng& rng, Index d) {
  Eigen::VectorXd x(d);
  for (Index j = 0; j < d; ++j) x[j] = rng.normal();
  return x;
}

}  // namespace

// --------------------------------------------------------------------------- selection

TEST_CASE("eps_greedy_pick exploits with epsilon 0") {
  CounterRng rng(1);
  const std::array scores{0.1, 0.9, 0.3};
  CHECK(eps_greedy_pick(scores, 0.0, rng) == 1);
  const std::array ties{0.5, 0.5, 0.5, 0.5};
  CHECK(eps_greedy_pick(ties, 0.0, rng) == 0);
  CHECK_THROWS_AS(eps_greedy_pick(std::span<const double>{}, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(eps_greedy_pick(scores, 1.5, rng), std::invalid_argument);
}

TEST_CASE("eps_greedy_pick with epsilon 1 is uniform") {
  // Monte Carlo: each of 10 actions should appear with frequency 0.1.
  CounterRng rng(2);
  std::vector<double> scores(10, 0.0);
  scores[3] = 1.0;
  std::array<int, 10> counts{};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[eps_greedy_pick(scores, 1.0, rng)];
  for (int c : counts) CHECK(std::abs(static_cast<double>(c) / draws - 0.1) <= 0.01);
}

TEST_CASE("decayed update probability") {
  for (std::int64_t T : {1, 10, 1000}) {
    CHECK(decayed_update_probability(0.4, 1, T) == 0.4);
    CHECK(decayed_update_probability(0.4, T, T) == 0.4 / static_cast<double>(T));
    CHECK(decayed_update_probability(0.4, T + 1, T) == 0.0);
    CHECK(decayed_update_probability(0.4, T + 50, T) == 0.0);
  }
}

// --------------------------------------------------------------------------- LinEPS

TEST_CASE("LinEPS fresh agent prefers action 0") {
  LinEpsAgent agent(4, 3, 0.0, CounterRng(1));
  CHECK(agent.select(unit(3, 0)) == 0);
  CHECK(agent.arm(0).A.isApprox(Eigen::MatrixXd::Identity(3, 3)));
  CHECK(agent.arm(0).b.isZero());
}

TEST_CASE("LinEPS one update gives the closed-form ridge estimate") {
  LinEpsAgent agent(4, 3, 0.0, CounterRng(1));
  agent.update(2, unit(3, 0), 1.0);
  CHECK(agent.arm(2).theta[0] == doctest::Approx(0.5));
  CHECK(agent.scores(unit(3, 0))[2] == doctest::Approx(0.5));
  CHECK(agent.select(unit(3, 0)) == 2);

  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(3, 3);
  expected(0, 0) = 2.0;
  CHECK(agent.arm(2).A.isApprox(expected));
}

TEST_CASE("LinEPS zero reward leaves b unchanged") {
  LinArmState arm(4);
  arm.update(Eigen::Vector4d(1, 2, 3, 4), 0.0);
  CHECK(arm.b.isZero());
}

TEST_CASE("Sherman-Morrison inverse matches direct inversion") {
  CounterRng rng(3);
  SUBCASE("single update, d = 5") {
    for (int trial = 0; trial < 50; ++trial) {
      LinArmState arm(5);
      arm.update(random_context(rng, 5), rng.uniform());
      const Eigen::MatrixXd direct = arm.A.inverse();
      CHECK((arm.A_inv - direct).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("200 updates, estimate versus fresh solve") {
    LinEpsAgent agent(1, 5, 0.0, CounterRng(4));
    for (int t = 0; t < 200; ++t) agent.update(0, random_context(rng, 5), rng.uniform() < 0.5 ? 1.0 : 0.0);
    const auto& arm = agent.arm(0);
    const Eigen::VectorXd solved = arm.A.ldlt().solve(arm.b);
    CHECK((arm.theta - solved).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((arm.A_inv * arm.A - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("LinEPS rejects mismatched contexts") {
  LinEpsAgent agent(2, 3, 0.0, CounterRng(1));
  CHECK_THROWS_AS(agent.select(Eigen::VectorXd::Zero(4)), DimensionMismatch);
  CHECK_THROWS_AS(agent.update(0, Eigen::VectorXd::Zero(2), 1.0), DimensionMismatch);
}

// --------------------------------------------------------------------------- HD-CB_REAL

TEST_CASE("HD-CB_REAL selection and update") {
  const auto X = random_hv(10);
  HdRealAgent agent(3, kDim, 0.0, CounterRng(1));
  CHECK(agent.select(X) == 0);

  agent.update(1, X, 1.0);
  CHECK(agent.arm(1) == X.values().cast<std::int32_t>());
  const auto s = agent.scores(X);
  CHECK(s[1] == doctest::Approx(1.0));
  CHECK(s[0] == 0.0);
  CHECK(agent.select(X) == 1);

  agent.update(1, X, 1.0);
  CHECK(agent.arm(1) == 2 * X.values().cast<std::int32_t>());

  agent.update(2, X, 0.0);
  CHECK(agent.arm(2) == -X.values().cast<std::int32_t>());
  CHECK(agent.scores(X)[2] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(agent.select(random_hv(1, 10)), DimensionMismatch);
}

TEST_CASE("HD-CB_REAL choice is invariant to positive rescaling") {
  CounterRng rng(7);
  HdRealAgent agent(5, 256, 0.0, CounterRng(2));
  for (int t = 0; t < 100; ++t) {
    agent.update(rng.below(5), BipolarHV::random(256, rng), rng.uniform() < 0.5 ? 1.0 : 0.0);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto X = BipolarHV::random(256, rng);
    HdRealAgent scaled = agent;
    for (std::size_t a = 0; a < 5; ++a) scaled.mutable_arm(a) *= 3;
    CHECK(agent.select(X) == scaled.select(X));
  }
}

// --------------------------------------------------------------------------- HD-CB_BIN

TEST_CASE("HD-CB_BIN fresh agent ties to action 0") {
  HdBinAgent agent(4, kDim, 3, 0.0, CounterRng(1));
  CHECK(agent.select(random_hv(3)) == 0);
  CHECK(agent.arm(2).binary == BipolarHV::ones(kDim));
}

TEST_CASE("HD-CB_BIN single update copies the context") {
  const auto X = random_hv(4);
  HdBinAgent agent(3, kDim, 3, 0.0, CounterRng(1));
  agent.update(1, X, 1.0);
  CHECK(binarize_sign(agent.arm(1).accumulator) == X);
  CHECK(agent.arm(1).accumulator.values() == X.values());
  CHECK(agent.arm(1).binary == X);
  CHECK(agent.scores(X)[1] == 0.0);
  CHECK(agent.select(X) == 1);

  HdBinAgent negative(3, kDim, 3, 0.0, CounterRng(1));
  negative.update(1, X, 0.0);
  CHECK(hamming(negative.arm(1).binary, X) == kDim);
  const auto s = negative.scores(X);
  CHECK(s[1] < s[0]);
  CHECK(s[1] < s[2]);
}

TEST_CASE("HD-CB_BIN resets after 2^Q updates") {
  CounterRng rng(5);
  HdBinAgent agent(2, 128, 2, 0.0, CounterRng(1));
  for (int i = 0; i < 4; ++i) agent.update(0, BipolarHV::random(128, rng), rng.uniform() < 0.5 ? 1.0 : 0.0);
  CHECK(agent.arm(0).counter == 0);
  CHECK(agent.arm(0).accumulator.values().cwiseAbs().minCoeff() == 1);
  CHECK(agent.arm(0).accumulator.values().cwiseAbs().maxCoeff() == 1);
}

TEST_CASE("HD-CB_BIN saturates at 2^(Q-1)-1 before the reset") {
  const auto X = random_hv(6, 128);
  HdBinAgent agent(1, 128, 3, 0.0, CounterRng(1));
  for (int i = 0; i < 7; ++i) agent.update(0, X, 1.0);
  CHECK(agent.arm(0).counter == 7);
  CHECK(agent.arm(0).accumulator.values() == (3 * X.values()).eval());
  agent.update(0, X, 1.0);
  CHECK(agent.arm(0).counter == 0);
  CHECK(agent.arm(0).accumulator.values() == X.values());
}

// --------------------------------------------------------------------------- HD-CB_PROB

TEST_CASE("HD-CB_PROB selection by inner product") {
  const auto X = random_hv(8);
  HdProbAgent agent(3, kDim, 3, 0.4, 1000, 0.0, CounterRng(1));
  CHECK(agent.select(X) == 0);
  agent.update_with_probability(1, X, 1.0, 1.0);
  CHECK(agent.arm(1).values() == X.values());
  CHECK(agent.scores(X)[1] == kDim);
  CHECK(agent.select(X) == 1);

  HdProbAgent ternary(3, kDim, 1, 0.4, 1000, 0.0, CounterRng(1));
  ternary.update_with_probability(1, X, 1.0, 1.0);
  ternary.update_with_probability(1, X, 1.0, 1.0);
  CHECK(ternary.scores(X)[1] == kDim);
  CHECK(ternary.select(X) == 1);
}

TEST_CASE("HD-CB_PROB full-probability step equals a clipped REAL step") {
  const auto X = random_hv(9);
  HdProbAgent prob(2, kDim, 3, 0.4, 1000, 0.0, CounterRng(1));
  HdRealAgent real(2, kDim, 0.0, CounterRng(1));
  prob.update_with_probability(0, X, 1.0, 1.0);
  real.update(0, X, 1.0);
  CHECK(prob.arm(0).values().cast<std::int32_t>() == real.arm(0));
}

TEST_CASE("HD-CB_PROB makes no change once alpha reaches zero") {
  const auto X = random_hv(10);
  HdProbAgent agent(2, kDim, 3, 0.4, 2, 0.0, CounterRng(1));
  agent.update(0, X, 1.0);
  agent.update(0, X, 1.0);
  CHECK(agent.round() == 3);
  CHECK(agent.current_alpha() == 0.0);
  const auto before = agent.arm(0);
  agent.update(0, -X, 1.0);
  CHECK(agent.arm(0) == before);
}

TEST_CASE("HD-CB_PROB alpha schedule follows the round counter") {
  HdProbAgent agent(1, 16, 1, 0.4, 10, 0.0, CounterRng(1));
  CHECK(agent.current_alpha() == 0.4);
  for (int t = 1; t < 10; ++t) agent.update(0, BipolarHV::ones(16), 1.0);
  CHECK(agent.current_alpha() == doctest::Approx(0.04));
}

TEST_CASE("update mask count is binomial(D, alpha)") {
  // Monte Carlo against Binomial(1024, 0.4): mean 409.6, variance 245.76.
  CounterRng rng(11);
  const int trials = 10000;
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < trials; ++t) {
    const double c = static_cast<double>(sample_update_mask(kDim, 0.4, rng).count());
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / trials;
  const double var = (sum_sq - trials * mean * mean) / (trials - 1);
  CHECK(std::abs(mean - 409.6) <= 1.5);
  CHECK(std::abs(var / (1024 * 0.4 * 0.6) - 1.0) <= 0.03);
}

TEST_CASE("HD-CB_PROB update writes about alpha*D components") {
  const auto X = random_hv(12);
  HdProbAgent agent(1, kDim, 7, 0.4, 1000, 0.0, CounterRng(99));
  agent.update(0, X, 1.0);
  const auto written = (agent.arm(0).values().array() != 0).count();
  CHECK(written > 330);
  CHECK(written < 490);
}

// --------------------------------------------------------------------------- shared invariants

namespace {

struct Harnessed {
  std::unique_ptr<Agent> agent;
  const char* name;
};

std::vector<Harnessed> all_agents(std::size_t n, Index d, Index dim, double eps, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<Harnessed> out;
  out.push_back({make_agent(AgentSpec{AgentKind::LinEps}, n, d, dim, 100, eps, rng), "lineps"});
  out.push_back({make_agent(AgentSpec{AgentKind::HdReal}, n, d, dim, 100, eps, rng), "real"});
  out.push_back({make_agent(AgentSpec{AgentKind::HdBin, 3}, n, d, dim, 100, eps, rng), "bin"});
  out.push_back({make_agent(AgentSpec{AgentKind::HdProb, 3}, n, d, dim, 100, eps, rng), "prob"});
  return out;
}

}  // namespace

TEST_CASE("every agent ties to action 0 when untrained") {
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(4);
  const auto X = random_hv(13, 64);
  for (auto& h : all_agents(6, 4, 64, 0.0, 1)) {
    CAPTURE(h.name);
    CHECK(h.agent->select(RoundInput{x, &X}) == 0);
  }
}

TEST_CASE("select stays in range and update touches only the chosen arm") {
  CounterRng rng(14);
  const std::size_t n = 5;
  auto lineps = LinEpsAgent(n, 4, 0.3, CounterRng(1));
  auto real = HdRealAgent(n, 64, 0.3, CounterRng(2));
  auto bin = HdBinAgent(n, 64, 2, 0.3, CounterRng(3));
  auto prob = HdProbAgent(n, 64, 1, 0.4, 300, 0.3, CounterRng(4));
  for (int t = 0; t < 300; ++t) {
    const Eigen::VectorXd x = random_context(rng, 4);
    const auto X = BipolarHV::random(64, rng);
    const RoundInput round{x, &X};
    const double r = rng.uniform() < 0.5 ? 1.0 : 0.0;

    const std::size_t a1 = lineps.select(round);
    REQUIRE(a1 < n);
    const auto lin_before = lineps;
    lineps.update(round, a1, r);
    for (std::size_t a = 0; a < n; ++a) {
      if (a != a1) REQUIRE(lineps.arm(a).A == lin_before.arm(a).A);
    }

    const std::size_t a2 = real.select(round);
    REQUIRE(a2 < n);
    const auto real_before = real;
    real.update(round, a2, r);
    for (std::size_t a = 0; a < n; ++a) {
      if (a != a2) REQUIRE(real.arm(a) == real_before.arm(a));
    }

    const std::size_t a3 = bin.select(round);
    REQUIRE(a3 < n);
    const auto bin_before = bin;
    bin.update(round, a3, r);
    for (std::size_t a = 0; a < n; ++a) {
      if (a != a3) {
        REQUIRE(bin.arm(a).accumulator == bin_before.arm(a).accumulator);
        REQUIRE(bin.arm(a).counter == bin_before.arm(a).counter);
      }
    }
    REQUIRE(bin.arm(a3).binary == binarize_sign(bin.arm(a3).accumulator));

    const std::size_t a4 = prob.select(round);
    REQUIRE(a4 < n);
    const auto prob_before = prob;
    prob.update(round, a4, r);
    for (std::size_t a = 0; a < n; ++a) {
      if (a != a4) REQUIRE(prob.arm(a) == prob_before.arm(a));
    }
  }
}

TEST_CASE("saturation holds under adversarial reward sequences (property)") {
  CounterRng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const int kappa = std::array{1, 3, 7}[rng.below(3)];
    const int q = 2 + static_cast<int>(rng.below(3));
    HdProbAgent prob(3, 48, kappa, 1.0, 1000, 0.0, CounterRng(trial));
    HdBinAgent bin(3, 48, q, 0.0, CounterRng(trial));
    const auto X = BipolarHV::random(48, rng);
    // Long runs of identical updates push hardest on the bounds.
    for (int t = 0; t < 60; ++t) {
      const std::size_t a = rng.below(3);
      const double r = (t / 20) % 2 == 0 ? 1.0 : 0.0;
      prob.update(a, X, r);
      bin.update(a, X, r);
      REQUIRE(prob.arm(a).values().cwiseAbs().maxCoeff() <= kappa);
      REQUIRE(bin.arm(a).counter < (1 << q));
      REQUIRE(bin.arm(a).accumulator.values().cwiseAbs().maxCoeff() <= (1 << (q - 1)) - 1);
    }
  }
}

TEST_CASE("same seed and inputs give identical action sequences and state") {
  CounterRng inputs(16);
  std::vector<Eigen::VectorXd> xs;
  std::vector<BipolarHV> Xs;
  std::vector<double> rs;
  for (int t = 0; t < 200; ++t) {
    xs.push_back(random_context(inputs, 3));
    Xs.push_back(BipolarHV::random(128, inputs));
    rs.push_back(inputs.uniform() < 0.4 ? 1.0 : 0.0);
  }
  auto first = all_agents(4, 3, 128, 0.2, 77);
  auto second = all_agents(4, 3, 128, 0.2, 77);
  for (std::size_t k = 0; k < first.size(); ++k) {
    CAPTURE(first[k].name);
    for (int t = 0; t < 200; ++t) {
      const RoundInput round{xs[static_cast<std::size_t>(t)], &Xs[static_cast<std::size_t>(t)]};
      const auto a = first[k].agent->select(round);
      const auto b = second[k].agent->select(round);
      REQUIRE(a == b);
      first[k].agent->update(round, a, rs[static_cast<std::size_t>(t)]);
      second[k].agent->update(round, b, rs[static_cast<std::size_t>(t)]);
    }
  }
  const auto* p1 = dynamic_cast<HdProbAgent*>(first[3].agent.get());
  const auto* p2 = dynamic_cast<HdProbAgent*>(second[3].agent.get());
  for (std::size_t a = 0; a < 4; ++a) CHECK(p1->arm(a) == p2->arm(a));
}

// --------------------------------------------------------------------------- memory model

TEST_CASE("agent_memory_bits") {
  CHECK(agent_memory_bits(AgentSpec{AgentKind::HdProb, 3}, 10, 5, 1024) == 30720);
  CHECK(agent_memory_bits(AgentSpec{AgentKind::HdBin, 3}, 10, 5, 1024) == 40990);
  CHECK(agent_memory_bits(AgentSpec{AgentKind::LinEps}, 10, 128, 1024) == 10ULL * (16384 + 128) * 32);
  CHECK(static_cast<double>(agent_memory_bits(AgentSpec{AgentKind::LinEps}, 10, 128, 1024)) / 8192.0 ==
        doctest::Approx(645.0));
  CHECK(agent_memory_bits(AgentSpec{AgentKind::HdReal}, 10, 5, 1024) == 10ULL * 1024 * 32);
  AgentSpec explicit_kappa{AgentKind::HdProb, 3, 2};  // 5 levels need 3 bits
  CHECK(agent_memory_bits(explicit_kappa, 1, 1, 100) == 300);
}

TEST_CASE("agent labels and reported widths") {
  CHECK(AgentSpec{AgentKind::HdProb, 3}.label() == "HD-CB_PROB_k3");
  CHECK(AgentSpec{AgentKind::HdProb, 3}.reported_bits() == 3);
  CHECK(AgentSpec{AgentKind::HdProb, 2}.effective_kappa() == 1);
  CHECK(AgentSpec{AgentKind::HdProb, 4}.effective_kappa() == 7);
  CHECK(AgentSpec{AgentKind::HdBin, 4}.label() == "HD-CB_BIN_Q4");
  CHECK(agent_kind_from_string("hd_real") == AgentKind::HdReal);
  CHECK_THROWS_AS(agent_kind_from_string("ucb"), std::invalid_argument);
}
