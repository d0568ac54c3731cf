#include "hdcb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace hdcb {

std::vector<double> default_epsilon_grid() { return {0.01, 0.02, 0.05, 0.1, 0.2, 0.3}; }

std::vector<AgentConfig> default_agent_set(double alpha0) {
  std::vector<AgentConfig> agents;
  agents.push_back({AgentSpec{AgentKind::LinEps, 0, 0, alpha0}, {}});
  agents.push_back({AgentSpec{AgentKind::HdReal, 0, 0, alpha0}, {}});
  for (int bits : {2, 3, 4}) agents.push_back({AgentSpec{AgentKind::HdBin, bits, 0, alpha0}, {}});
  for (int bits : {2, 3, 4}) agents.push_back({AgentSpec{AgentKind::HdProb, bits, 0, alpha0}, {}});
  return agents;
}

namespace {

void check_grid(const std::vector<double>& grid, const std::string& field) {
  if (grid.empty()) throw ConfigError(field, "epsilon grid must not be empty");
  for (double eps : grid) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw ConfigError(field, "epsilon must lie in [0, 1]");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (N < 1) throw ConfigError("N", "must be >= 1");
  if (d < 1) throw ConfigError("d", "must be >= 1");
  if (D < 1) throw ConfigError("D", "must be >= 1");
  if (T < 1) throw ConfigError("T", "must be >= 1");
  if (R < 1) throw ConfigError("R", "must be >= 1");
  if (levels < 2) throw ConfigError("encoder.levels", "must be >= 2");
  if (!(clip_lo < clip_hi)) throw ConfigError("encoder.clip_lo", "must be below clip_hi");
  if (agents.empty()) throw ConfigError("agents", "at least one agent is required");
  check_grid(epsilon_grid, "epsilon_grid");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string prefix = "agents[" + std::to_string(i) + "]";
    const AgentSpec& spec = agents[i].spec;
    if (!agents[i].epsilon_grid.empty()) check_grid(agents[i].epsilon_grid, prefix + ".epsilon");
    if (spec.kind == AgentKind::HdBin && (spec.bits < 2 || spec.bits > 8)) {
      throw ConfigError(prefix + ".bits", "must be in [2, 8]");
    }
    if (spec.kind == AgentKind::HdProb) {
      if (spec.kappa == 0 && (spec.bits < 2 || spec.bits > 8)) {
        throw ConfigError(prefix + ".bits", "must be in [2, 8]");
      }
      if (spec.kappa < 0 || spec.kappa > 127) throw ConfigError(prefix + ".kappa", "must be in [1, 127]");
      if (!(spec.alpha0 >= 0.0 && spec.alpha0 <= 1.0)) {
        throw ConfigError(prefix + ".alpha0", "must lie in [0, 1]");
      }
    }
  }
  for (auto n : sweep_N) {
    if (n < 1) throw ConfigError("sweep.N", "entries must be >= 1");
  }
  for (auto k : sweep_d) {
    if (k < 1) throw ConfigError("sweep.d", "entries must be >= 1");
  }
}

ReplicateStreams derive_streams(std::uint64_t replicate_seed, const AgentSpec& spec) {
  const CounterRng root(replicate_seed);
  return ReplicateStreams{root.split("env").key(), root.split("encoder").key(),
                          root.split("agent").split(spec.label())};
}

std::vector<RunRecord> run_episode(SyntheticEnv& env, const ContextEncoder* encoder, Agent& agent,
                                   std::int64_t T) {
  if (agent.uses_hypervectors() && encoder == nullptr) {
    throw std::invalid_argument("run_episode: hypervector agent needs an encoder");
  }
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(T));
  std::int64_t cumulative = 0;
  for (std::int64_t t = 1; t <= T; ++t) {
    const Eigen::VectorXd x = env.sample_context();
    BipolarHV encoded;
    if (agent.uses_hypervectors()) encoded = encoder->encode(x);
    const RoundInput round{x, agent.uses_hypervectors() ? &encoded : nullptr};

    const std::size_t action = agent.select(round);
    const int reward = env.sample_reward(x, action);
    agent.update(round, action, static_cast<double>(reward));

    cumulative += reward;
    records.push_back(RunRecord{t, action, reward, cumulative, env.best_action(x).second});
  }
  return records;
}

std::vector<RunRecord> run_episode(const ExperimentConfig& config, const AgentSpec& spec,
                                   double epsilon, std::uint64_t replicate_seed) {
  const ReplicateStreams streams = derive_streams(replicate_seed, spec);
  SyntheticEnv env(config.N, config.d, streams.env_seed);
  auto agent =
      make_agent(spec, config.N, config.d, config.D, config.T, epsilon, streams.agent_rng);
  if (!agent->uses_hypervectors()) return run_episode(env, nullptr, *agent, config.T);
  const ContextEncoder encoder(config.encoder_params(), streams.encoder_seed);
  return run_episode(env, &encoder, *agent, config.T);
}

Summary summarize(const std::vector<std::vector<std::int64_t>>& cumulative, double epsilon) {
  if (cumulative.empty()) throw std::invalid_argument("summarize: no replicates");
  const std::size_t T = cumulative.front().size();
  if (T == 0) throw std::invalid_argument("summarize: empty trajectories");
  for (const auto& run : cumulative) {
    if (run.size() != T) throw std::invalid_argument("summarize: trajectories differ in length");
  }
  const auto R = static_cast<double>(cumulative.size());

  // Integer sums are exact, so the result does not depend on replicate order.
  auto moments = [&](std::size_t t) {
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (const auto& run : cumulative) {
      sum += run[t];
      sum_sq += run[t] * run[t];
    }
    const double mean = static_cast<double>(sum) / R;
    double var = 0.0;
    if (cumulative.size() > 1) {
      const double centered = static_cast<double>(sum_sq) * R - static_cast<double>(sum) * static_cast<double>(sum);
      var = std::max(0.0, centered / (R * (R - 1.0)));
    }
    return std::pair{mean, var};
  };

  Summary s;
  s.epsilon = epsilon;
  s.replicates = cumulative.size();
  s.mean_cumulative.resize(static_cast<Index>(T));
  s.stderr_cumulative.resize(static_cast<Index>(T));
  for (std::size_t t = 0; t < T; ++t) {
    const auto [mean, var] = moments(t);
    s.mean_cumulative[static_cast<Index>(t)] = mean;
    s.stderr_cumulative[static_cast<Index>(t)] = std::sqrt(var / R);
  }
  const auto [mean, var] = moments(T - 1);
  const auto horizon = static_cast<double>(T);
  s.mean_reward = mean / horizon;
  s.stddev = std::sqrt(var) / horizon;
  s.std_error = s.stddev / std::sqrt(R);
  s.horizon_rewards.reserve(cumulative.size());
  for (const auto& run : cumulative) s.horizon_rewards.push_back(static_cast<double>(run.back()) / horizon);
  return s;
}

Summary run_experiment(const ExperimentConfig& config, const AgentSpec& spec, double epsilon) {
  config.validate();
  const std::size_t R = config.R;
  std::vector<std::vector<std::int64_t>> cumulative(R);

  auto run_one = [&](std::size_t k) {
    const auto records = run_episode(config, spec, epsilon, config.seed + k);
    auto& out = cumulative[k];
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(rec.cumulative_reward);
  };

  unsigned workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(R));
  if (workers == 1) {
    for (std::size_t k = 0; k < R; ++k) run_one(k);
  } else {
    // Each replicate writes only its own slot; the join is keyed by index.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < R; k = next++) {
          try {
            run_one(k);
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  return summarize(cumulative, epsilon);
}

GridSearchResult grid_search_epsilon(const ExperimentConfig& config, const AgentSpec& spec,
                                     const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("grid_search_epsilon: empty grid");
  GridSearchResult result;
  result.per_epsilon.reserve(grid.size());
  for (double eps : grid) result.per_epsilon.push_back(run_experiment(config, spec, eps));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cand = result.per_epsilon[i].mean_reward;
    const double best = result.per_epsilon[result.best_index].mean_reward;
    if (cand > best || (cand == best && grid[i] < grid[result.best_index])) result.best_index = i;
  }
  result.best_epsilon = grid[result.best_index];
  return result;
}

std::vector<Index> default_memory_dims() { return {8, 16, 32, 64, 128}; }

std::vector<MemoryRow> memory_table(std::size_t N, const std::vector<Index>& dims, Index D,
                                    const std::vector<int>& bitwidths) {
  std::vector<AgentSpec> specs{AgentSpec{AgentKind::LinEps}, AgentSpec{AgentKind::HdReal}};
  for (int bits : bitwidths) specs.push_back(AgentSpec{AgentKind::HdBin, bits});
  for (int bits : bitwidths) specs.push_back(AgentSpec{AgentKind::HdProb, bits});

  std::vector<MemoryRow> rows;
  for (const auto& spec : specs) {
    std::string name;
    switch (spec.kind) {
      case AgentKind::LinEps: name = "LinEPS"; break;
      case AgentKind::HdReal: name = "HD-CB_REAL"; break;
      case AgentKind::HdBin: name = "HD-CB_BIN"; break;
      case AgentKind::HdProb: name = "HD-CB_PROB"; break;
    }
    for (Index d : dims) {
      const auto bits = agent_memory_bits(spec, N, static_cast<std::uint64_t>(d),
                                          static_cast<std::uint64_t>(D));
      rows.push_back(MemoryRow{name, spec.reported_bits(), d, static_cast<double>(bits) / 8192.0});
    }
  }
  return rows;
}

}  // namespace hdcb
