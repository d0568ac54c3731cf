#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdcb/agents.hpp"
#include "hdcb/encoding.hpp"
#include "hdcb/env.hpp"

namespace hdcb {

/// Raised for invalid experiment settings; `field()` names the offending entry.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

std::vector<double> default_epsilon_grid();

struct AgentConfig {
  AgentSpec spec;
  /// Candidate epsilons; empty means the experiment-wide grid.
  std::vector<double> epsilon_grid;
};

/// The eight agents of the comparison table: LinEPS, REAL, BIN@{2,3,4}, PROB@{2,3,4}.
std::vector<AgentConfig> default_agent_set(double alpha0 = 0.4);

struct ExperimentConfig {
  std::size_t N = 10;
  Index d = 5;
  Index D = 1024;
  std::int64_t T = 1000;
  std::size_t R = 50;
  std::uint64_t seed = 20260101;
  std::vector<AgentConfig> agents = default_agent_set();
  std::vector<double> epsilon_grid = default_epsilon_grid();
  int levels = 16;
  double clip_lo = -3.0;
  double clip_hi = 3.0;
  std::vector<std::size_t> sweep_N = {10, 15, 20};
  std::vector<Index> sweep_d = {5, 10, 15};
  std::string output_dir = "results";
  /// Worker threads for replicates; 0 picks the hardware concurrency.
  unsigned threads = 0;

  EncoderParams encoder_params() const {
    return EncoderParams{D, d, levels, clip_lo, clip_hi};
  }
  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  const std::vector<double>& grid_for(const AgentConfig& agent) const {
    return agent.epsilon_grid.empty() ? epsilon_grid : agent.epsilon_grid;
  }
};

struct RunRecord {
  std::int64_t round = 0;
  std::size_t action = 0;
  int reward = 0;
  std::int64_t cumulative_reward = 0;
  double best_prob = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Seeds derived from one replicate seed; each replicate is reproducible on its own.
struct ReplicateStreams {
  std::uint64_t env_seed;
  std::uint64_t encoder_seed;
  CounterRng agent_rng;
};
ReplicateStreams derive_streams(std::uint64_t replicate_seed, const AgentSpec& spec);

/// Interacts for T rounds. `encoder` may be null for agents that use raw contexts.
std::vector<RunRecord> run_episode(SyntheticEnv& env, const ContextEncoder* encoder, Agent& agent,
                                   std::int64_t T);

std::vector<RunRecord> run_episode(const ExperimentConfig& config, const AgentSpec& spec,
                                   double epsilon, std::uint64_t replicate_seed);

struct Summary {
  double epsilon = 0.0;
  std::size_t replicates = 0;
  double mean_reward = 0.0;  ///< mean over replicates of cumulative(T) / T
  double stddev = 0.0;     ///< sample standard deviation across replicates
  double std_error = 0.0;
  Eigen::VectorXd mean_cumulative;    ///< per round, averaged over replicates
  Eigen::VectorXd stderr_cumulative;  ///< per round
  std::vector<double> horizon_rewards;  ///< per replicate, in replicate order
};

/// Aggregates per-replicate cumulative reward trajectories (all of equal length T).
Summary summarize(const std::vector<std::vector<std::int64_t>>& cumulative, double epsilon);

Summary run_experiment(const ExperimentConfig& config, const AgentSpec& spec, double epsilon);

struct GridSearchResult {
  double best_epsilon = 0.0;
  std::size_t best_index = 0;
  std::vector<Summary> per_epsilon;  ///< in grid order

  const Summary& best() const { return per_epsilon.at(best_index); }
};

/// Highest horizon mean wins; ties go to the smaller epsilon.
GridSearchResult grid_search_epsilon(const ExperimentConfig& config, const AgentSpec& spec,
                                     const std::vector<double>& grid);

struct MemoryRow {
  std::string algorithm;
  int bits = 0;
  Index d = 0;
  double kib = 0.0;
};

std::vector<Index> default_memory_dims();

/// LinEPS and REAL once each, BIN and PROB for every bitwidth, each evaluated at every d.
std::vector<MemoryRow> memory_table(std::size_t N, const std::vector<Index>& dims, Index D,
                                    const std::vector<int>& bitwidths = {2, 3, 4});

}  // namespace hdcb
