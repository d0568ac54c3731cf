#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <utility>

#include "hdcb/rng.hpp"

namespace hdcb {

/**
 * Synthetic contextual bandit with binary rewards.
 *
 * Contexts are i.i.d. standard normal in R^d. Action a pays 1 with
 * probability sigmoid(x . theta_a + beta_a), where theta and beta are drawn
 * uniformly from [-1, 1] at construction. Model parameters, contexts and
 * rewards come from three independent streams derived from the seed.
 */
class SyntheticEnv {
 public:
  SyntheticEnv(std::size_t num_actions, Eigen::Index context_dim, std::uint64_t seed);

  /// Explicit parameters: theta is num_actions x d, beta has num_actions entries.
  SyntheticEnv(Eigen::MatrixXd theta, Eigen::VectorXd beta, std::uint64_t seed);

  Eigen::VectorXd sample_context();
  double reward_prob(const Eigen::Ref<const Eigen::VectorXd>& x, std::size_t action) const;
  int sample_reward(const Eigen::Ref<const Eigen::VectorXd>& x, std::size_t action);
  /// Most rewarding action for x and its probability; ties go to the lowest index.
  std::pair<std::size_t, double> best_action(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Mean reward probability over all actions (value of a uniform policy at x).
  double mean_reward_prob(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  std::size_t num_actions() const noexcept { return static_cast<std::size_t>(theta_.rows()); }
  Eigen::Index context_dim() const noexcept { return theta_.cols(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const Eigen::MatrixXd& theta() const noexcept { return theta_; }
  const Eigen::VectorXd& beta() const noexcept { return beta_; }

  /// Number of sample_reward calls made so far.
  std::uint64_t reward_draws() const noexcept { return reward_rng_.counter(); }

  /// {"seed", "N", "d", "theta", "beta"} as JSON text.
  std::string to_json() const;
  static SyntheticEnv from_json(const std::string& text);

 private:
  void check_action(std::size_t action) const;

  std::uint64_t seed_;
  Eigen::MatrixXd theta_;
  Eigen::VectorXd beta_;
  CounterRng context_rng_;
  CounterRng reward_rng_;
};

}  // namespace hdcb
