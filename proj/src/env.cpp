#include "hdcb/env.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace hdcb {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

SyntheticEnv::SyntheticEnv(std::size_t num_actions, Eigen::Index context_dim, std::uint64_t seed)
    : seed_(seed),
      context_rng_(CounterRng(seed).split("context")),
      reward_rng_(CounterRng(seed).split("reward")) {
  if (num_actions == 0) throw std::invalid_argument("SyntheticEnv: N must be positive");
  if (context_dim < 1) throw std::invalid_argument("SyntheticEnv: d must be positive");
  CounterRng model = CounterRng(seed).split("model");
  theta_.resize(static_cast<Eigen::Index>(num_actions), context_dim);
  beta_.resize(static_cast<Eigen::Index>(num_actions));
  for (Eigen::Index a = 0; a < theta_.rows(); ++a) {
    for (Eigen::Index j = 0; j < context_dim; ++j) theta_(a, j) = 2.0 * model.uniform() - 1.0;
  }
  for (Eigen::Index a = 0; a < beta_.size(); ++a) beta_[a] = 2.0 * model.uniform() - 1.0;
}

SyntheticEnv::SyntheticEnv(Eigen::MatrixXd theta, Eigen::VectorXd beta, std::uint64_t seed)
    : seed_(seed),
      theta_(std::move(theta)),
      beta_(std::move(beta)),
      context_rng_(CounterRng(seed).split("context")),
      reward_rng_(CounterRng(seed).split("reward")) {
  if (theta_.rows() == 0 || theta_.cols() == 0) {
    throw std::invalid_argument("SyntheticEnv: theta must be non-empty");
  }
  if (beta_.size() != theta_.rows()) {
    throw std::invalid_argument("SyntheticEnv: beta must have one entry per action");
  }
}

Eigen::VectorXd SyntheticEnv::sample_context() {
  Eigen::VectorXd x(context_dim());
  for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = context_rng_.normal();
  return x;
}

void SyntheticEnv::check_action(std::size_t action) const {
  if (action >= num_actions()) {
    throw std::out_of_range("action " + std::to_string(action) + " out of range [0, " +
                            std::to_string(num_actions()) + ")");
  }
}

double SyntheticEnv::reward_prob(const Eigen::Ref<const Eigen::VectorXd>& x,
                                 std::size_t action) const {
  check_action(action);
  if (x.size() != context_dim()) throw std::invalid_argument("reward_prob: context length mismatch");
  const auto a = static_cast<Eigen::Index>(action);
  return sigmoid(theta_.row(a).dot(x) + beta_[a]);
}

int SyntheticEnv::sample_reward(const Eigen::Ref<const Eigen::VectorXd>& x, std::size_t action) {
  const double p = reward_prob(x, action);
  return reward_rng_.uniform() < p ? 1 : 0;
}

std::pair<std::size_t, double> SyntheticEnv::best_action(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  std::size_t best = 0;
  double best_p = reward_prob(x, 0);
  for (std::size_t a = 1; a < num_actions(); ++a) {
    const double p = reward_prob(x, a);
    if (p > best_p) {
      best = a;
      best_p = p;
    }
  }
  return {best, best_p};
}

double SyntheticEnv::mean_reward_prob(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double total = 0.0;
  for (std::size_t a = 0; a < num_actions(); ++a) total += reward_prob(x, a);
  return total / static_cast<double>(num_actions());
}

std::string SyntheticEnv::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed_;
  j["N"] = num_actions();
  j["d"] = context_dim();
  auto theta = nlohmann::ordered_json::array();
  for (Eigen::Index a = 0; a < theta_.rows(); ++a) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < theta_.cols(); ++k) row.push_back(theta_(a, k));
    theta.push_back(std::move(row));
  }
  j["theta"] = std::move(theta);
  j["beta"] = std::vector<double>(beta_.data(), beta_.data() + beta_.size());
  return j.dump(2);
}

SyntheticEnv SyntheticEnv::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"seed", "N", "d", "theta", "beta"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("env json: missing field ") + key);
  }
  const auto n = j.at("N").get<std::size_t>();
  const auto d = j.at("d").get<Eigen::Index>();
  const auto& rows = j.at("theta");
  if (rows.size() != n) throw std::invalid_argument("env json: theta must have N rows");
  Eigen::MatrixXd theta(static_cast<Eigen::Index>(n), d);
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].size() != static_cast<std::size_t>(d)) {
      throw std::invalid_argument("env json: theta rows must have d entries");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      theta(static_cast<Eigen::Index>(a), k) = rows[a][static_cast<std::size_t>(k)].get<double>();
    }
  }
  const auto beta_values = j.at("beta").get<std::vector<double>>();
  if (beta_values.size() != n) throw std::invalid_argument("env json: beta must have N entries");
  Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(beta_values.data(),
                                                           static_cast<Eigen::Index>(n));
  return SyntheticEnv(std::move(theta), std::move(beta), j.at("seed").get<std::uint64_t>());
}

}  // namespace hdcb
