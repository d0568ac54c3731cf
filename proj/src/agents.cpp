#include "hdcb/agents.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdcb {

std::string to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::LinEps: return "lineps";
    case AgentKind::HdReal: return "hd_real";
    case AgentKind::HdBin: return "hd_bin";
    case AgentKind::HdProb: return "hd_prob";
  }
  return "unknown";
}

AgentKind agent_kind_from_string(const std::string& name) {
  if (name == "lineps") return AgentKind::LinEps;
  if (name == "hd_real") return AgentKind::HdReal;
  if (name == "hd_bin") return AgentKind::HdBin;
  if (name == "hd_prob") return AgentKind::HdProb;
  throw std::invalid_argument("unknown agent kind '" + name + "'");
}

int kappa_for_bits(int bits) {
  if (bits < 2 || bits > 8) throw std::invalid_argument("bits must be in [2, 8]");
  return (1 << (bits - 1)) - 1;
}

int AgentSpec::reported_bits() const {
  switch (kind) {
    case AgentKind::LinEps:
    case AgentKind::HdReal: return 32;
    case AgentKind::HdBin: return bits;
    case AgentKind::HdProb: return SatIntHV<std::int8_t>::bits_for_bound(effective_kappa());
  }
  return 0;
}

std::string AgentSpec::label() const {
  switch (kind) {
    case AgentKind::LinEps: return "LinEPS";
    case AgentKind::HdReal: return "HD-CB_REAL";
    case AgentKind::HdBin: return "HD-CB_BIN_Q" + std::to_string(bits);
    case AgentKind::HdProb: return "HD-CB_PROB_k" + std::to_string(effective_kappa());
  }
  return "unknown";
}

std::size_t argmax_lowest(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("argmax: empty scores");
  std::size_t best = 0;
  for (std::size_t a = 1; a < scores.size(); ++a) {
    if (scores[a] > scores[best]) best = a;
  }
  return best;
}

EpsilonGreedy::EpsilonGreedy(double epsilon, CounterRng rng) : epsilon_(epsilon), rng_(rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
}

std::optional<std::size_t> EpsilonGreedy::explore(std::size_t num_actions) {
  if (num_actions == 0) throw std::invalid_argument("epsilon-greedy: no actions");
  const double q = rng_.uniform();
  if (q < epsilon_) return rng_.below(num_actions);
  return std::nullopt;
}

std::size_t eps_greedy_pick(std::span<const double> scores, double epsilon, CounterRng& rng) {
  if (scores.empty()) throw std::invalid_argument("eps_greedy_pick: empty scores");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (rng.uniform() < epsilon) return rng.below(scores.size());
  return argmax_lowest(scores);
}

double decayed_update_probability(double alpha0, std::int64_t t, std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  // Integer count of remaining rounds keeps alpha_1 = alpha0 and alpha_T = alpha0 / T exact.
  const std::int64_t remaining = horizon - (t - 1);
  if (remaining <= 0) return 0.0;
  if (remaining >= horizon) return alpha0;
  return alpha0 * static_cast<double>(remaining) / static_cast<double>(horizon);
}

// --------------------------------------------------------------------------- LinEPS

LinArmState::LinArmState(Index d, double ridge)
    : A(ridge * Eigen::MatrixXd::Identity(d, d)),
      A_inv((1.0 / ridge) * Eigen::MatrixXd::Identity(d, d)),
      b(Eigen::VectorXd::Zero(d)),
      theta(Eigen::VectorXd::Zero(d)) {}

void LinArmState::update(const Eigen::Ref<const Eigen::VectorXd>& x, double r) {
  A.noalias() += x * x.transpose();
  b += r * x;
  const Eigen::VectorXd u = A_inv * x;
  A_inv.noalias() -= (u * u.transpose()) / (1.0 + x.dot(u));
  theta.noalias() = A_inv * b;
}

LinEpsAgent::LinEpsAgent(std::size_t num_actions, Index context_dim, double epsilon, CounterRng rng)
    : dim_(context_dim), arms_(num_actions, LinArmState(context_dim)), policy_(epsilon, rng) {
  if (num_actions == 0) throw std::invalid_argument("LinEpsAgent: need at least one action");
}

std::vector<double> LinEpsAgent::scores(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_same_dim("lineps_select", x.size(), dim_);
  std::vector<double> out(arms_.size());
  for (std::size_t a = 0; a < arms_.size(); ++a) out[a] = x.dot(arms_[a].theta);
  return out;
}

std::size_t LinEpsAgent::select(const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_same_dim("lineps_select", x.size(), dim_);
  if (auto random = policy_.explore(arms_.size())) return *random;
  return argmax_lowest(scores(x));
}

void LinEpsAgent::update(std::size_t action, const Eigen::Ref<const Eigen::VectorXd>& x,
                         double reward) {
  check_same_dim("lineps_update", x.size(), dim_);
  arms_.at(action).update(x, reward);
}

// --------------------------------------------------------------------------- HD-CB_REAL

HdRealAgent::HdRealAgent(std::size_t num_actions, Index dim, double epsilon, CounterRng rng)
    : dim_(dim),
      arms_(num_actions, Accumulator::Zero(dim)),
      rewards_(dim),
      policy_(epsilon, rng) {
  if (num_actions == 0) throw std::invalid_argument("HdRealAgent: need at least one action");
}

std::vector<double> HdRealAgent::scores(const BipolarHV& x) const {
  check_same_dim("hdreal_select", x.dim(), dim_);
  std::vector<double> out(arms_.size());
  for (std::size_t a = 0; a < arms_.size(); ++a) out[a] = cosine(arms_[a], x);
  return out;
}

std::size_t HdRealAgent::select(const BipolarHV& x) {
  check_same_dim("hdreal_select", x.dim(), dim_);
  if (auto random = policy_.explore(arms_.size())) return *random;
  return argmax_lowest(scores(x));
}

void HdRealAgent::update(std::size_t action, const BipolarHV& x, double reward) {
  check_same_dim("hdreal_update", x.dim(), dim_);
  const BipolarHV step = bind(rewards_.encode(reward), x);
  arms_.at(action) += step.values().cast<std::int32_t>();
}

// --------------------------------------------------------------------------- HD-CB_BIN

HdBinAgent::HdBinAgent(std::size_t num_actions, Index dim, int q_bits, double epsilon,
                       CounterRng rng)
    : dim_(dim), q_bits_(q_bits), rewards_(dim), policy_(epsilon, rng) {
  if (num_actions == 0) throw std::invalid_argument("HdBinAgent: need at least one action");
  if (q_bits < 2 || q_bits > 8) throw std::invalid_argument("HdBinAgent: Q must be in [2, 8]");
  const auto bound = static_cast<std::int8_t>((1 << (q_bits - 1)) - 1);
  arms_.reserve(num_actions);
  for (std::size_t a = 0; a < num_actions; ++a) {
    SatIntHV<std::int8_t> acc(dim, bound);
    BipolarHV binary = binarize_sign(acc);
    arms_.push_back(Arm{std::move(acc), std::move(binary), 0});
  }
}

std::vector<double> HdBinAgent::scores(const BipolarHV& x) const {
  check_same_dim("hdbin_select", x.dim(), dim_);
  std::vector<double> out(arms_.size());
  for (std::size_t a = 0; a < arms_.size(); ++a) {
    out[a] = -static_cast<double>(hamming(arms_[a].binary, x));
  }
  return out;
}

std::size_t HdBinAgent::select(const BipolarHV& x) {
  check_same_dim("hdbin_select", x.dim(), dim_);
  if (auto random = policy_.explore(arms_.size())) return *random;
  return argmax_lowest(scores(x));
}

void HdBinAgent::update(std::size_t action, const BipolarHV& x, double reward) {
  check_same_dim("hdbin_update", x.dim(), dim_);
  Arm& arm = arms_.at(action);
  arm.accumulator.saturating_add(bind(rewards_.encode(reward), x));
  arm.binary = binarize_sign(arm.accumulator);
  if (++arm.counter == reset_period()) {
    arm.accumulator.assign_signs();
    arm.counter = 0;
  }
}

// --------------------------------------------------------------------------- HD-CB_PROB

HdProbAgent::HdProbAgent(std::size_t num_actions, Index dim, int kappa, double alpha0,
                         std::int64_t horizon, double epsilon, CounterRng rng)
    : dim_(dim),
      kappa_(kappa),
      alpha0_(alpha0),
      horizon_(horizon),
      rewards_(dim),
      policy_(epsilon, rng.split("explore")),
      mask_rng_(rng.split("mask")) {
  if (num_actions == 0) throw std::invalid_argument("HdProbAgent: need at least one action");
  if (kappa < 1 || kappa > 127) throw std::invalid_argument("HdProbAgent: kappa must be in [1, 127]");
  if (horizon < 1) throw std::invalid_argument("HdProbAgent: horizon must be >= 1");
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0)) {
    throw std::invalid_argument("HdProbAgent: alpha0 must lie in [0, 1]");
  }
  arms_.assign(num_actions, SatIntHV<std::int8_t>(dim, static_cast<std::int8_t>(kappa)));
}

double HdProbAgent::current_alpha() const noexcept {
  return decayed_update_probability(alpha0_, t_, horizon_);
}

std::vector<double> HdProbAgent::scores(const BipolarHV& x) const {
  check_same_dim("hdprob_select", x.dim(), dim_);
  std::vector<double> out(arms_.size());
  for (std::size_t a = 0; a < arms_.size(); ++a) {
    out[a] = static_cast<double>(inner_product(x, arms_[a]));
  }
  return out;
}

std::size_t HdProbAgent::select(const BipolarHV& x) {
  check_same_dim("hdprob_select", x.dim(), dim_);
  if (auto random = policy_.explore(arms_.size())) return *random;
  return argmax_lowest(scores(x));
}

void HdProbAgent::update(std::size_t action, const BipolarHV& x, double reward) {
  update_with_probability(action, x, reward, current_alpha());
}

void HdProbAgent::update_with_probability(std::size_t action, const BipolarHV& x, double reward,
                                          double alpha) {
  check_same_dim("hdprob_update", x.dim(), dim_);
  auto& arm = arms_.at(action);
  if (alpha > 0.0) {
    const BipolarHV step = bind(rewards_.encode(reward), x);
    arm.saturating_add(step, sample_update_mask(dim_, alpha, mask_rng_));
  }
  ++t_;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::size_t num_actions,
                                  Index context_dim, Index hv_dim, std::int64_t horizon,
                                  double epsilon, const CounterRng& rng) {
  switch (spec.kind) {
    case AgentKind::LinEps:
      return std::make_unique<LinEpsAgent>(num_actions, context_dim, epsilon, rng.split("explore"));
    case AgentKind::HdReal:
      return std::make_unique<HdRealAgent>(num_actions, hv_dim, epsilon, rng.split("explore"));
    case AgentKind::HdBin:
      return std::make_unique<HdBinAgent>(num_actions, hv_dim, spec.bits, epsilon,
                                          rng.split("explore"));
    case AgentKind::HdProb:
      return std::make_unique<HdProbAgent>(num_actions, hv_dim, spec.effective_kappa(),
                                           spec.alpha0, horizon, epsilon, rng);
  }
  throw std::invalid_argument("make_agent: unknown kind");
}

std::uint64_t agent_memory_bits(const AgentSpec& spec, std::uint64_t num_actions,
                                std::uint64_t context_dim, std::uint64_t hv_dim) {
  switch (spec.kind) {
    case AgentKind::LinEps:
      return num_actions * (context_dim * context_dim + context_dim) * 32;
    case AgentKind::HdReal:
      return num_actions * hv_dim * 32;
    case AgentKind::HdBin: {
      const auto q = static_cast<std::uint64_t>(spec.bits);
      return num_actions * (hv_dim * q + hv_dim + q);
    }
    case AgentKind::HdProb: {
      const auto width =
          static_cast<std::uint64_t>(SatIntHV<std::int8_t>::bits_for_bound(spec.effective_kappa()));
      return num_actions * hv_dim * width;
    }
  }
  return 0;
}

}  // namespace hdcb
