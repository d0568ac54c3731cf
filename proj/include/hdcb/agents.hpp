#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdcb/encoding.hpp"
#include "hdcb/hypervec.hpp"
#include "hdcb/rng.hpp"

namespace hdcb {

enum class AgentKind { LinEps, HdReal, HdBin, HdProb };

std::string to_string(AgentKind kind);
/// Accepts "lineps", "hd_real", "hd_bin", "hd_prob"; throws std::invalid_argument otherwise.
AgentKind agent_kind_from_string(const std::string& name);

/// Saturation threshold for a PROB agent stored in `bits` bits: 2^(bits-1) - 1.
int kappa_for_bits(int bits);

struct AgentSpec {
  AgentKind kind = AgentKind::HdProb;
  /// Q for HD-CB_BIN, component bitwidth for HD-CB_PROB; ignored otherwise.
  int bits = 3;
  /// Explicit saturation threshold for HD-CB_PROB; 0 derives it from `bits`.
  int kappa = 0;
  double alpha0 = 0.4;

  int effective_kappa() const { return kappa > 0 ? kappa : kappa_for_bits(bits); }
  /// Bits per stored component as reported in result tables.
  int reported_bits() const;
  /// Stable identifier used in CSV output, e.g. "HD-CB_PROB_k3".
  std::string label() const;
};

/// What an agent sees at one round: the raw context and, for HD agents, its encoding.
struct RoundInput {
  const Eigen::VectorXd& context;
  const BipolarHV* encoded = nullptr;
};

class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::size_t num_actions() const = 0;
  virtual bool uses_hypervectors() const { return true; }
  virtual std::size_t select(const RoundInput& round) = 0;
  virtual void update(const RoundInput& round, std::size_t action, double reward) = 0;
};

/// Index of the largest score; ties go to the lowest index.
std::size_t argmax_lowest(std::span<const double> scores);

/**
 * Epsilon-greedy exploration decision. One uniform draw q per round; when
 * q < epsilon a second draw picks a uniform action.
 */
class EpsilonGreedy {
 public:
  EpsilonGreedy(double epsilon, CounterRng rng);

  /// A random action when exploring this round, nullopt when the caller should exploit.
  std::optional<std::size_t> explore(std::size_t num_actions);

  double epsilon() const noexcept { return epsilon_; }

 private:
  double epsilon_;
  CounterRng rng_;
};

std::size_t eps_greedy_pick(std::span<const double> scores, double epsilon, CounterRng& rng);

/// alpha0 * max(0, 1 - (t-1)/T), with t counted from 1.
double decayed_update_probability(double alpha0, std::int64_t t, std::int64_t horizon);

// ---------------------------------------------------------------------------

struct LinArmState {
  Eigen::MatrixXd A;
  Eigen::MatrixXd A_inv;
  Eigen::VectorXd b;
  Eigen::VectorXd theta;  ///< cached A_inv * b

  LinArmState() = default;
  explicit LinArmState(Index d, double ridge = 1.0);

  /// A += x x^T, b += r x, A_inv by Sherman-Morrison.
  void update(const Eigen::Ref<const Eigen::VectorXd>& x, double r);
};

/// Linear ridge-regression bandit with epsilon-greedy exploration.
class LinEpsAgent final : public Agent {
 public:
  LinEpsAgent(std::size_t num_actions, Index context_dim, double epsilon, CounterRng rng);

  std::size_t num_actions() const override { return arms_.size(); }
  bool uses_hypervectors() const override { return false; }
  std::size_t select(const RoundInput& round) override { return select(round.context); }
  void update(const RoundInput& round, std::size_t action, double reward) override {
    update(action, round.context, reward);
  }

  std::size_t select(const Eigen::Ref<const Eigen::VectorXd>& x);
  void update(std::size_t action, const Eigen::Ref<const Eigen::VectorXd>& x, double reward);
  std::vector<double> scores(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const LinArmState& arm(std::size_t a) const { return arms_.at(a); }

 private:
  Index dim_;
  std::vector<LinArmState> arms_;
  EpsilonGreedy policy_;
};

/// HD-CB with unbounded 32-bit accumulators and cosine similarity.
class HdRealAgent final : public Agent {
 public:
  using Accumulator = HyperVector<std::int32_t>;

  HdRealAgent(std::size_t num_actions, Index dim, double epsilon, CounterRng rng);

  std::size_t num_actions() const override { return arms_.size(); }
  std::size_t select(const RoundInput& round) override { return select(*round.encoded); }
  void update(const RoundInput& round, std::size_t action, double reward) override {
    update(action, *round.encoded, reward);
  }

  std::size_t select(const BipolarHV& x);
  void update(std::size_t action, const BipolarHV& x, double reward);
  std::vector<double> scores(const BipolarHV& x) const;

  const Accumulator& arm(std::size_t a) const { return arms_.at(a); }
  Accumulator& mutable_arm(std::size_t a) { return arms_.at(a); }

 private:
  Index dim_;
  std::vector<Accumulator> arms_;
  RewardEncoder rewards_;
  EpsilonGreedy policy_;
};

/**
 * HD-CB with Q-bit saturating accumulators, a binarized copy per arm used for
 * Hamming-distance selection, and a per-arm counter that re-binarizes the
 * accumulator every 2^Q updates.
 */
class HdBinAgent final : public Agent {
 public:
  struct Arm {
    SatIntHV<std::int8_t> accumulator;
    BipolarHV binary;
    int counter = 0;
  };

  HdBinAgent(std::size_t num_actions, Index dim, int q_bits, double epsilon, CounterRng rng);

  std::size_t num_actions() const override { return arms_.size(); }
  std::size_t select(const RoundInput& round) override { return select(*round.encoded); }
  void update(const RoundInput& round, std::size_t action, double reward) override {
    update(action, *round.encoded, reward);
  }

  std::size_t select(const BipolarHV& x);
  void update(std::size_t action, const BipolarHV& x, double reward);
  std::vector<double> scores(const BipolarHV& x) const;

  const Arm& arm(std::size_t a) const { return arms_.at(a); }
  int q_bits() const noexcept { return q_bits_; }
  int reset_period() const noexcept { return 1 << q_bits_; }

 private:
  Index dim_;
  int q_bits_;
  std::vector<Arm> arms_;
  RewardEncoder rewards_;
  EpsilonGreedy policy_;
};

/**
 * Probabilistic HD-CB. Arms are saturating integer hypervectors in
 * [-kappa, +kappa]; each update writes a Bernoulli(alpha_t) subset of
 * components by one step in the direction of reward (x) context, with alpha_t
 * decaying linearly to zero over the horizon.
 */
class HdProbAgent final : public Agent {
 public:
  HdProbAgent(std::size_t num_actions, Index dim, int kappa, double alpha0, std::int64_t horizon,
              double epsilon, CounterRng rng);

  std::size_t num_actions() const override { return arms_.size(); }
  std::size_t select(const RoundInput& round) override { return select(*round.encoded); }
  void update(const RoundInput& round, std::size_t action, double reward) override {
    update(action, *round.encoded, reward);
  }

  std::size_t select(const BipolarHV& x);
  /// Applies the update at the current round's alpha_t, then advances the round counter.
  void update(std::size_t action, const BipolarHV& x, double reward);
  /// Same as update() with an explicit update probability; the round counter still advances.
  void update_with_probability(std::size_t action, const BipolarHV& x, double reward, double alpha);
  std::vector<double> scores(const BipolarHV& x) const;

  double current_alpha() const noexcept;
  std::int64_t round() const noexcept { return t_; }
  int kappa() const noexcept { return kappa_; }
  const SatIntHV<std::int8_t>& arm(std::size_t a) const { return arms_.at(a); }
  SatIntHV<std::int8_t>& mutable_arm(std::size_t a) { return arms_.at(a); }

 private:
  Index dim_;
  int kappa_;
  double alpha0_;
  std::int64_t horizon_;
  std::int64_t t_ = 1;
  std::vector<SatIntHV<std::int8_t>> arms_;
  RewardEncoder rewards_;
  EpsilonGreedy policy_;
  CounterRng mask_rng_;
};

/**
 * Constructs the agent described by spec. `rng` is the agent's own stream;
 * exploration and update masks use independent children of it.
 */
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, std::size_t num_actions,
                                  Index context_dim, Index hv_dim, std::int64_t horizon,
                                  double epsilon, const CounterRng& rng);

/// Storage in bits for the learned state of an agent (theoretical widths).
std::uint64_t agent_memory_bits(const AgentSpec& spec, std::uint64_t num_actions,
                                std::uint64_t context_dim, std::uint64_t hv_dim);

}  // namespace hdcb
