#include "hdcb/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hdcb {

ContextEncoder::ContextEncoder(const EncoderParams& params, std::uint64_t seed)
    : params_(params), seed_(seed) {
  if (params.dim < 1) throw std::invalid_argument("ContextEncoder: dim must be positive");
  if (params.num_features < 1) {
    throw std::invalid_argument("ContextEncoder: num_features must be positive");
  }
  if (params.num_levels < 2) throw std::invalid_argument("ContextEncoder: num_levels must be >= 2");
  if (!(params.clip_lo < params.clip_hi)) {
    throw std::invalid_argument("ContextEncoder: clip_lo must be below clip_hi");
  }
  if (params.dim < 63 && (Index{1} << params.dim) < params.num_features) {
    throw std::invalid_argument("ContextEncoder: dim too small for distinct role vectors");
  }

  const CounterRng root(seed);

  CounterRng role_rng = root.split("roles");
  roles_.reserve(static_cast<std::size_t>(params.num_features));
  while (static_cast<Index>(roles_.size()) < params.num_features) {
    BipolarHV candidate = BipolarHV::random(params.dim, role_rng);
    if (std::find(roles_.begin(), roles_.end(), candidate) == roles_.end()) {
      roles_.push_back(std::move(candidate));
    }
  }

  CounterRng level_rng = root.split("levels");
  BipolarHV level = BipolarHV::random(params.dim, level_rng);
  std::vector<Index> order(static_cast<std::size_t>(params.dim));
  std::iota(order.begin(), order.end(), Index{0});
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[level_rng.below(i)]);
  }
  level_step_ = params.dim / (2 * (params.num_levels - 1));
  levels_.reserve(static_cast<std::size_t>(params.num_levels));
  levels_.push_back(level);
  for (int k = 1; k < params.num_levels; ++k) {
    const Index begin = static_cast<Index>(k - 1) * level_step_;
    for (Index j = begin; j < begin + level_step_; ++j) level.flip(order[static_cast<std::size_t>(j)]);
    levels_.push_back(level);
  }

  CounterRng tie_rng = root.split("tie");
  tie_breaker_ = BipolarHV::random(params.dim, tie_rng);
}

int ContextEncoder::quantize_level(double x) const noexcept {
  const double lo = params_.clip_lo;
  const double hi = params_.clip_hi;
  const int top = params_.num_levels - 1;
  if (std::isnan(x)) return 0;
  const double clamped = std::clamp(x, lo, hi);
  const auto level = static_cast<int>(std::floor((clamped - lo) / (hi - lo) * params_.num_levels));
  return std::clamp(level, 0, top);
}

BipolarHV ContextEncoder::encode(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != params_.num_features) {
    throw DimensionMismatch("encode_context", x.size(), params_.num_features);
  }
  const Index dim = params_.dim;
  HyperVector<std::int32_t> sum = HyperVector<std::int32_t>::Zero(dim);
  for (Index f = 0; f < params_.num_features; ++f) {
    const auto* role = roles_[static_cast<std::size_t>(f)].values().data();
    const auto* lvl = levels_[static_cast<std::size_t>(quantize_level(x[f]))].values().data();
    for (Index i = 0; i < dim; ++i) sum[i] += role[i] * lvl[i];
  }
  HyperVector<std::int8_t> out(dim);
  const auto* tie = tie_breaker_.values().data();
  for (Index i = 0; i < dim; ++i) {
    out[i] = sum[i] > 0 ? std::int8_t{1} : sum[i] < 0 ? std::int8_t{-1} : tie[i];
  }
  return BipolarHV(std::move(out), BipolarHV::Trusted{});
}

RewardEncoder::RewardEncoder(Index dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("RewardEncoder: dim must be positive");
}

BipolarHV RewardEncoder::encode(double r) const {
  if (std::isnan(r)) throw std::invalid_argument("encode_reward: reward is NaN");
  const double clamped = std::clamp(r, 0.0, 1.0);
  const auto ones = static_cast<Index>(std::floor(clamped * static_cast<double>(dim_)));
  HyperVector<std::int8_t> out(dim_);
  out.head(ones).setConstant(1);
  out.tail(dim_ - ones).setConstant(-1);
  return BipolarHV(std::move(out), BipolarHV::Trusted{});
}

}  // namespace hdcb
