#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "hdcb/hypervec.hpp"

namespace hdcb {

struct EncoderParams {
  Index dim = 1024;
  Index num_features = 5;
  int num_levels = 16;
  double clip_lo = -3.0;
  double clip_hi = 3.0;
};

/**
 * Record-based context encoder.
 *
 * Each feature i owns a random bipolar role vector; feature values are
 * quantized to one of L correlated level vectors. The context hypervector is
 * sign(sum_i role_i * level[q(x_i)]), with zero sums resolved by a fixed
 * random tie-breaker vector.
 *
 * Level vectors are built from a random base by flipping successive disjoint
 * blocks of floor(D / (2(L-1))) positions taken from a random permutation, so
 * Hamming distance between levels grows linearly with their index gap and the
 * extreme levels are roughly orthogonal.
 */
class ContextEncoder {
 public:
  ContextEncoder(const EncoderParams& params, std::uint64_t seed);

  /// Quantization level of one scalar feature, in [0, L-1]; out-of-range values are clamped.
  int quantize_level(double x) const noexcept;

  BipolarHV encode(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const EncoderParams& params() const noexcept { return params_; }
  Index dim() const noexcept { return params_.dim; }
  Index num_features() const noexcept { return params_.num_features; }
  int num_levels() const noexcept { return params_.num_levels; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Positions flipped between adjacent levels.
  Index level_step() const noexcept { return level_step_; }

  const std::vector<BipolarHV>& role_vectors() const noexcept { return roles_; }
  const std::vector<BipolarHV>& level_vectors() const noexcept { return levels_; }
  const BipolarHV& tie_breaker() const noexcept { return tie_breaker_; }

 private:
  EncoderParams params_;
  std::uint64_t seed_;
  Index level_step_ = 0;
  std::vector<BipolarHV> roles_;
  std::vector<BipolarHV> levels_;
  BipolarHV tie_breaker_;
};

/// Thermometer code: the first floor(r * D) components are +1, the rest -1.
class RewardEncoder {
 public:
  explicit RewardEncoder(Index dim);

  /// r is clamped to [0, 1]; NaN is rejected.
  BipolarHV encode(double r) const;

  Index dim() const noexcept { return dim_; }

 private:
  Index dim_;
};

}  // namespace hdcb
