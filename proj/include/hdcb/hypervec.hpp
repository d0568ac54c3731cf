#pragma once

// Hypervector types and MAP-model arithmetic: bind is elementwise
// multiplication, superposition is addition, similarity is the inner product.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "hdcb/rng.hpp"

namespace hdcb {

using Index = Eigen::Index;

template <typename Scalar>
using HyperVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// One flag per component; true means the component is written.
using UpdateMask = Eigen::Array<bool, Eigen::Dynamic, 1>;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const char* op, Index lhs, Index rhs)
      : std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(lhs) +
                              " vs " + std::to_string(rhs) + ")") {}
};

inline void check_same_dim(const char* op, Index lhs, Index rhs) {
  if (lhs != rhs) throw DimensionMismatch(op, lhs, rhs);
}

/// Dense hypervector with every component in {-1, +1}.
class BipolarHV {
 public:
  using Scalar = std::int8_t;

  BipolarHV() = default;

  /// Throws std::invalid_argument if any component is not -1 or +1.
  explicit BipolarHV(HyperVector<Scalar> values) : values_(std::move(values)) {
    for (Index i = 0; i < values_.size(); ++i) {
      if (values_[i] != 1 && values_[i] != -1) {
        throw std::invalid_argument("BipolarHV: component " + std::to_string(i) +
                                    " is not -1 or +1");
      }
    }
  }

  static BipolarHV ones(Index dim) { return BipolarHV(HyperVector<Scalar>::Ones(dim), Trusted{}); }

  /// i.i.d. uniform components drawn from rng.
  static BipolarHV random(Index dim, CounterRng& rng) {
    HyperVector<Scalar> v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = (rng() >> 63) ? Scalar{1} : Scalar{-1};
    return BipolarHV(std::move(v), Trusted{});
  }

  Index dim() const noexcept { return values_.size(); }
  Index size() const noexcept { return values_.size(); }
  Scalar operator[](Index i) const { return values_[i]; }
  const HyperVector<Scalar>& values() const noexcept { return values_; }

  BipolarHV operator-() const { return BipolarHV(-values_, Trusted{}); }

  /// Flip a single component in place.
  void flip(Index i) { values_[i] = static_cast<Scalar>(-values_[i]); }

  friend bool operator==(const BipolarHV& a, const BipolarHV& b) {
    return a.dim() == b.dim() && a.values_ == b.values_;
  }

 private:
  struct Trusted {};
  BipolarHV(HyperVector<Scalar> values, Trusted) : values_(std::move(values)) {}

  template <typename Derived>
  friend BipolarHV binarize_sign(const Eigen::MatrixBase<Derived>& a);
  friend BipolarHV bind(const BipolarHV& a, const BipolarHV& b);
  friend class RewardEncoder;
  friend class ContextEncoder;

  HyperVector<Scalar> values_;
};

/**
 * Integer hypervector with components held in [-bound, +bound].
 *
 * The storage scalar is the smallest host integer that fits the bound; the
 * accounting width is ceil(log2(2*bound + 1)) bits per component.
 */
template <typename ScalarT>
class SatIntHV {
  static_assert(std::is_integral_v<ScalarT> && std::is_signed_v<ScalarT>);

 public:
  using Scalar = ScalarT;

  SatIntHV() = default;

  /// All-zero vector.
  SatIntHV(Index dim, Scalar bound) : values_(HyperVector<Scalar>::Zero(dim)), bound_(bound) {
    check_bound(bound);
  }

  SatIntHV(HyperVector<Scalar> values, Scalar bound) : values_(std::move(values)), bound_(bound) {
    check_bound(bound);
    for (Index i = 0; i < values_.size(); ++i) {
      if (values_[i] > bound_ || values_[i] < -bound_) {
        throw std::invalid_argument("SatIntHV: component " + std::to_string(i) +
                                    " outside [-bound, +bound]");
      }
    }
  }

  Index dim() const noexcept { return values_.size(); }
  Index size() const noexcept { return values_.size(); }
  Scalar bound() const noexcept { return bound_; }
  Scalar operator[](Index i) const { return values_[i]; }
  const HyperVector<Scalar>& values() const noexcept { return values_; }

  /// Bits needed per component for the range [-bound, +bound].
  int bits_per_component() const noexcept { return bits_for_bound(bound_); }

  static int bits_for_bound(std::int64_t bound) noexcept {
    const std::int64_t levels = 2 * bound + 1;
    int bits = 0;
    while ((std::int64_t{1} << bits) < levels) ++bits;
    return bits;
  }

  /// In-place saturating update: a[i] = clamp(a[i] + delta[i], -bound, +bound) where mask[i].
  void saturating_add(const BipolarHV& delta, const UpdateMask& mask) {
    check_same_dim("clip_saturate", dim(), delta.dim());
    check_same_dim("clip_saturate", dim(), mask.size());
    const auto* d = delta.values().data();
    for (Index i = 0; i < values_.size(); ++i) {
      if (mask[i]) values_[i] = clamp_step(values_[i], d[i]);
    }
  }

  /// In-place saturating update on every component.
  void saturating_add(const BipolarHV& delta) {
    check_same_dim("clip_saturate", dim(), delta.dim());
    const auto* d = delta.values().data();
    for (Index i = 0; i < values_.size(); ++i) values_[i] = clamp_step(values_[i], d[i]);
  }

  /// Replace every component by its sign in {-1, +1} (0 maps to +1).
  void assign_signs() {
    for (Index i = 0; i < values_.size(); ++i) values_[i] = values_[i] < 0 ? Scalar{-1} : Scalar{1};
  }

  friend bool operator==(const SatIntHV& a, const SatIntHV& b) {
    return a.bound_ == b.bound_ && a.dim() == b.dim() && a.values_ == b.values_;
  }

 private:
  static void check_bound(Scalar bound) {
    if (bound < 1) throw std::invalid_argument("SatIntHV: bound must be positive");
  }

  Scalar clamp_step(Scalar v, std::int8_t step) const noexcept {
    const auto next = static_cast<std::int32_t>(v) + step;
    return static_cast<Scalar>(std::clamp<std::int32_t>(next, -bound_, bound_));
  }

  HyperVector<Scalar> values_;
  Scalar bound_ = 1;
};

// ---------------------------------------------------------------------------
// Dense views. Every operation below accepts an Eigen column vector, a
// BipolarHV, or a SatIntHV.

template <typename Derived>
const Eigen::MatrixBase<Derived>& as_dense(const Eigen::MatrixBase<Derived>& v) {
  return v;
}
inline const HyperVector<std::int8_t>& as_dense(const BipolarHV& v) { return v.values(); }
template <typename S>
const HyperVector<S>& as_dense(const SatIntHV<S>& v) {
  return v.values();
}

namespace detail {

template <typename SA, typename SB>
std::int64_t dot_kernel(const SA* a, const SB* b, Index n) {
  if constexpr (sizeof(SA) == 1 && sizeof(SB) == 1) {
    // |a*b| <= 2^14, so 2^16 terms fit a 32-bit partial sum.
    constexpr Index kChunk = Index{1} << 16;
    std::int64_t total = 0;
    for (Index start = 0; start < n; start += kChunk) {
      const Index end = std::min(n, start + kChunk);
      std::int32_t acc = 0;
      for (Index i = start; i < end; ++i) {
        acc += static_cast<std::int32_t>(a[i]) * static_cast<std::int32_t>(b[i]);
      }
      total += acc;
    }
    return total;
  } else {
    std::int64_t total = 0;
    for (Index i = 0; i < n; ++i) {
      total += static_cast<std::int64_t>(a[i]) * static_cast<std::int64_t>(b[i]);
    }
    return total;
  }
}

}  // namespace detail

/// Sum of a[i]*b[i], accumulated in 64-bit integers.
template <typename A, typename B>
std::int64_t inner_product(const A& a, const B& b) {
  const auto& da = as_dense(a).derived();
  const auto& db = as_dense(b).derived();
  check_same_dim("inner_product", da.size(), db.size());
  const auto& ea = da.eval();
  const auto& eb = db.eval();
  return detail::dot_kernel(ea.data(), eb.data(), ea.size());
}

template <typename A>
std::int64_t squared_norm(const A& a) {
  return inner_product(a, a);
}

/// Cosine similarity; 0 when either vector has zero norm.
template <typename A, typename B>
double cosine(const A& a, const B& b) {
  const std::int64_t dot = inner_product(a, b);
  const std::int64_t na = squared_norm(a);
  const std::int64_t nb = squared_norm(b);
  if (na == 0 || nb == 0) return 0.0;
  return static_cast<double>(dot) /
         (std::sqrt(static_cast<double>(na)) * std::sqrt(static_cast<double>(nb)));
}

/// Elementwise product.
inline BipolarHV bind(const BipolarHV& a, const BipolarHV& b) {
  check_same_dim("bind", a.dim(), b.dim());
  return BipolarHV(a.values().cwiseProduct(b.values()), BipolarHV::Trusted{});
}

/// Number of positions where a and b differ.
inline Index hamming(const BipolarHV& a, const BipolarHV& b) {
  check_same_dim("hamming", a.dim(), b.dim());
  const auto* pa = a.values().data();
  const auto* pb = b.values().data();
  Index count = 0;
  for (Index i = 0; i < a.dim(); ++i) count += pa[i] != pb[i];
  return count;
}

/// Majority rule: sign of each component, with sign(0) = +1.
template <typename Derived>
BipolarHV binarize_sign(const Eigen::MatrixBase<Derived>& a) {
  HyperVector<std::int8_t> out(a.size());
  for (Index i = 0; i < a.size(); ++i) out[i] = a[i] < 0 ? std::int8_t{-1} : std::int8_t{1};
  return BipolarHV(std::move(out), BipolarHV::Trusted{});
}

template <typename S>
BipolarHV binarize_sign(const SatIntHV<S>& a) {
  return binarize_sign(a.values());
}

/// f_kappa(a + mask*delta), returned as a new vector.
template <typename S>
SatIntHV<S> clip_saturate(SatIntHV<S> a, const BipolarHV& delta, const UpdateMask& mask) {
  a.saturating_add(delta, mask);
  return a;
}

/// Bernoulli(probability) flags; flag i is set when a uniform draw is < probability.
inline UpdateMask sample_update_mask(Index dim, double probability, CounterRng& rng) {
  UpdateMask mask(dim);
  if (probability <= 0.0) {
    mask.setConstant(false);
    return mask;
  }
  // uniform() < p  <=>  (bits >> 11) < p * 2^53, for 53-bit uniforms.
  const double scaled = std::ceil(probability * 0x1.0p53);
  const std::uint64_t threshold =
      scaled >= 0x1.0p53 ? (std::uint64_t{1} << 53) : static_cast<std::uint64_t>(scaled);
  for (Index i = 0; i < dim; ++i) mask[i] = (rng() >> 11) < threshold;
  return mask;
}

}  // namespace hdcb
