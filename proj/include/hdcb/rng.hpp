#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>

namespace hdcb {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 / Stafford variant 13 finalizer.
constexpr std::uint64_t fmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace detail

/**
 * Counter-based splittable generator.
 *
 * The n-th output of a stream is a pure function of (key, n), so a stream can
 * be positioned anywhere without replaying earlier draws. Child streams are
 * derived by hashing the parent key with a stream id or purpose string; the
 * parent's counter is never consumed by splitting.
 */
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t seed = 0, std::uint64_t counter = 0) noexcept
      : key_(detail::fmix64(seed + detail::kGolden)), counter_(counter) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Output at an arbitrary position; does not advance the stream.
  constexpr result_type at(std::uint64_t position) const noexcept {
    const std::uint64_t z = detail::fmix64(key_ + (position + 1) * detail::kGolden);
    return detail::fmix64(z ^ (key_ >> 32 | key_ << 32));
  }

  constexpr result_type operator()() noexcept { return at(counter_++); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n) noexcept {
    const auto wide = static_cast<unsigned __int128>((*this)()) * static_cast<unsigned __int128>(n);
    return static_cast<std::size_t>(wide >> 64);
  }

  /// Standard normal via Box-Muller; consumes two draws per value.
  double normal() noexcept {
    const double u1 = (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  constexpr CounterRng split(std::uint64_t stream) const noexcept {
    CounterRng child;
    child.key_ = detail::fmix64(key_ ^ detail::fmix64(stream + 0x632BE59BD9B4E019ULL));
    child.counter_ = 0;
    return child;
  }

  constexpr CounterRng split(std::string_view purpose) const noexcept {
    return split(detail::fnv1a64(purpose));
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }
  constexpr void seek(std::uint64_t position) noexcept { counter_ = position; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace hdcb
