#pragma once

#include <cstdint>
#include <vector>

namespace rbokit {

/// SplitMix64. Small, fully specified and identical on every platform, unlike
/// the standard library distributions, so seeded output can be frozen in
/// golden files.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Uniform integer on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double unit() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }

  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::uint64_t state_;
};

/// Seed of an independent stream for one (master seed, index) pair.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace rbokit
