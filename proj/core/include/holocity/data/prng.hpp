#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace holocity::data {

__extension__ using Uint128 = unsigned __int128;

// SplitMix64. State update and output mix:
//
//   state = state + 0x9E3779B97F4A7C15            (mod 2^64)
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2^64)
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2^64)
//   output z ^ (z >> 31)
//
// uniform01() takes the top 53 bits of one output times 2^-53; below(n) is
// the high word of output * n (128-bit product). Both are exact integer
// operations, so any language can reproduce a generated city bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  // [0, n); n == 0 yields 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>((static_cast<Uint128>(next()) * n) >> 64);
  }

  template <typename T>
  const T& pick(const std::vector<T>& items) noexcept {
    return items[below(items.size())];
  }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace holocity::data
