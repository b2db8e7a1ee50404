#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace pvoice {

/// xoshiro256** (Blackman & Vigna), state expanded from a 64-bit seed with
/// splitmix64. Every reproducibility guarantee in the toolkit (splits,
/// initialization, batch order, synthetic corpora) is defined in terms of
/// this generator and the helpers below, never std:: distributions, whose
/// output differs between standard library implementations.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  std::uint64_t operator()() noexcept { return next(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform01() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Integer in [0, bound) via the 128-bit multiply-shift mapping. bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Fisher-Yates, walking from the back: swap(i, below(i + 1)).
  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace pvoice
