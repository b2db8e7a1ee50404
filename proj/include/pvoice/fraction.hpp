#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pvoice {

/// Exact rational number, used for the train fraction so that per-class
/// split sizes are computed without floating-point rounding surprises.
struct Fraction {
  std::int64_t numerator = 4;
  std::int64_t denominator = 5;

  /// Accepts "a/b" or a plain decimal such as "0.8" (read exactly, 0.8 -> 4/5).
  static Fraction parse(std::string_view text);

  double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  /// round-half-up of n * fraction, exact.
  std::int64_t scaled_round_half_up(std::int64_t n) const noexcept;
  bool strictly_between_zero_and_one() const noexcept {
    return numerator > 0 && numerator < denominator;
  }
  std::string to_string() const;

  friend bool operator==(const Fraction& a, const Fraction& b) noexcept {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
};

}  // namespace pvoice
