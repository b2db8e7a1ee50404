#pragma once

// Cohen's kappa computed item by item from an expanded label list, without
// touching the library's table arithmetic.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace pvoice::test {

inline double brute_force_kappa(const std::array<std::array<std::int64_t, 2>, 2>& counts) {
  std::vector<std::pair<int, int>> items;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (std::int64_t k = 0; k < counts[r][c]; ++k) items.emplace_back(r, c);

  const double n = static_cast<double>(items.size());
  double agree = 0;
  std::array<double, 2> first{}, second{};
  for (const auto& [a, b] : items) {
    agree += a == b ? 1 : 0;
    first[a] += 1;
    second[b] += 1;
  }
  const double po = agree / n;
  const double pe = (first[0] / n) * (second[0] / n) + (first[1] / n) * (second[1] / n);
  if (pe == 1.0) return po == 1.0 ? 1.0 : 0.0;
  return (po - pe) / (1.0 - pe);
}

}  // namespace pvoice::test
