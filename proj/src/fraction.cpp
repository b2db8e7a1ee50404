#include "pvoice/fraction.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

#include "pvoice/errors.hpp"

namespace pvoice {

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ConfigError("not a fraction: '" + std::string(whole) + "'");
  }
  return v;
}

Fraction reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ConfigError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  return g ? Fraction{num / g, den / g} : Fraction{num, den};
}

}  // namespace

Fraction Fraction::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return reduced(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }

  auto dot = text.find('.');
  if (dot == std::string_view::npos) return reduced(parse_int(text, text), 1);

  auto int_part = text.substr(0, dot);
  auto frac_part = text.substr(dot + 1);
  if (frac_part.size() > 12) throw ConfigError("too many decimals in '" + std::string(text) + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
  const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
  return reduced(whole * den + frac, den);
}

std::int64_t Fraction::scaled_round_half_up(std::int64_t n) const noexcept {
  // floor((2 * n * num + den) / (2 * den)) for non-negative operands.
  return (2 * n * numerator + denominator) / (2 * denominator);
}

std::string Fraction::to_string() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

}  // namespace pvoice
