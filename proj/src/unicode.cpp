#include "pvoice/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "pvoice/errors.hpp"

namespace pvoice::unicode {

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");

  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");

  std::string out;
  normalized.toUTF8String(out);
  return out;
}

}  // namespace pvoice::unicode
