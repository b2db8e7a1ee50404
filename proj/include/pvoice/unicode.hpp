#pragma once

#include <string>
#include <string_view>

namespace pvoice::unicode {

/// Canonical composition (NFC). Invalid UTF-8 sequences become U+FFFD.
std::string nfc(std::string_view utf8);

}  // namespace pvoice::unicode
