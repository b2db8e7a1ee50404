#include "pvoice/textprep.hpp"

#include <algorithm>
#include <cctype>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "pvoice/errors.hpp"
#include "pvoice/file_util.hpp"

namespace pvoice {

namespace detail {
extern const std::string_view kDefaultStopWords;
}

namespace {

constexpr UChar32 kRightSingleQuote = 0x2019;

std::vector<UChar32> decode(std::string_view text) {
  std::vector<UChar32> cps;
  cps.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    cps.push_back(c < 0 ? 0xFFFD : c);
  }
  return cps;
}

void append_utf8(std::string& out, UChar32 c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, c, error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void emit_token(std::vector<UChar32>::const_iterator begin, std::vector<UChar32>::const_iterator end,
                const TokenizerOptions& options, std::vector<std::string>& out) {
  while (begin != end && !u_isalnum(*begin)) ++begin;
  auto alnum_end = end;
  while (alnum_end != begin && !u_isalnum(*(alnum_end - 1))) --alnum_end;
  if (begin == alnum_end) return;

  auto stop = alnum_end;
  if (options.keep_trailing_plus) {
    while (stop != end && *stop == '+') ++stop;
  }
  if (static_cast<std::size_t>(stop - begin) < options.min_token_length) return;

  std::string token;
  for (auto it = begin; it != stop; ++it) {
    const UChar32 c = *it == kRightSingleQuote ? UChar32{'\''} : *it;
    append_utf8(token, u_tolower(c));
  }
  out.push_back(std::move(token));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options) {
  const auto cps = decode(text);
  std::vector<std::string> tokens;
  auto start = cps.cbegin();
  for (auto it = cps.cbegin(); it != cps.cend(); ++it) {
    if (u_isUWhiteSpace(*it)) {
      emit_token(start, it, options, tokens);
      start = it + 1;
    }
  }
  emit_token(start, cps.cend(), options, tokens);
  return tokens;
}

StopWords StopWords::parse(std::string_view contents) {
  StopWords sw;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    auto eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    auto line = contents.substr(pos, eol - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (!line.empty()) sw.words_.insert(ascii_lower(line));
    pos = eol + 1;
  }
  return sw;
}

StopWords StopWords::english() {
  static const StopWords list = parse(detail::kDefaultStopWords);
  return list;
}

StopWords StopWords::from_file(const std::filesystem::path& path) { return parse(read_file(path)); }

bool StopWords::contains(std::string_view word) const { return words_.contains(ascii_lower(word)); }

void PrepConfig::validate() const {
  if (min_token_length < 1) throw ConfigError("min_token_length must be at least 1");
}

TermSequence normalize(const std::vector<std::string>& tokens, const StopWords& stop_words, bool stem) {
  TermSequence seq;
  seq.terms.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (token.empty() || stop_words.contains(token)) continue;
    auto term = stem ? porter_stem(token) : token;
    if (term.empty() || (stem && stop_words.contains(term))) continue;
    seq.terms.push_back(std::move(term));
  }
  return seq;
}

TermSequence normalize(const std::vector<std::string>& tokens, const PrepConfig& config) {
  config.validate();
  const auto stop_words = config.stopword_path ? StopWords::from_file(*config.stopword_path) : StopWords::english();
  return normalize(tokens, stop_words, config.stem);
}

Preprocessor::Preprocessor(PrepConfig config)
    : config_(std::move(config)),
      stop_words_(config_.stopword_path ? StopWords::from_file(*config_.stopword_path) : StopWords::english()) {
  config_.validate();
}

TermSequence Preprocessor::operator()(std::string_view text) const {
  return normalize(tokenize(text, config_.tokenizer_options()), stop_words_, config_.stem);
}

}  // namespace pvoice
