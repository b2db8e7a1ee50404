#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace pvoice {

struct TokenizerOptions {
  std::size_t min_token_length = 1;  // in code points, after stripping
  bool keep_trailing_plus = false;   // "HER2+" stays "her2+"
};

/// Splits on Unicode whitespace, strips leading and trailing
/// non-alphanumeric code points, lowercases, and drops tokens shorter than
/// `min_token_length`. Characters inside a token (apostrophes, hyphens) are
/// kept; a typographic apostrophe (U+2019) is folded to '\''.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {});

class StopWords {
 public:
  /// The list shipped in data/stopwords_en.txt.
  static StopWords english();
  /// One word per line, '#' starts a comment. Throws IoError when unreadable.
  static StopWords from_file(const std::filesystem::path& path);
  static StopWords parse(std::string_view contents);

  /// Case-insensitive for ASCII; `word` is compared after lowercasing.
  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Porter (1980) suffix stripping, applied to a lowercase word.
std::string porter_stem(std::string_view word);

struct TermSequence {
  std::vector<std::string> terms;

  bool empty() const noexcept { return terms.empty(); }
  std::size_t size() const noexcept { return terms.size(); }
  bool operator==(const TermSequence&) const = default;
};

struct PrepConfig {
  std::optional<std::filesystem::path> stopword_path;  // default list when empty
  bool stem = true;
  std::size_t min_token_length = 1;
  bool keep_trailing_plus = false;

  void validate() const;  // min_token_length >= 1
  TokenizerOptions tokenizer_options() const { return {min_token_length, keep_trailing_plus}; }
};

/// Removes stop words, then stems each survivor once. A stem that is empty
/// or itself a stop word is dropped as well, so no output term is ever a
/// stop word.
TermSequence normalize(const std::vector<std::string>& tokens, const StopWords& stop_words, bool stem);
TermSequence normalize(const std::vector<std::string>& tokens, const PrepConfig& config);

/// tokenize + normalize with a stop list loaded once.
class Preprocessor {
 public:
  explicit Preprocessor(PrepConfig config = {});
  TermSequence operator()(std::string_view text) const;
  const PrepConfig& config() const noexcept { return config_; }

 private:
  PrepConfig config_;
  StopWords stop_words_;
};

}  // namespace pvoice
