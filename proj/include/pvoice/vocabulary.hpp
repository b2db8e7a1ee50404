#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pvoice/corpus_model.hpp"

namespace pvoice {

/// Dense term -> index map. Index 0 is the unknown-word entry and index 1 is
/// reserved for padding; corpus terms follow from index 2.
class Vocabulary {
 public:
  static constexpr std::size_t kUnknown = 0;
  static constexpr std::size_t kPadding = 1;
  static constexpr std::string_view kUnknownTerm = "<unk>";
  static constexpr std::string_view kPaddingTerm = "<pad>";

  Vocabulary();

  /// Every classifier token (see classifier_tokens) with corpus frequency >=
  /// min_frequency, indexed by descending frequency, then ascending term.
  /// Throws PreconditionError on an empty train list.
  static Vocabulary build(std::span<const LabeledPost> train, std::size_t min_frequency);

  /// Rebuilds a vocabulary from its corpus terms in index order (used when
  /// loading a model).
  static Vocabulary from_terms(std::vector<std::string> corpus_terms, std::size_t min_frequency);

  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t min_frequency() const noexcept { return min_frequency_; }
  std::optional<std::size_t> find(std::string_view term) const;
  std::size_t index_or_unknown(std::string_view term) const { return find(term).value_or(kUnknown); }
  const std::string& term(std::size_t index) const { return terms_.at(index); }
  /// Terms from index 2 onwards.
  std::span<const std::string> corpus_terms() const { return std::span(terms_).subspan(2); }

  std::vector<std::size_t> encode(std::span<const std::string> tokens) const;

  bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t min_frequency_ = 1;
};

/// Raw lowercase tokens fed to the classifier: no stop-word removal, no stemming.
std::vector<std::string> classifier_tokens(std::string_view text);

}  // namespace pvoice
