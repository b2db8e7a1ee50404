#include "pvoice/vocabulary.hpp"

#include <algorithm>
#include <map>

#include "pvoice/errors.hpp"
#include "pvoice/textprep.hpp"

namespace pvoice {

Vocabulary::Vocabulary() {
  terms_ = {std::string(kUnknownTerm), std::string(kPaddingTerm)};
  index_.emplace(terms_[0], kUnknown);
  index_.emplace(terms_[1], kPadding);
}

Vocabulary Vocabulary::build(std::span<const LabeledPost> train, std::size_t min_frequency) {
  if (train.empty()) throw PreconditionError("cannot build a vocabulary from an empty train set");
  std::map<std::string, std::size_t> freq;
  for (const auto& p : train)
    for (auto& t : classifier_tokens(p.post.text)) ++freq[std::move(t)];

  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [term, n] : freq)
    if (n >= min_frequency && term != kUnknownTerm && term != kPaddingTerm) ranked.emplace_back(term, n);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<std::string> terms;
  terms.reserve(ranked.size());
  for (auto& [term, _] : ranked) terms.push_back(std::move(term));
  return from_terms(std::move(terms), min_frequency);
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> corpus_terms, std::size_t min_frequency) {
  Vocabulary v;
  v.min_frequency_ = min_frequency;
  for (auto& t : corpus_terms) {
    if (!v.index_.emplace(t, v.terms_.size()).second) {
      throw ModelFormatError("duplicate vocabulary term '" + t + "'");
    }
    v.terms_.push_back(std::move(t));
  }
  return v;
}

std::optional<std::size_t> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(index_or_unknown(t));
  return ids;
}

std::vector<std::string> classifier_tokens(std::string_view text) { return tokenize(text); }

}  // namespace pvoice
