#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pvoice/agreement.hpp"
#include "pvoice/corpus_model.hpp"
#include "pvoice/fraction.hpp"

namespace pvoice {

/// Generator settings for a labeled multi-dataset corpus built from
/// pseudo-words. Each token is drawn from one of six pools: general (shared
/// by all datasets), domain, source, dataset-specific, or one of the two
/// label-signal pools (shared by all datasets). Within a pool words follow a
/// Zipf-like distribution.
struct SyntheticSpec {
  std::uint64_t seed = 1;
  std::vector<DatasetKey> datasets;  // empty means 4 domains x 2 sources
  std::size_t posts_per_dataset = 60;  // train + validation pool
  std::size_t test_per_dataset = 30;
  double patient_voice_fraction = 0.5;
  std::size_t min_length = 10;
  std::size_t max_length = 24;

  // Token source shares; the general pool takes the remainder.
  double domain_share = 0.30;
  double source_share = 0.05;
  double specific_share = 0.05;
  double signal_share = 0.20;
  double label_noise = 0.25;  // chance a signal token comes from the other label's pool

  std::size_t general_pool = 120;
  std::size_t domain_pool = 40;
  std::size_t source_pool = 40;
  std::size_t specific_pool = 30;
  std::size_t signal_pool = 20;

  void validate() const;
};

/// The 8 keys used throughout the experiments: every domain under every source.
std::vector<DatasetKey> standard_dataset_keys();

struct SyntheticDataset {
  DatasetKey key;
  std::vector<LabeledPost> pool;  // to be split into train and validation
  std::vector<LabeledPost> test;
};

struct SyntheticCorpus {
  std::vector<SyntheticDataset> datasets;
  std::vector<std::string> patient_voice_terms;
  std::vector<std::string> not_relevant_terms;
  std::vector<std::string> lexicon;  // every pool word, sorted
};

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

/// Stratified split of every pool; tests are carried over unchanged.
std::vector<SplitBundle> synthetic_bundles(const SyntheticCorpus& corpus, Fraction train_fraction, std::uint64_t seed);

/// Text embeddings ("count width" header, then "word v1 .. vw") covering the
/// lexicon. Signal words of each label lean along a shared direction, so the
/// table carries prior knowledge about the label.
std::string synthetic_embeddings(const SyntheticCorpus& corpus, std::size_t width, std::uint64_t seed);

/// Every annotator labels every post, copying gold with probability
/// `agreement` and drawing a uniform label otherwise.
std::vector<AnnotationRecord> synthetic_annotations(std::span<const LabeledPost> posts, std::size_t annotators,
                                                    double agreement, std::uint64_t seed);

/// `n` posts (half per label) whose words come from two disjoint
/// vocabularies, one per label.
std::vector<LabeledPost> separable_toy_corpus(std::size_t n = 40, std::uint64_t seed = 7);

}  // namespace pvoice
