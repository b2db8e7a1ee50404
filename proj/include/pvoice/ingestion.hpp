#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "pvoice/agreement.hpp"
#include "pvoice/corpus_model.hpp"
#include "pvoice/fraction.hpp"

namespace pvoice {

enum class FileFormat { JsonLines, Csv };

/// ".csv" (any case) maps to Csv, everything else to JsonLines.
FileFormat format_from_path(const std::filesystem::path& path);

struct IngestConfig {
  std::vector<std::filesystem::path> input_paths;
  FileFormat format = FileFormat::JsonLines;
  std::uint64_t seed = 0;
  Fraction train_fraction{4, 5};

  /// Throws ConfigError unless 0 < train_fraction < 1 and there is an input.
  void validate() const;
};

// Post records carry id, source, domain and text (all required strings) plus
// an optional integer created_at. Extra fields are ignored, except "label",
// which load_labeled_posts requires and load_posts skips.
std::vector<Post> load_posts(const std::filesystem::path& path, FileFormat format);
std::vector<LabeledPost> load_labeled_posts(const std::filesystem::path& path, FileFormat format);

/// JSON-lines, one object per post; labels are written as "label".
std::string to_jsonl(std::span<const LabeledPost> posts);
std::string to_jsonl(std::span<const Post> posts);

/// Keeps the first post of every group sharing an id or an NFC-normalized
/// text body with an earlier kept post. Relative order is preserved.
std::vector<Post> deduplicate(std::span<const Post> posts);
std::vector<LabeledPost> deduplicate(std::span<const LabeledPost> posts);

struct SplitResult {
  std::vector<LabeledPost> train;
  std::vector<LabeledPost> validation;
};

/// Shuffles with Xoshiro256(seed), then sends the first
/// round-half-up(n_c * train_fraction) posts of each class (in shuffled
/// order) to train and the rest to validation. Both partitions keep the
/// shuffled order. Throws PreconditionError on an empty input or a class
/// with no members.
SplitResult stratified_split(std::span<const LabeledPost> posts, Fraction train_fraction, std::uint64_t seed);

/// Concatenates partitions position by position. Throws PreconditionError
/// if a post id appears in more than one bundle.
SplitBundle combine_bundles(std::span<const SplitBundle> bundles, DatasetKey new_key);

/// Annotation records from JSON lines or CSV (header post_id,annotator_id,label).
/// Labels must be patient_voice or not_relevant; a repeated
/// (post_id, annotator_id) pair is a ParseError.
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);

/// Groups posts by (source, domain), preserving order within each group.
template <typename P>
std::map<DatasetKey, std::vector<P>> group_by_key(std::span<const P> posts);

/// Loads every "<stem>.train.jsonl" in `dir` together with its optional
/// ".validation.jsonl" and ".test.jsonl" siblings. Bundle keys come from the
/// stem ("reddit__oncology"). Result is sorted by key.
std::vector<SplitBundle> load_bundles(const std::filesystem::path& dir);

/// Writes the three partitions of `bundle` as "<stem>.{train,validation,test}.jsonl".
void save_bundle(const std::filesystem::path& dir, const SplitBundle& bundle);

}  // namespace pvoice
