#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pvoice {

/// Post type assigned by annotators. Ordered PatientVoice < NotRelevant; the
/// underlying value doubles as the row/column index in 2x2 tables.
enum class Label : std::uint8_t { PatientVoice = 0, NotRelevant = 1 };

inline constexpr std::array<Label, 2> kLabels{Label::PatientVoice, Label::NotRelevant};
inline constexpr std::size_t kNumLabels = kLabels.size();

constexpr std::size_t index_of(Label l) noexcept { return static_cast<std::size_t>(l); }

/// "patient_voice" / "not_relevant".
std::string_view to_string(Label label) noexcept;
std::optional<Label> parse_label(std::string_view text) noexcept;

/// Platform the post was collected from. `Combined` only appears in the keys
/// of merged datasets.
struct Source {
  enum class Kind : std::uint8_t { Reddit, SocialGist, Other, Combined };
  Kind kind = Kind::Other;
  std::string name;  // only meaningful for Other

  static Source reddit() { return {Kind::Reddit, {}}; }
  static Source socialgist() { return {Kind::SocialGist, {}}; }
  static Source combined() { return {Kind::Combined, {}}; }
  static Source other(std::string name) { return {Kind::Other, std::move(name)}; }
  static Source parse(std::string_view text);

  std::string to_string() const;
  auto operator<=>(const Source&) const = default;
};

/// Therapeutic domain of the post.
struct Domain {
  enum class Kind : std::uint8_t { Cardiovascular, Oncology, Immunology, Neurology, Other, Combined };
  Kind kind = Kind::Other;
  std::string name;

  static Domain cardiovascular() { return {Kind::Cardiovascular, {}}; }
  static Domain oncology() { return {Kind::Oncology, {}}; }
  static Domain immunology() { return {Kind::Immunology, {}}; }
  static Domain neurology() { return {Kind::Neurology, {}}; }
  static Domain combined() { return {Kind::Combined, {}}; }
  static Domain other(std::string name) { return {Kind::Other, std::move(name)}; }
  static Domain parse(std::string_view text);

  std::string to_string() const;
  auto operator<=>(const Domain&) const = default;
};

/// Identity of a dataset: (source, domain). Ordering is by source, then domain.
struct DatasetKey {
  Source source;
  Domain domain;

  static DatasetKey all() { return {Source::combined(), Domain::combined()}; }
  bool is_all() const { return source.kind == Source::Kind::Combined && domain.kind == Domain::Kind::Combined; }
  bool is_specific() const {
    return source.kind != Source::Kind::Combined && domain.kind != Domain::Kind::Combined;
  }

  /// "reddit/oncology", "combined/oncology", "reddit/combined", "combined/combined".
  std::string to_string() const;
  /// Inverse of to_string(); throws ConfigError on a missing '/'.
  static DatasetKey parse(std::string_view text);
  /// Filesystem-friendly form: "reddit__oncology".
  std::string file_stem() const;

  auto operator<=>(const DatasetKey&) const = default;
};

struct Post {
  std::string id;
  Source source;
  Domain domain;
  std::string text;
  std::optional<std::int64_t> created_at;  // seconds since epoch

  DatasetKey key() const { return {source, domain}; }
  bool operator==(const Post&) const = default;
};

struct LabeledPost {
  Post post;
  Label label = Label::PatientVoice;
  bool operator==(const LabeledPost&) const = default;
};

struct SplitBundle {
  DatasetKey key;
  std::vector<LabeledPost> train;
  std::vector<LabeledPost> validation;
  std::vector<LabeledPost> test;
};

/// Checks that partitions are pairwise disjoint by post id and that train is
/// non-empty. Returns one message per violation, empty when the bundle is valid.
std::vector<std::string> validate_bundle(const SplitBundle& bundle);

/// Per-label counts, indexed by index_of(Label).
std::array<std::size_t, kNumLabels> label_counts(const std::vector<LabeledPost>& posts);

}  // namespace pvoice
