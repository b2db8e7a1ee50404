#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pvoice/classifier.hpp"
#include "pvoice/evaluation.hpp"
#include "pvoice/report.hpp"
#include "pvoice/tfidf_similarity.hpp"

namespace pvoice {

/// A combined dataset: the key it is trained under and the bundles it merges.
struct Grouping {
  DatasetKey key;
  std::vector<DatasetKey> members;

  bool contains(const DatasetKey& k) const;
  bool operator==(const Grouping&) const = default;
};

/// One grouping per domain, one per source, and one over everything, built
/// from the keys of the given bundles.
std::vector<Grouping> standard_groupings(std::span<const SplitBundle> bundles);

/// Turns every merge of a similarity plan into a grouping. A merge sharing a
/// domain becomes (combined, domain), one sharing a source (source, combined),
/// anything else "merge<N>/combined".
std::vector<Grouping> groupings_from_plan(const CombinationPlan& plan);

struct ModelId {
  DatasetKey classifier;
  std::string mode;
  auto operator<=>(const ModelId&) const = default;
};

/// "<source>__<domain>.<mode>.model"
std::string model_file_name(const ModelId& id);

/// Trained models addressed by (training key, embeddings mode). Models are
/// immutable once registered and may be shared across threads.
class ModelRegistry {
 public:
  void add(std::shared_ptr<const ClassifierModel> model);
  const ClassifierModel* find(const ModelId& id) const;
  std::size_t size() const noexcept { return models_.size(); }
  const std::map<ModelId, std::shared_ptr<const ClassifierModel>>& models() const noexcept { return models_; }
  void merge(const ModelRegistry& other);

  /// Registers every "*.model" file in `dir`.
  static ModelRegistry load_directory(const std::filesystem::path& dir);
  void save_directory(const std::filesystem::path& dir) const;

 private:
  std::map<ModelId, std::shared_ptr<const ClassifierModel>> models_;
};

struct ExperimentOptions {
  TrainingConfig training;
  std::vector<EmbeddingsSpec> modes{EmbeddingsSpec::random()};
  std::size_t jobs = 1;  // parallel training jobs; 0 uses the hardware concurrency
};

struct ExperimentRun {
  std::vector<EvalResult> results;  // in job order: bundle (or grouping) major, mode minor
  ModelRegistry models;
};

/// One model per bundle and mode. Bundles need a non-empty train partition.
ModelRegistry train_models(std::span<const SplitBundle> bundles, const ExperimentOptions& options);

/// Each bundle's own model, per mode, scored on the bundle's test partition.
/// Throws ConfigError naming a missing (bundle, mode) model.
std::vector<EvalResult> evaluate_models(std::span<const SplitBundle> bundles, const ModelRegistry& registry,
                                        std::span<const std::string> modes, std::size_t jobs = 1);

/// combine_bundles for every grouping, in grouping order. Throws ConfigError
/// for unknown members, empty groupings and repeated grouping keys.
std::vector<SplitBundle> combined_bundles(std::span<const SplitBundle> bundles, std::span<const Grouping> groupings);

/// One model per bundle and mode, evaluated on the bundle's own test set.
ExperimentRun experiment_specific(std::span<const SplitBundle> bundles, const ExperimentOptions& options);

/// One model per grouping and mode, trained and evaluated on the combined bundle.
ExperimentRun experiment_combined(std::span<const SplitBundle> bundles, std::span<const Grouping> groupings,
                                  const ExperimentOptions& options);

/// Evaluates, on every specific test set, the bundle's own model and every
/// grouping model containing it. Throws ConfigError naming the first missing
/// (test, classifier, mode) cell.
std::vector<EvalResult> experiment_cross(std::span<const SplitBundle> bundles, std::span<const Grouping> groupings,
                                         const ModelRegistry& registry, std::span<const std::string> modes,
                                         std::size_t jobs = 1);

/// Runs fn(0..n-1) on up to `jobs` threads. The first exception (by index) is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Plain "key = value" lines; '#' starts a comment line, blank lines are
/// skipped. Throws ParseError on a line without '='.
std::vector<KeyValue> parse_key_values(std::string_view text);

/// Applies a training-related key (epochs, learning_rate, batch_size,
/// patience, seed, depth, width, window, min_frequency, pooling). Returns
/// false for keys it does not know; throws ConfigError on bad values.
bool apply_training_setting(TrainingConfig& config, std::string_view key, std::string_view value);

struct ExperimentPlan {
  std::filesystem::path data_dir;
  std::vector<DatasetKey> bundles;  // empty selects every bundle found
  bool standard_grouping = true;
  std::vector<Grouping> groupings;  // explicit, added after the standard grouping
  std::vector<std::string> modes{"random"};
  std::filesystem::path embeddings;
  TrainingConfig training;
  HeadlineMetric headline = HeadlineMetric::PatientVoice;
  std::size_t jobs = 1;

  std::vector<EmbeddingsSpec> embeddings_specs() const;
  /// Bundles filtered to the selection, and the full grouping list. Throws
  /// ConfigError when a selected bundle or grouping member is missing.
  std::vector<SplitBundle> select(std::vector<SplitBundle> available) const;
  std::vector<Grouping> resolve_groupings(std::span<const SplitBundle> selected) const;
};

/// Relative paths resolve against `base_dir`. Unknown keys are ConfigErrors.
ExperimentPlan parse_plan(std::string_view text, const std::filesystem::path& base_dir);
ExperimentPlan load_plan(const std::filesystem::path& path);

}  // namespace pvoice
