#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "pvoice/corpus_model.hpp"
#include "pvoice/network.hpp"
#include "pvoice/vocabulary.hpp"

namespace pvoice {

inline constexpr double kInitScale = 0.1;

struct TrainingConfig {
  std::size_t epochs = 50;
  double learning_rate = 0.05;
  std::size_t batch_size = 16;
  std::size_t early_stop_patience = 5;
  std::uint64_t seed = 0;
  std::size_t encoder_depth = 2;
  std::size_t embedding_width = 96;
  std::size_t window_size = 1;
  std::size_t min_frequency = 1;
  Pooling pooling = Pooling::Attention;

  /// epochs >= 1, learning_rate finite and >= 0, batch_size >= 1, width >= 2.
  void validate() const;
  bool operator==(const TrainingConfig&) const = default;
};

enum class EmbeddingsMode { Random, Pretrained };

/// How the embedding table is initialised: seeded random, or random with
/// rows overwritten from a word2vec-style text file.
struct EmbeddingsSpec {
  EmbeddingsMode mode = EmbeddingsMode::Random;
  std::filesystem::path path;  // Pretrained only

  static EmbeddingsSpec random() { return {}; }
  static EmbeddingsSpec pretrained(std::filesystem::path p) { return {EmbeddingsMode::Pretrained, std::move(p)}; }
  /// "random" or "pretrained"; used as the architecture tag in reports.
  std::string tag() const { return mode == EmbeddingsMode::Random ? "random" : "pretrained"; }
};

struct EmbeddingTable {
  Eigen::MatrixXd vectors;  // d x |V|, column per vocabulary entry
  EmbeddingsSpec provenance;
  std::size_t loaded_rows = 0;  // columns taken from the pretrained file

  std::size_t rows() const { return static_cast<std::size_t>(vectors.cols()); }
  std::size_t width() const { return static_cast<std::size_t>(vectors.rows()); }
};

/// Seeded uniform [-kInitScale, kInitScale] table.
EmbeddingTable random_embeddings(const Vocabulary& vocabulary, std::size_t width, Xoshiro256& rng);

/// Random table (Xoshiro256(seed)) with the rows of every vocabulary term
/// present in `path` replaced by the file's vectors. The file starts with a
/// "count width" line followed by `count` lines of "term v1 ... vd".
/// Throws ParseError on malformed content and ConfigError when the file
/// width differs from `width`.
EmbeddingTable load_pretrained_embeddings(const std::filesystem::path& path, const Vocabulary& vocabulary,
                                          std::size_t width, std::uint64_t seed);

struct Prediction {
  Label label = Label::PatientVoice;
  std::array<double, kNumLabels> probabilities{};

  double probability(Label l) const { return probabilities[index_of(l)]; }
};

/// Trained classifier. Immutable; safe to share between threads for prediction.
class ClassifierModel {
 public:
  ClassifierModel(Vocabulary vocabulary, Parameters parameters, TrainingConfig config, EmbeddingsSpec provenance,
                  DatasetKey trained_on);

  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  const Parameters& parameters() const noexcept { return parameters_; }
  const TrainingConfig& config() const noexcept { return config_; }
  const EmbeddingsSpec& provenance() const noexcept { return provenance_; }
  const DatasetKey& trained_on() const noexcept { return trained_on_; }
  std::uint64_t seed() const noexcept { return config_.seed; }

  Encoding encode(std::span<const std::string> tokens) const;
  Prediction predict(const Post& post) const { return predict_text(post.text); }
  Prediction predict_text(std::string_view text) const;

 private:
  Vocabulary vocabulary_;
  Parameters parameters_;
  TrainingConfig config_;
  EmbeddingsSpec provenance_;
  DatasetKey trained_on_;
};

/// Argmax with ties resolved toward PatientVoice.
Prediction to_prediction(const Eigen::Vector2d& probabilities);

struct EpochReport {
  std::size_t epoch = 0;  // 1-based
  double mean_loss = 0.0;
  std::optional<double> validation_macro_f1;
};

using EpochObserver = std::function<void(const EpochReport&)>;

/// Mini-batch SGD on mean cross-entropy, fixed learning rate. Each epoch the
/// batch order is reshuffled from the seeded generator. With a non-empty
/// validation set the parameters of the epoch with the best validation
/// macro F1 are kept and training stops after `early_stop_patience` epochs
/// without improvement; otherwise the last epoch's parameters are returned.
/// Throws NumericError (with the epoch) if the loss becomes non-finite.
ClassifierModel train(std::span<const LabeledPost> train_set, std::span<const LabeledPost> validation,
                      const TrainingConfig& config, const EmbeddingsSpec& embeddings, DatasetKey trained_on = {},
                      const EpochObserver& observer = {});

/// Parameters exactly as train() initialises them, before any update.
Parameters initial_parameters(const Vocabulary& vocabulary, const TrainingConfig& config,
                              const EmbeddingsSpec& embeddings);

// Model container: "PVMODEL\0" magic, u32 format version, u64 payload size,
// payload, CRC-32 of the payload. All integers little-endian; tensors are
// IEEE-754 doubles.
inline constexpr std::uint32_t kModelFormatVersion = 1;

std::string serialize_model(const ClassifierModel& model);
ClassifierModel deserialize_model(std::string_view bytes);
void save_model(const ClassifierModel& model, const std::filesystem::path& path);
ClassifierModel load_model(const std::filesystem::path& path);
/// CRC-32 of the serialized payload, as 8 lowercase hex digits.
std::string model_checksum(const ClassifierModel& model);

}  // namespace pvoice
