#include "pvoice/classifier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "pvoice/errors.hpp"
#include "pvoice/file_util.hpp"
#include "pvoice/metrics.hpp"

namespace pvoice {

namespace {

std::vector<std::vector<std::size_t>> encode_all(const Vocabulary& vocab, std::span<const LabeledPost> posts) {
  std::vector<std::vector<std::size_t>> docs;
  docs.reserve(posts.size());
  for (const auto& p : posts) docs.push_back(vocab.encode(classifier_tokens(p.post.text)));
  return docs;
}

double macro_f1(const Parameters& params, const std::vector<std::vector<std::size_t>>& docs,
                std::span<const LabeledPost> posts) {
  ConfusionTable table;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto enc = encode_ids(params, docs[i]);
    ++table.at(posts[i].label, to_prediction(class_probabilities(params, enc.vector)).label);
  }
  return compute_metrics(table).macro.f1;
}

void overlay_pretrained(const std::filesystem::path& path, const Vocabulary& vocab, EmbeddingTable& table) {
  auto in = open_for_reading(path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("empty embedding file", 1);
  std::istringstream header(line);
  std::size_t count = 0, width = 0;
  if (!(header >> count >> width)) throw ParseError("expected 'count width' header", 1);
  if (width != table.width()) {
    throw ConfigError("embedding file width " + std::to_string(width) + " does not match configured width " +
                      std::to_string(table.width()));
  }

  std::size_t rows = 0;
  std::string term;
  std::vector<double> values(width);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!(fields >> term)) throw ParseError("missing term", line_no);
    for (auto& v : values) {
      std::string tok;
      if (!(fields >> tok)) throw ParseError("expected " + std::to_string(width) + " values", line_no);
      try {
        std::size_t used = 0;
        v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("not a finite number: '" + tok + "'", line_no);
      }
    }
    if (std::string extra; fields >> extra) throw ParseError("more than " + std::to_string(width) + " values", line_no);
    ++rows;
    if (auto idx = vocab.find(term)) {
      for (std::size_t k = 0; k < width; ++k)
        table.vectors(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(*idx)) = values[k];
      ++table.loaded_rows;
    }
  }
  if (rows != count) {
    throw ParseError("header announces " + std::to_string(count) + " vectors, file has " + std::to_string(rows), 1);
  }
}

NetworkShape shape_of(const Vocabulary& vocab, const TrainingConfig& config) {
  return {vocab.size(), config.embedding_width, config.encoder_depth, config.window_size, config.pooling};
}

}  // namespace

void TrainingConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) throw ConfigError("learning rate must be finite and >= 0");
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (embedding_width < 2) throw ConfigError("embedding width must be at least 2");
  if (min_frequency < 1) throw ConfigError("min frequency must be at least 1");
}

EmbeddingTable random_embeddings(const Vocabulary& vocabulary, std::size_t width, Xoshiro256& rng) {
  EmbeddingTable table;
  table.vectors.resize(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(vocabulary.size()));
  for (Eigen::Index c = 0; c < table.vectors.cols(); ++c)
    for (Eigen::Index r = 0; r < table.vectors.rows(); ++r) table.vectors(r, c) = rng.uniform(-kInitScale, kInitScale);
  return table;
}

EmbeddingTable load_pretrained_embeddings(const std::filesystem::path& path, const Vocabulary& vocabulary,
                                          std::size_t width, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  auto table = random_embeddings(vocabulary, width, rng);
  table.provenance = EmbeddingsSpec::pretrained(path);
  overlay_pretrained(path, vocabulary, table);
  return table;
}

Parameters initial_parameters(const Vocabulary& vocabulary, const TrainingConfig& config,
                              const EmbeddingsSpec& embeddings) {
  // Embeddings are drawn first so both modes share every other initial value.
  Xoshiro256 rng(config.seed);
  auto table = random_embeddings(vocabulary, config.embedding_width, rng);
  if (embeddings.mode == EmbeddingsMode::Pretrained) overlay_pretrained(embeddings.path, vocabulary, table);

  auto shape = shape_of(vocabulary, config);
  shape.vocab_size = 0;
  auto params = Parameters::random(shape, rng, kInitScale);
  params.embeddings = std::move(table.vectors);
  return params;
}

ClassifierModel::ClassifierModel(Vocabulary vocabulary, Parameters parameters, TrainingConfig config,
                                 EmbeddingsSpec provenance, DatasetKey trained_on)
    : vocabulary_(std::move(vocabulary)),
      parameters_(std::move(parameters)),
      config_(config),
      provenance_(std::move(provenance)),
      trained_on_(std::move(trained_on)) {
  const auto d = static_cast<Eigen::Index>(config_.embedding_width);
  bool ok = parameters_.embeddings.rows() == d &&
            parameters_.embeddings.cols() == static_cast<Eigen::Index>(vocabulary_.size()) &&
            parameters_.layers.size() == config_.encoder_depth && parameters_.window == config_.window_size &&
            parameters_.query.size() == d && parameters_.head_weight.rows() == Eigen::Index{kNumLabels} &&
            parameters_.head_weight.cols() == d && parameters_.head_bias.size() == Eigen::Index{kNumLabels};
  for (const auto& l : parameters_.layers) {
    ok = ok && l.weight.rows() == d && l.weight.cols() == static_cast<Eigen::Index>(2 * config_.window_size + 1) * d &&
         l.bias.size() == d;
  }
  if (!ok) throw ModelFormatError("classifier parameter shapes are inconsistent with the configuration");
}

Encoding ClassifierModel::encode(std::span<const std::string> tokens) const {
  const auto ids = vocabulary_.encode(tokens);
  return encode_ids(parameters_, ids);
}

Prediction ClassifierModel::predict_text(std::string_view text) const {
  const auto tokens = classifier_tokens(text);
  return to_prediction(class_probabilities(parameters_, encode(tokens).vector));
}

Prediction to_prediction(const Eigen::Vector2d& probabilities) {
  Prediction p;
  p.probabilities = {probabilities(0), probabilities(1)};
  p.label = probabilities(0) >= probabilities(1) ? Label::PatientVoice : Label::NotRelevant;
  return p;
}

ClassifierModel train(std::span<const LabeledPost> train_set, std::span<const LabeledPost> validation,
                      const TrainingConfig& config, const EmbeddingsSpec& embeddings, DatasetKey trained_on,
                      const EpochObserver& observer) {
  config.validate();
  if (train_set.empty()) throw PreconditionError("cannot train on an empty train set");

  auto vocab = Vocabulary::build(train_set, config.min_frequency);
  auto params = initial_parameters(vocab, config, embeddings);
  const auto train_docs = encode_all(vocab, train_set);
  const auto validation_docs = encode_all(vocab, validation);

  // Batch order continues from an independent stream of the same seed.
  Xoshiro256 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(train_docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  Gradients grads(params);
  Parameters best = params;
  double best_f1 = -1.0;
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const auto end = std::min(order.size(), start + config.batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      grads.set_zero();
      for (std::size_t k = start; k < end; ++k) {
        const auto i = order[k];
        loss_sum += loss_and_gradient(params, train_docs[i], train_set[i].label, scale, grads);
      }
      params.add_scaled(-config.learning_rate, grads);
    }

    EpochReport report{epoch, loss_sum / static_cast<double>(order.size()), std::nullopt};
    if (!std::isfinite(report.mean_loss) || !params.all_finite()) {
      throw NumericError("training diverged at epoch " + std::to_string(epoch) + " (non-finite loss)", epoch);
    }

    if (!validation.empty()) {
      const double f1 = macro_f1(params, validation_docs, validation);
      report.validation_macro_f1 = f1;
      if (observer) observer(report);
      if (f1 > best_f1) {
        best_f1 = f1;
        best = params;
        stale = 0;
      } else if (++stale >= config.early_stop_patience) {
        break;
      }
    } else if (observer) {
      observer(report);
    }
  }
  if (!validation.empty()) params = std::move(best);

  return ClassifierModel(std::move(vocab), std::move(params), config, embeddings, std::move(trained_on));
}

}  // namespace pvoice
