#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pvoice/corpus_model.hpp"
#include "pvoice/random.hpp"

namespace pvoice {

// Text encoder + classification head:
//
//   h0_i   = E[:, id_i]
//   h(l)_i = h(l-1)_i + tanh(W_l [h(l-1)_{i-w}; ...; h(l-1)_{i+w}] + b_l)   (zero outside the text)
//   a      = softmax_i(q . hL_i)          (uniform weights under mean pooling)
//   v      = sum_i a_i hL_i
//   p      = softmax(W_o v + b_o)
//
// The loss is the cross-entropy -log p[gold].

enum class Pooling { Attention, Mean };

struct ConvLayer {
  Eigen::MatrixXd weight;  // d x (2w+1)d
  Eigen::VectorXd bias;    // d
};

struct NetworkShape {
  std::size_t vocab_size = 0;
  std::size_t width = 96;
  std::size_t depth = 2;
  std::size_t window = 1;
  Pooling pooling = Pooling::Attention;
};

struct Gradients;

struct Parameters {
  Eigen::MatrixXd embeddings;  // d x |V|, one column per vocabulary entry
  std::vector<ConvLayer> layers;
  Eigen::VectorXd query;        // d
  Eigen::MatrixXd head_weight;  // 2 x d
  Eigen::VectorXd head_bias;    // 2
  std::size_t window = 1;
  Pooling pooling = Pooling::Attention;

  /// Every entry drawn uniform in [-scale, scale] from `rng`, in the order
  /// embeddings (column by column), layers (weight column-major, then bias),
  /// query, head weight (column-major), head bias.
  static Parameters random(const NetworkShape& shape, Xoshiro256& rng, double scale);

  std::size_t width() const { return static_cast<std::size_t>(embeddings.rows()); }
  std::size_t vocab_size() const { return static_cast<std::size_t>(embeddings.cols()); }
  std::size_t depth() const { return layers.size(); }
  bool all_finite() const;

  /// this += alpha * g
  void add_scaled(double alpha, const Gradients& g);
};

struct Gradients {
  std::map<std::size_t, Eigen::VectorXd> embedding_columns;  // only touched columns
  std::vector<ConvLayer> layers;
  Eigen::VectorXd query;
  Eigen::MatrixXd head_weight;
  Eigen::VectorXd head_bias;

  explicit Gradients(const Parameters& like);
  void set_zero();
};

struct Encoding {
  Eigen::VectorXd vector;     // width d
  Eigen::VectorXd attention;  // one weight per token
  bool degenerate = false;    // empty input: zero vector
};

Encoding encode_ids(const Parameters& params, std::span<const std::size_t> ids);

/// softmax(W_o v + b_o), ordered by Label.
Eigen::Vector2d class_probabilities(const Parameters& params, const Eigen::VectorXd& text_vector);

/// Cross-entropy of one document. Adds `scale` times its gradient into `grads`.
double loss_and_gradient(const Parameters& params, std::span<const std::size_t> ids, Label gold, double scale,
                         Gradients& grads);

}  // namespace pvoice
