#include "pvoice/network.hpp"

#include <cmath>

namespace pvoice {

namespace {

void fill_uniform(Eigen::Ref<Eigen::MatrixXd> m, Xoshiro256& rng, double scale) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = rng.uniform(-scale, scale);
}

Eigen::VectorXd softmax(const Eigen::VectorXd& x) {
  Eigen::VectorXd e = (x.array() - x.maxCoeff()).exp();
  return e / e.sum();
}

// Activations kept for the backward pass.
struct Trace {
  std::vector<Eigen::MatrixXd> inputs;   // H(l-1), d x n, one per layer plus the final H(L)
  std::vector<Eigen::MatrixXd> windows;  // X_l, (2w+1)d x n
  std::vector<Eigen::MatrixXd> activations;  // tanh(Z_l)
  Eigen::VectorXd attention;
  Eigen::VectorXd pooled;
};

Eigen::MatrixXd gather_windows(const Eigen::MatrixXd& h, std::size_t window) {
  const auto d = h.rows();
  const auto n = h.cols();
  const auto span = static_cast<Eigen::Index>(2 * window + 1);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(span * d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index o = 0; o < span; ++o) {
      const auto j = i + o - static_cast<Eigen::Index>(window);
      if (j >= 0 && j < n) x.block(o * d, i, d, 1) = h.col(j);
    }
  }
  return x;
}

void forward(const Parameters& p, std::span<const std::size_t> ids, Trace& t) {
  const auto d = static_cast<Eigen::Index>(p.width());
  const auto n = static_cast<Eigen::Index>(ids.size());
  Eigen::MatrixXd h(d, n);
  for (Eigen::Index i = 0; i < n; ++i) h.col(i) = p.embeddings.col(static_cast<Eigen::Index>(ids[i]));

  for (const auto& layer : p.layers) {
    auto x = gather_windows(h, p.window);
    Eigen::MatrixXd a = ((layer.weight * x).colwise() + layer.bias).array().tanh().matrix();
    t.inputs.push_back(h);
    h += a;
    t.windows.push_back(std::move(x));
    t.activations.push_back(std::move(a));
  }

  if (p.pooling == Pooling::Attention) t.attention = softmax(h.transpose() * p.query);
  else t.attention = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  t.pooled = h * t.attention;
  t.inputs.push_back(std::move(h));
}

}  // namespace

Parameters Parameters::random(const NetworkShape& shape, Xoshiro256& rng, double scale) {
  const auto d = static_cast<Eigen::Index>(shape.width);
  const auto span = static_cast<Eigen::Index>(2 * shape.window + 1);
  Parameters p;
  p.window = shape.window;
  p.pooling = shape.pooling;
  p.embeddings.resize(d, static_cast<Eigen::Index>(shape.vocab_size));
  fill_uniform(p.embeddings, rng, scale);
  for (std::size_t l = 0; l < shape.depth; ++l) {
    ConvLayer layer{Eigen::MatrixXd(d, span * d), Eigen::VectorXd(d)};
    fill_uniform(layer.weight, rng, scale);
    fill_uniform(layer.bias, rng, scale);
    p.layers.push_back(std::move(layer));
  }
  p.query.resize(d);
  fill_uniform(p.query, rng, scale);
  p.head_weight.resize(kNumLabels, d);
  fill_uniform(p.head_weight, rng, scale);
  p.head_bias.resize(kNumLabels);
  fill_uniform(p.head_bias, rng, scale);
  return p;
}

bool Parameters::all_finite() const {
  if (!embeddings.allFinite() || !query.allFinite() || !head_weight.allFinite() || !head_bias.allFinite()) {
    return false;
  }
  for (const auto& l : layers)
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  return true;
}

void Parameters::add_scaled(double alpha, const Gradients& g) {
  for (const auto& [column, grad] : g.embedding_columns)
    embeddings.col(static_cast<Eigen::Index>(column)) += alpha * grad;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].weight += alpha * g.layers[l].weight;
    layers[l].bias += alpha * g.layers[l].bias;
  }
  query += alpha * g.query;
  head_weight += alpha * g.head_weight;
  head_bias += alpha * g.head_bias;
}

Gradients::Gradients(const Parameters& like) {
  for (const auto& l : like.layers) {
    layers.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()), Eigen::VectorXd::Zero(l.bias.size())});
  }
  query = Eigen::VectorXd::Zero(like.query.size());
  head_weight = Eigen::MatrixXd::Zero(like.head_weight.rows(), like.head_weight.cols());
  head_bias = Eigen::VectorXd::Zero(like.head_bias.size());
}

void Gradients::set_zero() {
  embedding_columns.clear();
  for (auto& l : layers) {
    l.weight.setZero();
    l.bias.setZero();
  }
  query.setZero();
  head_weight.setZero();
  head_bias.setZero();
}

Encoding encode_ids(const Parameters& params, std::span<const std::size_t> ids) {
  if (ids.empty()) return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params.width())), {}, true};
  Trace t;
  forward(params, ids, t);
  return {std::move(t.pooled), std::move(t.attention), false};
}

Eigen::Vector2d class_probabilities(const Parameters& params, const Eigen::VectorXd& text_vector) {
  Eigen::VectorXd logits = params.head_weight * text_vector + params.head_bias;
  return softmax(logits);
}

double loss_and_gradient(const Parameters& params, std::span<const std::size_t> ids, Label gold, double scale,
                         Gradients& grads) {
  const auto d = static_cast<Eigen::Index>(params.width());
  Trace t;
  Eigen::VectorXd pooled = Eigen::VectorXd::Zero(d);
  if (!ids.empty()) {
    forward(params, ids, t);
    pooled = t.pooled;
  }

  const Eigen::Vector2d probs = class_probabilities(params, pooled);
  const auto g = static_cast<Eigen::Index>(index_of(gold));
  const double loss = -std::log(probs(g));

  Eigen::Vector2d dlogits = probs;
  dlogits(g) -= 1.0;
  dlogits *= scale;
  grads.head_weight += dlogits * pooled.transpose();
  grads.head_bias += dlogits;
  if (ids.empty()) return loss;

  const Eigen::VectorXd dpooled = params.head_weight.transpose() * dlogits;
  const Eigen::MatrixXd& top = t.inputs.back();

  // v = H a  =>  dH = dv a^T (+ q ds^T under attention).
  Eigen::MatrixXd dh = dpooled * t.attention.transpose();
  if (params.pooling == Pooling::Attention) {
    const Eigen::VectorXd hv = top.transpose() * dpooled;              // h_i . dv
    const Eigen::VectorXd ds = t.attention.array() * (hv.array() - t.pooled.dot(dpooled));
    grads.query += top * ds;
    dh += params.query * ds.transpose();
  }

  const auto n = static_cast<Eigen::Index>(ids.size());
  const auto w = static_cast<Eigen::Index>(params.window);
  for (auto l = static_cast<std::ptrdiff_t>(params.layers.size()) - 1; l >= 0; --l) {
    const auto& layer = params.layers[static_cast<std::size_t>(l)];
    const auto& a = t.activations[static_cast<std::size_t>(l)];
    const auto& x = t.windows[static_cast<std::size_t>(l)];
    const Eigen::MatrixXd dz = (dh.array() * (1.0 - a.array().square())).matrix();
    grads.layers[static_cast<std::size_t>(l)].weight += dz * x.transpose();
    grads.layers[static_cast<std::size_t>(l)].bias += dz.rowwise().sum();
    const Eigen::MatrixXd dx = layer.weight.transpose() * dz;
    // Residual path keeps dh; scatter the window gradient back to positions.
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index o = 0; o < 2 * w + 1; ++o) {
        const auto j = i + o - w;
        if (j >= 0 && j < n) dh.col(j) += dx.block(o * d, i, d, 1);
      }
    }
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    auto [it, inserted] = grads.embedding_columns.try_emplace(ids[static_cast<std::size_t>(i)]);
    if (inserted) it->second = Eigen::VectorXd::Zero(d);
    it->second += dh.col(i);
  }
  return loss;
}

}  // namespace pvoice
