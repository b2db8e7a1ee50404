#pragma once

// Central finite differences against the analytic gradient of the summed
// cross-entropy over a handful of documents.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pvoice/network.hpp"

namespace pvoice::test {

struct Document {
  std::vector<std::size_t> ids;
  Label gold;
};

struct GroupError {
  std::string group;
  double max_relative_error = 0.0;
  std::size_t checked = 0;
};

// |a - n| / max(|a|, |n|, 1e-6); the floor keeps entries whose true
// gradient is (numerically) zero from dividing roundoff by roundoff.
inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-6});
}

inline double total_loss(const Parameters& p, const std::vector<Document>& docs) {
  Gradients scratch(p);
  double loss = 0.0;
  for (const auto& d : docs) loss += loss_and_gradient(p, d.ids, d.gold, 1.0, scratch);
  return loss;
}

inline std::vector<GroupError> gradient_check(Parameters params, const std::vector<Document>& docs, double h) {
  Gradients g(params);
  g.set_zero();
  for (const auto& d : docs) loss_and_gradient(params, d.ids, d.gold, 1.0, g);

  std::vector<GroupError> out;
  auto check = [&](const std::string& group, double& value, double analytic) {
    if (out.empty() || out.back().group != group) out.push_back({group, 0.0, 0});
    const double saved = value;
    value = saved + h;
    const double up = total_loss(params, docs);
    value = saved - h;
    const double down = total_loss(params, docs);
    value = saved;
    const double numeric = (up - down) / (2.0 * h);
    auto& e = out.back();
    e.max_relative_error = std::max(e.max_relative_error, relative_error(analytic, numeric));
    ++e.checked;
  };

  for (Eigen::Index c = 0; c < params.embeddings.cols(); ++c) {
    const auto it = g.embedding_columns.find(static_cast<std::size_t>(c));
    for (Eigen::Index r = 0; r < params.embeddings.rows(); ++r) {
      check("embeddings", params.embeddings(r, c), it == g.embedding_columns.end() ? 0.0 : it->second(r));
    }
  }
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto name = "encoder layer " + std::to_string(l + 1);
    auto& layer = params.layers[l];
    for (Eigen::Index i = 0; i < layer.weight.size(); ++i) check(name, layer.weight.data()[i], g.layers[l].weight.data()[i]);
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) check(name, layer.bias(i), g.layers[l].bias(i));
  }
  for (Eigen::Index i = 0; i < params.query.size(); ++i) check("attention query", params.query(i), g.query(i));
  for (Eigen::Index i = 0; i < params.head_weight.size(); ++i)
    check("head", params.head_weight.data()[i], g.head_weight.data()[i]);
  for (Eigen::Index i = 0; i < params.head_bias.size(); ++i) check("head", params.head_bias(i), g.head_bias(i));
  return out;
}

}  // namespace pvoice::test
