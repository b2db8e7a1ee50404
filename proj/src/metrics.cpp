#include "pvoice/metrics.hpp"

#include "pvoice/errors.hpp"

namespace pvoice {

std::int64_t ConfusionTable::total() const {
  std::int64_t t = 0;
  for (const auto& row : counts)
    for (auto c : row) t += c;
  return t;
}

std::int64_t ConfusionTable::row_total(Label reference) const {
  std::int64_t t = 0;
  for (auto c : counts[index_of(reference)]) t += c;
  return t;
}

std::int64_t ConfusionTable::column_total(Label compared) const {
  std::int64_t t = 0;
  for (const auto& row : counts) t += row[index_of(compared)];
  return t;
}

std::int64_t ConfusionTable::diagonal() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < kNumLabels; ++i) t += counts[i][i];
  return t;
}

ConfusionTable ConfusionTable::transposed() const {
  ConfusionTable t;
  for (std::size_t i = 0; i < kNumLabels; ++i)
    for (std::size_t j = 0; j < kNumLabels; ++j) t.counts[j][i] = counts[i][j];
  return t;
}

bool ClassificationMetrics::any_degenerate() const {
  for (const auto& c : per_class)
    if (c.precision_degenerate || c.recall_degenerate || c.f1_degenerate) return true;
  return false;
}

ClassificationMetrics compute_metrics(const ConfusionTable& table) {
  ClassificationMetrics m;
  m.n_items = table.total();

  for (Label l : kLabels) {
    auto& s = m.per_class[index_of(l)];
    const auto hit = static_cast<double>(table.at(l, l));
    const auto col = table.column_total(l);
    const auto row = table.row_total(l);
    s.support = row;

    if (col > 0) s.precision = hit / static_cast<double>(col);
    else s.precision_degenerate = true;
    if (row > 0) s.recall = hit / static_cast<double>(row);
    else s.recall_degenerate = true;
    if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    else s.f1_degenerate = true;
  }

  for (const auto& s : m.per_class) {
    m.macro.precision += s.precision / kNumLabels;
    m.macro.recall += s.recall / kNumLabels;
    m.macro.f1 += s.f1 / kNumLabels;
    if (m.n_items > 0) {
      const double w = static_cast<double>(s.support) / static_cast<double>(m.n_items);
      m.weighted.precision += w * s.precision;
      m.weighted.recall += w * s.recall;
      m.weighted.f1 += w * s.f1;
    }
  }
  return m;
}

double cohens_kappa(const ConfusionTable& table) {
  const auto n = table.total();
  if (n <= 0) throw PreconditionError("kappa of an empty table");
  const double nd = static_cast<double>(n);
  const double observed = static_cast<double>(table.diagonal()) / nd;
  double expected = 0.0;
  for (Label l : kLabels) {
    expected += static_cast<double>(table.row_total(l)) * static_cast<double>(table.column_total(l));
  }
  expected /= nd * nd;
  if (expected >= 1.0) return observed >= 1.0 ? 1.0 : 0.0;
  return (observed - expected) / (1.0 - expected);
}

}  // namespace pvoice
