#pragma once

#include <array>
#include <cstdint>

#include "pvoice/corpus_model.hpp"

namespace pvoice {

/// 2x2 contingency table. Rows are the reference side (gold labels, or the
/// reference annotator), columns the compared side (predictions, or the
/// second annotator). Index order follows Label.
struct ConfusionTable {
  std::array<std::array<std::int64_t, kNumLabels>, kNumLabels> counts{};

  std::int64_t& at(Label reference, Label compared) { return counts[index_of(reference)][index_of(compared)]; }
  std::int64_t at(Label reference, Label compared) const {
    return counts[index_of(reference)][index_of(compared)];
  }
  std::int64_t total() const;
  std::int64_t row_total(Label reference) const;
  std::int64_t column_total(Label compared) const;
  std::int64_t diagonal() const;
  ConfusionTable transposed() const;

  bool operator==(const ConfusionTable&) const = default;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the ratio was 0/0 and reported as 0.
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f1_degenerate = false;
  std::int64_t support = 0;  // reference row total
};

struct Averages {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassificationMetrics {
  std::array<ClassScores, kNumLabels> per_class{};
  Averages weighted;  // support-weighted over reference rows
  Averages macro;     // unweighted mean over classes
  std::int64_t n_items = 0;

  const ClassScores& operator[](Label l) const { return per_class[index_of(l)]; }
  bool any_degenerate() const;
};

/// Per-class precision = diagonal / column total, recall = diagonal / row total,
/// F1 = harmonic mean. 0/0 is reported as 0 with the matching degeneracy flag.
ClassificationMetrics compute_metrics(const ConfusionTable& table);

/// Cohen's kappa (p_o - p_e) / (1 - p_e). When p_e == 1 both sides used a
/// single identical label throughout; returns 1 if p_o == 1, otherwise 0.
/// Requires total() > 0 (throws PreconditionError).
double cohens_kappa(const ConfusionTable& table);

}  // namespace pvoice
