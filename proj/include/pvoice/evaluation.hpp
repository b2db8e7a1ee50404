#pragma once

#include <span>
#include <string>

#include "pvoice/classifier.hpp"
#include "pvoice/corpus_model.hpp"
#include "pvoice/metrics.hpp"

namespace pvoice {

/// Which P/R/F1 triple a report shows per classifier.
enum class HeadlineMetric { PatientVoice, Macro, Weighted };

std::string_view to_string(HeadlineMetric m) noexcept;
HeadlineMetric parse_headline(std::string_view text);

struct EvalResult {
  DatasetKey classifier_key;
  DatasetKey test_key;
  std::string mode;  // embeddings tag, e.g. "random" / "pretrained"
  ClassificationMetrics metrics;  // rows gold, columns predicted

  Averages headline(HeadlineMetric which) const;
};

/// Scores `model` on `test`. Throws PreconditionError on an empty test set.
EvalResult evaluate(const ClassifierModel& model, std::span<const LabeledPost> test, const DatasetKey& test_key);

/// Gold-vs-predicted table, for callers that need the raw counts.
ConfusionTable prediction_table(const ClassifierModel& model, std::span<const LabeledPost> test);

}  // namespace pvoice
