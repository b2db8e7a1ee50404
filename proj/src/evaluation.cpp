#include "pvoice/evaluation.hpp"

#include "pvoice/errors.hpp"

namespace pvoice {

std::string_view to_string(HeadlineMetric m) noexcept {
  switch (m) {
    case HeadlineMetric::PatientVoice: return "patient_voice";
    case HeadlineMetric::Macro: return "macro";
    case HeadlineMetric::Weighted: return "weighted";
  }
  return "patient_voice";
}

HeadlineMetric parse_headline(std::string_view text) {
  if (text == "patient_voice") return HeadlineMetric::PatientVoice;
  if (text == "macro") return HeadlineMetric::Macro;
  if (text == "weighted") return HeadlineMetric::Weighted;
  throw ConfigError("headline metric must be patient_voice, macro or weighted, got '" + std::string(text) + "'");
}

Averages EvalResult::headline(HeadlineMetric which) const {
  switch (which) {
    case HeadlineMetric::Macro: return metrics.macro;
    case HeadlineMetric::Weighted: return metrics.weighted;
    case HeadlineMetric::PatientVoice: break;
  }
  const auto& pv = metrics[Label::PatientVoice];
  return {pv.precision, pv.recall, pv.f1};
}

ConfusionTable prediction_table(const ClassifierModel& model, std::span<const LabeledPost> test) {
  ConfusionTable table;
  for (const auto& p : test) ++table.at(p.label, model.predict(p.post).label);
  return table;
}

EvalResult evaluate(const ClassifierModel& model, std::span<const LabeledPost> test, const DatasetKey& test_key) {
  if (test.empty()) throw PreconditionError("cannot evaluate on an empty test set (" + test_key.to_string() + ")");
  EvalResult r;
  r.classifier_key = model.trained_on();
  r.test_key = test_key;
  r.mode = model.provenance().tag();
  r.metrics = compute_metrics(prediction_table(model, test));
  return r;
}

}  // namespace pvoice
