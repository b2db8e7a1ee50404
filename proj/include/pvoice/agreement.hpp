#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvoice/corpus_model.hpp"
#include "pvoice/metrics.hpp"

namespace pvoice {

struct AnnotationRecord {
  std::string post_id;
  std::string annotator_id;
  Label label = Label::PatientVoice;
  bool operator==(const AnnotationRecord&) const = default;
};

/// Agreement between two annotators. `annotator_a` is the reference side of
/// precision/recall (the lexicographically smaller id when produced by
/// score_all_pairs); kappa does not depend on orientation.
struct PairwiseAgreement {
  std::string annotator_a;
  std::string annotator_b;
  ClassificationMetrics metrics;
  double kappa = 0.0;
  std::int64_t n_items = 0;
};

struct AgreementReport {
  std::vector<PairwiseAgreement> pairs;
  Averages mean_weighted;
  Averages mean_macro;
  double mean_kappa = 0.0;
};

/// Table over the posts labelled by both a (rows) and b (columns). Posts seen
/// by only one of them are ignored. Throws PreconditionError("pair not
/// scorable") when the two share no post.
ConfusionTable confusion(std::span<const AnnotationRecord> records, std::string_view a, std::string_view b);

inline ClassificationMetrics pair_metrics(const ConfusionTable& table) { return compute_metrics(table); }

/// Scores every unordered annotator pair that shares at least one post.
std::vector<PairwiseAgreement> score_all_pairs(std::span<const AnnotationRecord> records);

/// Arithmetic means over the given pairs. Throws PreconditionError when empty.
AgreementReport aggregate(std::vector<PairwiseAgreement> pairs);

/// Per-pair rows followed by a "mean" summary row.
void write_agreement_csv(std::ostream& out, const AgreementReport& report);

}  // namespace pvoice
