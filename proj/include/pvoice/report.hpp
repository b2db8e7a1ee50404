#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvoice/evaluation.hpp"

namespace pvoice {

/// Which rows compete for the "best" marker.
enum class MarkScope {
  PerTest,         // all classifiers and modes evaluated on the same test set
  PerTestPerMode,  // same test set and same embeddings mode
};

struct ComparisonRow {
  EvalResult result;
  Averages scores;                   // the headline triple
  std::array<bool, 3> best{};        // precision, recall, f1
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // ordered by (test_key, classifier_key, mode)
  HeadlineMetric headline = HeadlineMetric::PatientVoice;
  MarkScope scope = MarkScope::PerTestPerMode;
};

/// Sorts the results and marks, for every scope group and metric, all rows
/// holding the maximum value.
ComparisonTable make_table(std::span<const EvalResult> results, HeadlineMetric headline, MarkScope scope);

enum class ReportFormat { Csv, Markdown };

ReportFormat parse_report_format(std::string_view text);
std::string_view extension(ReportFormat f) noexcept;

/// CSV: one row per result, best cells suffixed with '*'. Markdown: one
/// block per test set, best cells in bold. Throws PreconditionError when
/// the table is empty.
std::string render_report(const ComparisonTable& table, ReportFormat format, std::string_view title = {});

}  // namespace pvoice
