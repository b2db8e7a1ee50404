#include "pvoice/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

#include "pvoice/csv.hpp"
#include "pvoice/errors.hpp"

namespace pvoice {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::array<double, 3> triple(const Averages& a) { return {a.precision, a.recall, a.f1}; }

std::string group_of(const ComparisonRow& row, MarkScope scope) {
  auto g = row.result.test_key.to_string();
  if (scope == MarkScope::PerTestPerMode) g += "|" + row.result.mode;
  return g;
}

}  // namespace

ComparisonTable make_table(std::span<const EvalResult> results, HeadlineMetric headline, MarkScope scope) {
  ComparisonTable table;
  table.headline = headline;
  table.scope = scope;
  for (const auto& r : results) table.rows.push_back({r, r.headline(headline), {}});
  std::stable_sort(table.rows.begin(), table.rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    return std::tie(a.result.test_key, a.result.classifier_key, a.result.mode) <
           std::tie(b.result.test_key, b.result.classifier_key, b.result.mode);
  });

  std::map<std::string, std::array<double, 3>> best;
  for (const auto& row : table.rows) {
    auto [it, fresh] = best.try_emplace(group_of(row, scope), triple(row.scores));
    if (!fresh) {
      const auto t = triple(row.scores);
      for (std::size_t m = 0; m < 3; ++m) it->second[m] = std::max(it->second[m], t[m]);
    }
  }
  for (auto& row : table.rows) {
    const auto& top = best.at(group_of(row, scope));
    const auto t = triple(row.scores);
    for (std::size_t m = 0; m < 3; ++m) row.best[m] = t[m] == top[m];
  }
  return table;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "markdown" || text == "md") return ReportFormat::Markdown;
  throw ConfigError("report format must be csv or markdown, got '" + std::string(text) + "'");
}

std::string_view extension(ReportFormat f) noexcept { return f == ReportFormat::Csv ? ".csv" : ".md"; }

std::string render_report(const ComparisonTable& table, ReportFormat format, std::string_view title) {
  if (table.rows.empty()) throw PreconditionError("cannot render a report without results");
  std::string out;

  if (format == ReportFormat::Csv) {
    out += "test,classifier,mode,metric,precision,recall,f1\n";
    for (const auto& row : table.rows) {
      std::vector<std::string> cells{row.result.test_key.to_string(), row.result.classifier_key.to_string(),
                                     row.result.mode, std::string(to_string(table.headline))};
      const auto t = triple(row.scores);
      for (std::size_t m = 0; m < 3; ++m) cells.push_back(fixed(t[m]) + (row.best[m] ? "*" : ""));
      out += csv::join_row(cells);
      out += '\n';
    }
    return out;
  }

  if (!title.empty()) {
    out += "# ";
    out += title;
    out += "\n\n";
  }
  out += "Headline metric: " + std::string(to_string(table.headline)) + "\n";
  const DatasetKey* current = nullptr;
  for (const auto& row : table.rows) {
    if (current == nullptr || *current != row.result.test_key) {
      current = &row.result.test_key;
      out += "\n### Test set " + current->to_string() + "\n\n";
      out += "| Classifier | Mode | Precision | Recall | F1 |\n";
      out += "|---|---|---|---|---|\n";
    }
    out += "| " + row.result.classifier_key.to_string() + " | " + row.result.mode + " |";
    const auto t = triple(row.scores);
    for (std::size_t m = 0; m < 3; ++m) {
      const auto v = fixed(t[m]);
      out += row.best[m] ? " **" + v + "** |" : " " + v + " |";
    }
    out += '\n';
  }
  return out;
}

}  // namespace pvoice
