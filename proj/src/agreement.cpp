#include "pvoice/agreement.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include "pvoice/csv.hpp"
#include "pvoice/errors.hpp"

namespace pvoice {

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

ConfusionTable confusion(std::span<const AnnotationRecord> records, std::string_view a, std::string_view b) {
  std::unordered_map<std::string_view, Label> from_b;
  for (const auto& r : records)
    if (r.annotator_id == b) from_b.emplace(r.post_id, r.label);

  ConfusionTable table;
  for (const auto& r : records) {
    if (r.annotator_id != a) continue;
    if (auto it = from_b.find(r.post_id); it != from_b.end()) ++table.at(r.label, it->second);
  }
  if (table.total() == 0) {
    throw PreconditionError("pair not scorable: " + std::string(a) + " and " + std::string(b) +
                            " share no annotated post");
  }
  return table;
}

std::vector<PairwiseAgreement> score_all_pairs(std::span<const AnnotationRecord> records) {
  std::map<std::string, std::set<std::string_view>> posts_by_annotator;
  for (const auto& r : records) posts_by_annotator[r.annotator_id].insert(r.post_id);

  std::vector<PairwiseAgreement> pairs;
  for (auto a = posts_by_annotator.begin(); a != posts_by_annotator.end(); ++a) {
    for (auto b = std::next(a); b != posts_by_annotator.end(); ++b) {
      bool shared = false;
      for (auto id : a->second) {
        if (b->second.contains(id)) {
          shared = true;
          break;
        }
      }
      if (!shared) continue;
      const auto table = confusion(records, a->first, b->first);
      PairwiseAgreement p;
      p.annotator_a = a->first;
      p.annotator_b = b->first;
      p.metrics = pair_metrics(table);
      p.kappa = cohens_kappa(table);
      p.n_items = table.total();
      pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

AgreementReport aggregate(std::vector<PairwiseAgreement> pairs) {
  if (pairs.empty()) throw PreconditionError("no scorable annotator pair");
  AgreementReport report;
  const double n = static_cast<double>(pairs.size());
  for (const auto& p : pairs) {
    report.mean_weighted.precision += p.metrics.weighted.precision / n;
    report.mean_weighted.recall += p.metrics.weighted.recall / n;
    report.mean_weighted.f1 += p.metrics.weighted.f1 / n;
    report.mean_macro.precision += p.metrics.macro.precision / n;
    report.mean_macro.recall += p.metrics.macro.recall / n;
    report.mean_macro.f1 += p.metrics.macro.f1 / n;
    report.mean_kappa += p.kappa / n;
  }
  report.pairs = std::move(pairs);
  return report;
}

void write_agreement_csv(std::ostream& out, const AgreementReport& report) {
  out << "annotator_a,annotator_b,n_items,weighted_precision,weighted_recall,weighted_f1,"
         "macro_precision,macro_recall,macro_f1,kappa\n";
  for (const auto& p : report.pairs) {
    const auto& m = p.metrics;
    out << csv::escape(p.annotator_a) << ',' << csv::escape(p.annotator_b) << ',' << p.n_items << ',' << fixed6(m.weighted.precision)
        << ',' << fixed6(m.weighted.recall) << ',' << fixed6(m.weighted.f1) << ','
        << fixed6(m.macro.precision) << ',' << fixed6(m.macro.recall) << ',' << fixed6(m.macro.f1) << ','
        << fixed6(p.kappa) << '\n';
  }
  out << "mean,mean," << report.pairs.size() << ',' << fixed6(report.mean_weighted.precision) << ','
      << fixed6(report.mean_weighted.recall) << ',' << fixed6(report.mean_weighted.f1) << ','
      << fixed6(report.mean_macro.precision) << ',' << fixed6(report.mean_macro.recall) << ','
      << fixed6(report.mean_macro.f1) << ',' << fixed6(report.mean_kappa) << '\n';
}

}  // namespace pvoice
