#include "pvoice/tfidf_similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "pvoice/csv.hpp"
#include "pvoice/errors.hpp"

namespace pvoice {

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

using Counts = std::unordered_map<std::string, std::size_t>;

Counts count_terms(const TermSequence& seq) {
  Counts counts;
  for (const auto& t : seq.terms) ++counts[t];
  return counts;
}

// TF from term counts over a document of `length` terms, IDF from document
// frequencies over `n_docs` documents.
std::map<DatasetKey, TermVector> build_vectors(const std::map<DatasetKey, Counts>& counts,
                                               const std::map<DatasetKey, std::size_t>& lengths,
                                               const Counts& document_frequency, std::size_t n_docs) {
  std::map<DatasetKey, TermVector> vectors;
  for (const auto& [key, c] : counts) {
    TermVector v;
    v.key = key;
    v.dimension = document_frequency.size();
    const double length = static_cast<double>(lengths.at(key));
    for (const auto& [term, n] : c) {
      const double tf = static_cast<double>(n) / length;
      const double idf =
          std::log(static_cast<double>(n_docs) / static_cast<double>(document_frequency.at(term)));
      v.weights.emplace(term, tf * idf);
    }
    vectors.emplace(key, std::move(v));
  }
  return vectors;
}

}  // namespace

double TermVector::weight(std::string_view term) const {
  auto it = weights.find(std::string(term));
  return it == weights.end() ? 0.0 : it->second;
}

double TermVector::norm() const {
  double s = 0.0;
  for (const auto& [_, w] : weights) s += w * w;
  return std::sqrt(s);
}

TermVector TermVector::scaled(double factor) const {
  TermVector v = *this;
  for (auto& [_, w] : v.weights) w *= factor;
  return v;
}

double term_frequency(std::string_view term, const TermSequence& doc) {
  if (doc.empty()) throw PreconditionError("term frequency of an empty document");
  const auto n = std::count(doc.terms.begin(), doc.terms.end(), term);
  return static_cast<double>(n) / static_cast<double>(doc.size());
}

double inverse_document_frequency(std::string_view term, std::span<const TermSequence> corpus) {
  if (corpus.empty()) throw PreconditionError("inverse document frequency over an empty corpus");
  std::size_t df = 0;
  for (const auto& doc : corpus) {
    if (std::find(doc.terms.begin(), doc.terms.end(), term) != doc.terms.end()) ++df;
  }
  if (df == 0) throw PreconditionError("term '" + std::string(term) + "' occurs in no document");
  return std::log(static_cast<double>(corpus.size()) / static_cast<double>(df));
}

std::map<DatasetKey, TermVector> dataset_vectors(const std::map<DatasetKey, TermSequence>& datasets) {
  if (datasets.size() < 2) throw PreconditionError("TF-IDF comparison needs at least two datasets");
  std::map<DatasetKey, Counts> counts;
  std::map<DatasetKey, std::size_t> lengths;
  Counts df;
  for (const auto& [key, seq] : datasets) {
    if (seq.empty()) throw PreconditionError("dataset " + key.to_string() + " is empty after preprocessing");
    auto c = count_terms(seq);
    for (const auto& [term, _] : c) ++df[term];
    counts.emplace(key, std::move(c));
    lengths.emplace(key, seq.size());
  }
  return build_vectors(counts, lengths, df, datasets.size());
}

std::map<DatasetKey, TermVector> dataset_vectors(const std::map<DatasetKey, std::vector<TermSequence>>& posts,
                                                 IdfGranularity granularity) {
  if (posts.size() < 2) throw PreconditionError("TF-IDF comparison needs at least two datasets");
  std::map<DatasetKey, Counts> counts;
  std::map<DatasetKey, std::size_t> lengths;
  Counts df;
  std::size_t n_docs = 0;
  for (const auto& [key, seqs] : posts) {
    Counts c;
    std::size_t length = 0;
    for (const auto& seq : seqs) {
      length += seq.size();
      for (const auto& t : seq.terms) ++c[t];
      if (granularity == IdfGranularity::Post) {
        std::unordered_set<std::string_view> seen(seq.terms.begin(), seq.terms.end());
        for (auto t : seen) ++df[std::string(t)];
        ++n_docs;
      }
    }
    if (length == 0) throw PreconditionError("dataset " + key.to_string() + " is empty after preprocessing");
    if (granularity == IdfGranularity::Dataset) {
      for (const auto& [term, _] : c) ++df[term];
      ++n_docs;
    }
    counts.emplace(key, std::move(c));
    lengths.emplace(key, length);
  }
  return build_vectors(counts, lengths, df, n_docs);
}

double cosine_similarity(const TermVector& a, const TermVector& b) {
  if (a.dimension != b.dimension) {
    throw ConfigError("cosine of vectors with different dimensions (" + std::to_string(a.dimension) + " vs " +
                      std::to_string(b.dimension) + ")");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;

  const auto& small = a.weights.size() <= b.weights.size() ? a.weights : b.weights;
  const auto& large = a.weights.size() <= b.weights.size() ? b.weights : a.weights;
  double dot = 0.0;
  for (const auto& [term, w] : small) {
    if (auto it = large.find(term); it != large.end()) dot += w * it->second;
  }
  // Rounding can push a self-similarity a few ulps past 1.
  return std::min(1.0, dot / (na * nb));
}

std::size_t SimilarityMatrix::index_of(const DatasetKey& key) const {
  auto it = std::find(keys.begin(), keys.end(), key);
  if (it == keys.end()) throw ConfigError("dataset " + key.to_string() + " is not in the similarity matrix");
  return static_cast<std::size_t>(it - keys.begin());
}

SimilarityMatrix pairwise_matrix(const std::map<DatasetKey, TermVector>& vectors) {
  if (vectors.size() < 2) throw PreconditionError("pairwise similarity needs at least two datasets");
  SimilarityMatrix m;
  std::vector<const TermVector*> ordered;
  for (const auto& [key, v] : vectors) {
    m.keys.push_back(key);
    ordered.push_back(&v);
  }
  const auto n = m.keys.size();
  m.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double s = cosine_similarity(*ordered[i], *ordered[j]);
      m.at(i, j) = s;
      m.at(j, i) = s;
    }
  }
  return m;
}

std::string_view to_string(SimilarityBand b) noexcept {
  switch (b) {
    case SimilarityBand::Low: return "low";
    case SimilarityBand::Medium: return "medium";
    case SimilarityBand::Considerable: return "considerable";
  }
  return "low";
}

SimilarityBand band(double similarity) {
  if (!(similarity >= 0.0 && similarity <= 1.0)) {
    throw ConfigError("similarity out of range [0, 1]: " + std::to_string(similarity));
  }
  if (similarity < 0.60) return SimilarityBand::Low;
  if (similarity <= 0.75) return SimilarityBand::Medium;
  return SimilarityBand::Considerable;
}

std::vector<TermWeight> top_k_terms(const TermVector& vector, std::size_t k) {
  std::vector<TermWeight> terms;
  for (const auto& [term, w] : vector.weights)
    if (w > 0.0) terms.push_back({term, w});
  const auto by_rank = [](const TermWeight& a, const TermWeight& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.term < b.term;
  };
  const auto keep = std::min(k, terms.size());
  std::partial_sort(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(keep), terms.end(), by_rank);
  terms.resize(keep);
  return terms;
}

std::map<DatasetKey, std::size_t> uniqueness_count(const std::map<DatasetKey, TermVector>& vectors, std::size_t k) {
  std::map<DatasetKey, std::set<std::string>> tops;
  for (const auto& [key, v] : vectors) {
    auto& set = tops[key];
    for (auto& tw : top_k_terms(v, k)) set.insert(std::move(tw.term));
  }
  std::map<DatasetKey, std::size_t> unique;
  for (const auto& [key, set] : tops) {
    std::size_t n = 0;
    for (const auto& term : set) {
      bool elsewhere = false;
      for (const auto& [other, other_set] : tops) {
        if (other != key && other_set.contains(term)) {
          elsewhere = true;
          break;
        }
      }
      if (!elsewhere) ++n;
    }
    unique.emplace(key, n);
  }
  return unique;
}

CombinationPlan combination_plan(const SimilarityMatrix& matrix, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold must lie in [0, 1]");
  const auto n = matrix.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix.at(i, j) >= threshold) {
        auto a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<std::size_t, std::set<DatasetKey>> components;
  for (std::size_t i = 0; i < n; ++i) components[find(i)].insert(matrix.keys[i]);

  CombinationPlan plan;
  plan.threshold = threshold;
  for (auto& [_, members] : components)
    if (members.size() >= 2) plan.merges.push_back(std::move(members));
  return plan;
}

void write_matrix_csv(std::ostream& out, const SimilarityMatrix& m) {
  out << "dataset";
  for (const auto& k : m.keys) out << ',' << k.to_string();
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.keys[i].to_string();
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << fixed6(m.at(i, j));
    out << '\n';
  }
}

void write_pairs_csv(std::ostream& out, const SimilarityMatrix& m) {
  out << "key_a,key_b,similarity,band\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      out << m.keys[i].to_string() << ',' << m.keys[j].to_string() << ',' << fixed6(m.at(i, j)) << ','
          << to_string(band(m.at(i, j))) << '\n';
    }
  }
}

void write_top_terms_csv(std::ostream& out, const std::map<DatasetKey, TermVector>& vectors, std::size_t k) {
  out << "dataset,rank,term,weight\n";
  for (const auto& [key, v] : vectors) {
    std::size_t rank = 0;
    for (const auto& tw : top_k_terms(v, k)) {
      out << key.to_string() << ',' << ++rank << ',' << csv::escape(tw.term) << ',' << fixed6(tw.weight) << '\n';
    }
  }
}

void write_plan_csv(std::ostream& out, const CombinationPlan& plan, const SimilarityMatrix& matrix) {
  out << "merge,dataset,max_similarity_within_merge\n";
  std::size_t group = 0;
  for (const auto& members : plan.merges) {
    ++group;
    for (const auto& key : members) {
      double best = 0.0;
      const auto i = matrix.index_of(key);
      for (const auto& other : members)
        if (other != key) best = std::max(best, matrix.at(i, matrix.index_of(other)));
      out << group << ',' << key.to_string() << ',' << fixed6(best) << '\n';
    }
  }
}

}  // namespace pvoice
