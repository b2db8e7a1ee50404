#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvoice/corpus_model.hpp"
#include "pvoice/textprep.hpp"

namespace pvoice {

/// TF-IDF representation of one dataset inside a shared vocabulary of size
/// `dimension`. `weights` holds every term the dataset contains, including
/// terms whose weight is 0 because they occur in every document; terms not
/// listed have weight 0.
struct TermVector {
  DatasetKey key;
  std::map<std::string, double> weights;
  std::size_t dimension = 0;

  double weight(std::string_view term) const;
  double norm() const;
  TermVector scaled(double factor) const;
};

/// count(term) / |doc|. Throws PreconditionError on an empty document.
double term_frequency(std::string_view term, const TermSequence& doc);

/// ln(N / df). Throws PreconditionError when the corpus is empty or no
/// document contains the term.
double inverse_document_frequency(std::string_view term, std::span<const TermSequence> corpus);

/// Which unit counts as a "document" when computing IDF.
enum class IdfGranularity {
  Dataset,  // each dataset's concatenated text is one document
  Post,     // every post is a document; TF still uses the whole dataset
};

/// Dataset-as-document vectors: weight(t, d) = TF(t, d) * ln(N / df(t)) with
/// N the number of datasets. Requires at least two datasets, none empty.
std::map<DatasetKey, TermVector> dataset_vectors(const std::map<DatasetKey, TermSequence>& datasets);

/// Same, from per-post sequences. With IdfGranularity::Dataset this equals
/// the overload above applied to each dataset's concatenation.
std::map<DatasetKey, TermVector> dataset_vectors(const std::map<DatasetKey, std::vector<TermSequence>>& posts,
                                                 IdfGranularity granularity);

/// Dot product over product of norms. 0 when either norm is 0 (see
/// is_degenerate). Throws ConfigError on a dimension mismatch.
double cosine_similarity(const TermVector& a, const TermVector& b);
inline bool is_degenerate(const TermVector& v) { return v.norm() == 0.0; }

struct SimilarityMatrix {
  std::vector<DatasetKey> keys;  // sorted by (source, domain)
  std::vector<double> values;    // row-major, keys.size()^2

  std::size_t size() const noexcept { return keys.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * keys.size() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * keys.size() + j]; }
  /// Throws ConfigError when the key is not in the matrix.
  std::size_t index_of(const DatasetKey& key) const;
};

SimilarityMatrix pairwise_matrix(const std::map<DatasetKey, TermVector>& vectors);

enum class SimilarityBand { Low, Medium, Considerable };

std::string_view to_string(SimilarityBand band) noexcept;

/// Low below 0.60, Medium on [0.60, 0.75], Considerable above 0.75.
/// Throws ConfigError outside [0, 1].
SimilarityBand band(double similarity);

struct TermWeight {
  std::string term;
  double weight = 0.0;
  bool operator==(const TermWeight&) const = default;
};

/// Highest-weight non-zero terms, descending; equal weights in ascending
/// term order.
std::vector<TermWeight> top_k_terms(const TermVector& vector, std::size_t k);

/// For each dataset, how many of its top-k terms are absent from every other
/// dataset's top-k list.
std::map<DatasetKey, std::size_t> uniqueness_count(const std::map<DatasetKey, TermVector>& vectors, std::size_t k);

inline constexpr double kDefaultCombinationThreshold = 0.75;

struct CombinationPlan {
  std::vector<std::set<DatasetKey>> merges;  // ordered by smallest member
  double threshold = kDefaultCombinationThreshold;
};

/// Single-link clustering: connected components of the graph joining pairs
/// with similarity >= threshold. Components of two or more keys become merges.
CombinationPlan combination_plan(const SimilarityMatrix& matrix, double threshold = kDefaultCombinationThreshold);

// Report writers.
void write_matrix_csv(std::ostream& out, const SimilarityMatrix& matrix);
void write_pairs_csv(std::ostream& out, const SimilarityMatrix& matrix);
void write_top_terms_csv(std::ostream& out, const std::map<DatasetKey, TermVector>& vectors, std::size_t k);
void write_plan_csv(std::ostream& out, const CombinationPlan& plan, const SimilarityMatrix& matrix);

}  // namespace pvoice
