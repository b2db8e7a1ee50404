#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "pvoice/errors.hpp"
#include "pvoice/tfidf_similarity.hpp"
#include "tfidf_oracle.hpp"

using namespace pvoice;
using Catch::Matchers::WithinAbs;

namespace {

TermSequence seq(std::vector<std::string> terms) { return {std::move(terms)}; }

DatasetKey key(int i) { return {Source::other("s" + std::to_string(i)), Domain::oncology()}; }

TermVector vec(std::map<std::string, double> w, std::size_t dim = 3) { return {{}, std::move(w), dim}; }

SimilarityMatrix matrix3(double ab, double bc, double ac) {
  SimilarityMatrix m;
  m.keys = {key(0), key(1), key(2)};
  m.values = {1, ab, ac, ab, 1, bc, ac, bc, 1};
  return m;
}

}  // namespace

TEST_CASE("term frequency") {
  CHECK_THAT(term_frequency("a", seq({"a", "b", "a"})), WithinAbs(2.0 / 3.0, 1e-15));
  CHECK(term_frequency("z", seq({"a"})) == 0.0);
  CHECK(term_frequency("x", seq({"x"})) == 1.0);
  CHECK_THROWS_AS(term_frequency("a", seq({})), PreconditionError);
}

TEST_CASE("inverse document frequency") {
  const std::vector<TermSequence> all{seq({"t"}), seq({"t", "u"})};
  CHECK(inverse_document_frequency("t", all) == 0.0);
  const std::vector<TermSequence> four{seq({"q"}), seq({"x"}), seq({"y"}), seq({"z"})};
  CHECK_THAT(inverse_document_frequency("q", four), WithinAbs(1.386294, 1e-6));
  CHECK_THROWS_AS(inverse_document_frequency("nope", four), PreconditionError);
  CHECK_THROWS_AS(inverse_document_frequency("q", std::vector<TermSequence>{}), PreconditionError);
}

TEST_CASE("dataset vectors examples") {
  const auto v = dataset_vectors({{key(0), seq({"a", "b"})}, {key(1), seq({"b", "c"})}});
  const auto& d1 = v.at(key(0));
  const auto& d2 = v.at(key(1));
  CHECK(d1.weight("b") == 0.0);
  CHECK(d2.weight("b") == 0.0);
  CHECK(d1.weights.contains("b"));
  CHECK_THAT(d1.weight("a"), WithinAbs(0.5 * std::log(2.0), 1e-15));
  CHECK_THAT(d2.weight("c"), WithinAbs(0.5 * std::log(2.0), 1e-15));
  CHECK(d1.weight("c") == 0.0);
  CHECK(d1.dimension == 3);
  const auto m = pairwise_matrix(v);
  CHECK(m.at(0, 1) == 0.0);

  const auto same = dataset_vectors({{key(0), seq({"x", "y", "y"})}, {key(1), seq({"y", "x", "y"})}});
  CHECK(same.at(key(0)).weights == same.at(key(1)).weights);

  const auto three = dataset_vectors({{key(0), seq({"a"})}, {key(1), seq({"a"})}, {key(2), seq({"a", "q"})}});
  CHECK(three.at(key(2)).weight("q") > 0.0);
  CHECK(three.at(key(0)).weight("q") == 0.0);
  CHECK(three.at(key(1)).weight("q") == 0.0);

  CHECK_THROWS_AS(dataset_vectors({{key(0), seq({"a"})}}), PreconditionError);
  CHECK_THROWS_AS(dataset_vectors({{key(0), seq({"a"})}, {key(1), seq({})}}), PreconditionError);
}

TEST_CASE("post-level sequences with dataset granularity equal concatenation") {
  const std::map<DatasetKey, std::vector<TermSequence>> posts{
      {key(0), {seq({"a", "b"}), seq({"a"}), seq({})}},
      {key(1), {seq({"b"}), seq({"c", "c", "d"})}},
      {key(2), {seq({"e"})}},
  };
  const auto split = dataset_vectors(posts, IdfGranularity::Dataset);
  const auto whole = dataset_vectors({{key(0), seq({"a", "b", "a"})},
                                      {key(1), seq({"b", "c", "c", "d"})},
                                      {key(2), seq({"e"})}});
  for (const auto& [k, v] : whole) CHECK(split.at(k).weights == v.weights);

  // Post granularity: N = 6 post documents; "a" and "b" each occur in two.
  const auto per_post = dataset_vectors(posts, IdfGranularity::Post);
  CHECK_THAT(per_post.at(key(0)).weight("a"), WithinAbs(2.0 / 3.0 * std::log(3.0), 1e-15));
  CHECK_THAT(per_post.at(key(1)).weight("c"), WithinAbs(2.0 / 4.0 * std::log(6.0), 1e-15));
  CHECK_THAT(per_post.at(key(0)).weight("b"), WithinAbs(1.0 / 3.0 * std::log(3.0), 1e-15));
}

TEST_CASE("cosine similarity") {
  const auto a = vec({{"x", 1}, {"y", 1}});
  const auto b = vec({{"x", 1}, {"z", 1}});
  CHECK_THAT(cosine_similarity(a, b), WithinAbs(0.5, 1e-15));
  CHECK_THAT(cosine_similarity(a, a), WithinAbs(1.0, 1e-15));
  CHECK(cosine_similarity(vec({{"x", 1}}), vec({{"y", 2}})) == 0.0);
  CHECK(cosine_similarity(a, vec({{"x", 0}})) == 0.0);
  CHECK(is_degenerate(vec({{"x", 0}})));
  CHECK_THROWS_AS(cosine_similarity(a, vec({{"x", 1}}, 4)), ConfigError);
  for (double c : {0.5, 3.0, 100.0}) CHECK_THAT(cosine_similarity(a.scaled(c), b), WithinAbs(0.5, 1e-12));
}

TEST_CASE("pairwise matrix examples") {
  const auto twins = pairwise_matrix(dataset_vectors({{key(0), seq({"a", "b"})}, {key(1), seq({"a", "b"})}}));
  // Every term occurs in both datasets, so both vectors are zero.
  CHECK(twins.at(0, 1) == 0.0);

  const auto twins3 = pairwise_matrix(dataset_vectors(
      {{key(0), seq({"a", "b", "b"})}, {key(1), seq({"b", "a", "b"})}, {key(2), seq({"z"})}}));
  CHECK_THAT(twins3.at(0, 1), WithinAbs(1.0, 1e-12));
  CHECK_THAT(twins3.at(0, 0), WithinAbs(1.0, 1e-12));

  const auto disjoint =
      pairwise_matrix(dataset_vectors({{key(2), seq({"a"})}, {key(0), seq({"b", "c"})}, {key(1), seq({"d"})}}));
  REQUIRE(disjoint.size() == 3);
  CHECK(disjoint.keys == std::vector<DatasetKey>{key(0), key(1), key(2)});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK_THAT(disjoint.at(i, j), WithinAbs(i == j ? 1.0 : 0.0, 1e-12));
  CHECK(disjoint.index_of(key(1)) == 1);
  CHECK_THROWS_AS(disjoint.index_of(key(7)), ConfigError);
}

TEST_CASE("library matches a dense brute-force oracle") {
  Xoshiro256 rng(31337);
  for (int round = 0; round < 200; ++round) {
    const auto docs = test::random_documents(rng, 5, 20, 30);
    std::map<DatasetKey, TermSequence> datasets;
    for (std::size_t i = 0; i < docs.size(); ++i) datasets.emplace(key(static_cast<int>(i)), seq(docs[i]));
    const auto oracle = test::DenseTfidf::build(docs);
    const auto vectors = dataset_vectors(datasets);
    const auto m = pairwise_matrix(vectors);
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto& v = vectors.at(key(static_cast<int>(i)));
      REQUIRE(v.dimension == oracle.vocabulary.size());
      for (const auto& term : oracle.vocabulary) REQUIRE_THAT(v.weight(term), WithinAbs(oracle.weight(i, term), 1e-12));
      for (std::size_t j = 0; j < docs.size(); ++j) {
        REQUIRE_THAT(m.at(i, j), WithinAbs(oracle.cosine(i, j), 1e-12));
        REQUIRE(m.at(i, j) >= 0.0);
        REQUIRE(m.at(i, j) <= 1.0);
        REQUIRE(std::abs(m.at(i, j) - m.at(j, i)) < 1e-9);
      }
      if (!is_degenerate(v)) REQUIRE_THAT(m.at(i, i), WithinAbs(1.0, 1e-9));
    }
  }
}

TEST_CASE("bands") {
  CHECK(band(0.50) == SimilarityBand::Low);
  CHECK(band(0.70) == SimilarityBand::Medium);
  CHECK(band(0.80) == SimilarityBand::Considerable);
  CHECK(band(0.0) == SimilarityBand::Low);
  CHECK(band(0.60) == SimilarityBand::Medium);
  CHECK(band(0.75) == SimilarityBand::Medium);
  CHECK(band(std::nextafter(0.75, 1.0)) == SimilarityBand::Considerable);
  CHECK(band(1.0) == SimilarityBand::Considerable);
  CHECK_THROWS_AS(band(-0.01), ConfigError);
  CHECK_THROWS_AS(band(1.01), ConfigError);
  CHECK_THROWS_AS(band(std::nan("")), ConfigError);
  CHECK(to_string(SimilarityBand::Considerable) == "considerable");

  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double s = i / 1000.0;
    REQUIRE(band(prev) <= band(s));
    prev = s;
  }
}

TEST_CASE("top k terms") {
  const auto v = vec({{"c", 0.1}, {"b", 0.3}, {"a", 0.3}, {"z", 0.0}});
  CHECK(top_k_terms(v, 0).empty());
  CHECK(top_k_terms(v, 2) == std::vector<TermWeight>{{"a", 0.3}, {"b", 0.3}});
  CHECK(top_k_terms(v, 20).size() == 3);
  CHECK(top_k_terms(vec({{"only", 0.2}}), 20) == std::vector<TermWeight>{{"only", 0.2}});

  Xoshiro256 rng(8);
  for (int round = 0; round < 100; ++round) {
    std::map<std::string, double> w;
    for (int i = 0; i < 30; ++i) w["t" + std::to_string(rng.below(50))] = static_cast<double>(rng.below(5)) / 4.0;
    const auto top = top_k_terms(vec(w, 50), rng.below(40));
    for (std::size_t i = 1; i < top.size(); ++i) {
      REQUIRE(top[i - 1].weight >= top[i].weight);
      if (top[i - 1].weight == top[i].weight) REQUIRE(top[i - 1].term < top[i].term);
    }
  }
}

TEST_CASE("uniqueness counts") {
  const std::map<DatasetKey, TermVector> overlap{{key(0), vec({{"a", 3}, {"b", 2}, {"c", 1}}, 5)},
                                                 {key(1), vec({{"c", 3}, {"d", 2}, {"e", 1}}, 5)}};
  const auto u = uniqueness_count(overlap, 3);
  CHECK(u.at(key(0)) == 2);
  CHECK(u.at(key(1)) == 2);

  const std::map<DatasetKey, TermVector> same{{key(0), vec({{"a", 1}, {"b", 2}})}, {key(1), vec({{"a", 1}, {"b", 2}})}};
  CHECK(uniqueness_count(same, 3).at(key(0)) == 0);

  const std::map<DatasetKey, TermVector> apart{{key(0), vec({{"a", 1}, {"b", 1}, {"c", 1}}, 6)},
                                               {key(1), vec({{"d", 1}, {"e", 1}, {"f", 1}}, 6)}};
  CHECK(uniqueness_count(apart, 3).at(key(1)) == 3);
}

TEST_CASE("combination plan") {
  const auto plan = combination_plan(matrix3(0.8, 0.8, 0.5), 0.75);
  REQUIRE(plan.merges.size() == 1);
  CHECK(plan.merges[0] == std::set<DatasetKey>{key(0), key(1), key(2)});
  CHECK(plan.threshold == 0.75);

  CHECK(combination_plan(matrix3(0.5, 0.6, 0.7)).merges.empty());

  const auto pair = combination_plan(matrix3(1.0, 0.1, 0.1));
  REQUIRE(pair.merges.size() == 1);
  CHECK(pair.merges[0] == std::set<DatasetKey>{key(0), key(1)});

  CHECK(combination_plan(matrix3(0.75, 0.0, 0.0)).merges.size() == 1);
  CHECK_THROWS_AS(combination_plan(matrix3(0.1, 0.1, 0.1), 1.5), ConfigError);
}

TEST_CASE("combination plan invariants on random matrices") {
  Xoshiro256 rng(12);
  for (int round = 0; round < 200; ++round) {
    const auto n = 2 + rng.below(7);
    SimilarityMatrix m;
    for (std::uint64_t i = 0; i < n; ++i) m.keys.push_back(key(static_cast<int>(i)));
    m.values.assign(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m.at(i, j) = m.at(j, i) = rng.uniform01();
    const double threshold = rng.uniform01();
    const auto plan = combination_plan(m, threshold);

    std::set<DatasetKey> seen;
    for (const auto& merge : plan.merges) {
      REQUIRE(merge.size() >= 2);
      for (const auto& k : merge) {
        REQUIRE(seen.insert(k).second);
        // Single link: every member reaches another member at or above the threshold.
        bool linked = false;
        for (const auto& other : merge)
          if (other != k && m.at(m.index_of(k), m.index_of(other)) >= threshold) linked = true;
        REQUIRE(linked);
      }
    }
    // Any pair at or above the threshold shares a merge.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (m.at(i, j) < threshold) continue;
        bool together = false;
        for (const auto& merge : plan.merges) together |= merge.contains(m.keys[i]) && merge.contains(m.keys[j]);
        REQUIRE(together);
      }
    }
  }
}

TEST_CASE("report writers") {
  auto m = matrix3(0.8, 0.8, 0.5);
  std::ostringstream matrix, pairs, plan_csv, top;
  write_matrix_csv(matrix, m);
  CHECK(matrix.str() ==
        "dataset,s0/oncology,s1/oncology,s2/oncology\n"
        "s0/oncology,1.000000,0.800000,0.500000\n"
        "s1/oncology,0.800000,1.000000,0.800000\n"
        "s2/oncology,0.500000,0.800000,1.000000\n");

  write_pairs_csv(pairs, m);
  const auto p = pairs.str();
  CHECK(p.rfind("key_a,key_b,similarity,band\n", 0) == 0);
  CHECK(p.find("s0/oncology,s2/oncology,0.500000,low\n") != std::string::npos);
  CHECK(p.find("s0/oncology,s1/oncology,0.800000,considerable\n") != std::string::npos);

  write_plan_csv(plan_csv, combination_plan(m), m);
  CHECK(plan_csv.str() ==
        "merge,dataset,max_similarity_within_merge\n"
        "1,s0/oncology,0.800000\n1,s1/oncology,0.800000\n1,s2/oncology,0.800000\n");

  const std::map<DatasetKey, TermVector> vectors{{key(0), vec({{"b", 0.25}, {"a", 0.5}})}};
  write_top_terms_csv(top, vectors, 5);
  CHECK(top.str() == "dataset,rank,term,weight\ns0/oncology,1,a,0.500000\ns0/oncology,2,b,0.250000\n");
}
