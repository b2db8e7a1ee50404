#include <catch_amalgamated.hpp>

#include "pvoice/corpus_model.hpp"
#include "pvoice/errors.hpp"
#include "pvoice/metrics.hpp"
#include "test_support.hpp"

using namespace pvoice;
using test::labeled;

TEST_CASE("labels have two ordered variants") {
  STATIC_REQUIRE(kNumLabels == 2);
  CHECK(Label::PatientVoice < Label::NotRelevant);
  CHECK(index_of(Label::PatientVoice) == 0);
  CHECK(index_of(Label::NotRelevant) == 1);
  CHECK(parse_label("patient_voice") == Label::PatientVoice);
  CHECK(parse_label("not_relevant") == Label::NotRelevant);
  CHECK_FALSE(parse_label("patient").has_value());
  CHECK(to_string(Label::NotRelevant) == "not_relevant");
  ConfusionTable t;
  CHECK(t.counts.size() == 2);
  CHECK(t.counts[0].size() == 2);
}

TEST_CASE("dataset keys round trip through text") {
  const DatasetKey k{Source::reddit(), Domain::oncology()};
  CHECK(k.to_string() == "reddit/oncology");
  CHECK(k.file_stem() == "reddit__oncology");
  CHECK(DatasetKey::parse("reddit/oncology") == k);
  CHECK(DatasetKey::parse("Reddit/Oncology") == k);
  CHECK(DatasetKey::parse("all") == DatasetKey::all());
  CHECK(DatasetKey::parse("combined/combined").is_all());
  CHECK(k.is_specific());
  CHECK_FALSE(DatasetKey::parse("combined/oncology").is_specific());
  CHECK_FALSE(DatasetKey::parse("combined/oncology").is_all());

  const auto other = DatasetKey::parse("forum/dermatology");
  CHECK(other.source.kind == Source::Kind::Other);
  CHECK(other.domain.kind == Domain::Kind::Other);
  CHECK(other.to_string() == "forum/dermatology");
  CHECK_THROWS_AS(DatasetKey::parse("reddit"), ConfigError);
  CHECK_THROWS_AS(DatasetKey::parse("/oncology"), ConfigError);
}

TEST_CASE("key equality is structural and ordered") {
  const auto a = DatasetKey::parse("reddit/oncology");
  const auto b = DatasetKey::parse("reddit/oncology");
  const auto c = DatasetKey::parse("socialgist/cardiovascular");
  CHECK(a == b);
  CHECK(a < c);
  CHECK(DatasetKey::parse("reddit/cardiovascular") < a);
}

TEST_CASE("validate_bundle reports violations") {
  SplitBundle ok{{Source::reddit(), Domain::oncology()},
                 {labeled("a", Label::PatientVoice), labeled("b", Label::NotRelevant)},
                 {labeled("c", Label::PatientVoice)},
                 {labeled("d", Label::NotRelevant)}};
  CHECK(validate_bundle(ok).empty());

  auto dup = ok;
  dup.test.push_back(labeled("x1", Label::PatientVoice));
  dup.train.push_back(labeled("x1", Label::PatientVoice));
  CHECK(validate_bundle(dup) == std::vector<std::string>{"duplicate id x1 in train/test"});

  auto empty = ok;
  empty.train.clear();
  CHECK(validate_bundle(empty) == std::vector<std::string>{"empty train partition"});

  auto vt = ok;
  vt.test.push_back(labeled("c", Label::PatientVoice));
  CHECK(validate_bundle(vt) == std::vector<std::string>{"duplicate id c in validation/test"});
}

TEST_CASE("validate_bundle is pure") {
  SplitBundle b{{}, {labeled("x", Label::PatientVoice)}, {labeled("x", Label::PatientVoice)}, {}};
  const auto first = validate_bundle(b);
  CHECK(first == validate_bundle(b));
  CHECK(first.size() == 1);
}

TEST_CASE("label counts") {
  const std::vector<LabeledPost> posts{labeled("a", Label::PatientVoice), labeled("b", Label::NotRelevant),
                                       labeled("c", Label::PatientVoice)};
  const auto c = label_counts(posts);
  CHECK(c[0] == 2);
  CHECK(c[1] == 1);
}
