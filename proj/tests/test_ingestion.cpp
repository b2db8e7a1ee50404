#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "pvoice/errors.hpp"
#include "pvoice/ingestion.hpp"
#include "pvoice/random.hpp"
#include "test_support.hpp"

using namespace pvoice;
using test::labeled;
using test::TempDir;

namespace {

std::vector<LabeledPost> corpus(std::size_t pv, std::size_t nr) {
  std::vector<LabeledPost> out;
  for (std::size_t i = 0; i < pv; ++i) out.push_back(labeled("pv" + std::to_string(i), Label::PatientVoice));
  for (std::size_t i = 0; i < nr; ++i) out.push_back(labeled("nr" + std::to_string(i), Label::NotRelevant));
  return out;
}

std::set<std::string> ids(const std::vector<LabeledPost>& posts) {
  std::set<std::string> out;
  for (const auto& p : posts) out.insert(p.post.id);
  return out;
}

}  // namespace

TEST_CASE("load_posts reads JSON lines in order") {
  TempDir dir;
  CHECK(load_posts(dir.write("empty.jsonl", ""), FileFormat::JsonLines).empty());

  const auto path = dir.write("three.jsonl",
                              "{\"id\":\"1\",\"source\":\"reddit\",\"domain\":\"oncology\",\"text\":\"first\"}\r\n"
                              "\n"
                              "{\"id\":\"2\",\"source\":\"socialgist\",\"domain\":\"neurology\",\"text\":\"second\","
                              "\"created_at\":1600000000,\"extra\":[1,2]}\n"
                              "{\"id\":\"3\",\"source\":\"forum\",\"domain\":\"oncology\",\"text\":\"\"}\n");
  const auto posts = load_posts(path, FileFormat::JsonLines);
  REQUIRE(posts.size() == 3);
  CHECK(posts[0].id == "1");
  CHECK(posts[0].text == "first");
  CHECK_FALSE(posts[0].created_at.has_value());
  CHECK(posts[1].source == Source::socialgist());
  CHECK(posts[1].domain == Domain::neurology());
  CHECK(posts[1].created_at == 1600000000);
  CHECK(posts[2].source.kind == Source::Kind::Other);
  CHECK(posts[2].text.empty());
}

TEST_CASE("malformed records name their line") {
  TempDir dir;
  const auto missing = dir.write("m.jsonl",
                                 "{\"id\":\"1\",\"source\":\"reddit\",\"domain\":\"oncology\",\"text\":\"a\"}\n"
                                 "{\"id\":\"2\",\"source\":\"reddit\",\"domain\":\"oncology\"}\n");
  try {
    load_posts(missing, FileFormat::JsonLines);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("text") != std::string::npos);
  }

  const auto broken = dir.write("b.jsonl", "{\"id\":\"1\",\n");
  CHECK_THROWS_AS(load_posts(broken, FileFormat::JsonLines), ParseError);

  const auto bad_time = dir.write("t.jsonl",
                                  "{\"id\":\"1\",\"source\":\"reddit\",\"domain\":\"oncology\",\"text\":\"a\","
                                  "\"created_at\":\"yesterday\"}\n");
  CHECK_THROWS_AS(load_posts(bad_time, FileFormat::JsonLines), ParseError);
  CHECK_THROWS_AS(load_posts(dir / "nope.jsonl", FileFormat::JsonLines), IoError);
}

TEST_CASE("csv posts with header, BOM and quoting") {
  TempDir dir;
  const auto path = dir.write("p.csv",
                              "\xEF\xBB\xBFid,source,domain,text,label\n"
                              "a,reddit,oncology,\"hello, world\",patient_voice\n"
                              "b,reddit,oncology,\"two\nlines\",not_relevant\n");
  CHECK(format_from_path(path) == FileFormat::Csv);
  CHECK(format_from_path("x.JSONL") == FileFormat::JsonLines);
  const auto posts = load_labeled_posts(path, FileFormat::Csv);
  REQUIRE(posts.size() == 2);
  CHECK(posts[0].post.text == "hello, world");
  CHECK(posts[1].post.text == "two\nlines");
  CHECK(posts[1].label == Label::NotRelevant);

  const auto bad = dir.write("bad.csv", "id,source,domain,text\na,reddit,oncology\n");
  try {
    load_posts(bad, FileFormat::Csv);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("labeled loading requires a valid label") {
  TempDir dir;
  const auto path = dir.write("l.jsonl",
                              "{\"id\":\"1\",\"source\":\"reddit\",\"domain\":\"oncology\",\"text\":\"a\","
                              "\"label\":\"patient\"}\n");
  CHECK_THROWS_AS(load_labeled_posts(path, FileFormat::JsonLines), ParseError);
  CHECK(load_posts(path, FileFormat::JsonLines).size() == 1);
}

TEST_CASE("jsonl writer round trips") {
  TempDir dir;
  std::vector<LabeledPost> posts{labeled("a", Label::PatientVoice, "caf\xC3\xA9 \"quoted\"\nnext"),
                                 labeled("b", Label::NotRelevant)};
  posts[1].post.created_at = 42;
  const auto path = dir.write("rt.jsonl", to_jsonl(std::span<const LabeledPost>(posts)));
  CHECK(load_labeled_posts(path, FileFormat::JsonLines) == posts);
}

TEST_CASE("deduplicate keeps first occurrence by id or text") {
  using test::post;
  CHECK(deduplicate(std::span<const Post>()).empty());

  const std::vector<Post> same_text{post("1", "same body"), post("2", "same body")};
  const auto kept = deduplicate(std::span<const Post>(same_text));
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].id == "1");

  const std::vector<Post> same_id{post("1", "one"), post("1", "two"), post("3", "three")};
  const auto kept2 = deduplicate(std::span<const Post>(same_id));
  REQUIRE(kept2.size() == 2);
  CHECK(kept2[0].text == "one");
  CHECK(kept2[1].id == "3");

  std::vector<Post> unique;
  for (int i = 0; i < 5; ++i) unique.push_back(post(std::to_string(i), "body " + std::to_string(i)));
  CHECK(deduplicate(std::span<const Post>(unique)) == unique);

  // NFC-equal bodies match; case differences do not.
  const std::vector<Post> nfc{post("1", "cafe\xCC\x81"), post("2", "caf\xC3\xA9"), post("3", "CAF\xC3\x89")};
  CHECK(deduplicate(std::span<const Post>(nfc)).size() == 2);
}

TEST_CASE("deduplicate is idempotent") {
  Xoshiro256 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::vector<Post> posts;
    for (int i = 0; i < 30; ++i) {
      posts.push_back(test::post(std::to_string(rng.below(15)), "t" + std::to_string(rng.below(15))));
    }
    const auto once = deduplicate(std::span<const Post>(posts));
    CHECK(deduplicate(std::span<const Post>(once)) == once);
  }
}

TEST_CASE("stratified split examples") {
  const auto posts = corpus(6, 4);
  const auto s = stratified_split(posts, Fraction{4, 5}, 1);
  CHECK(label_counts(s.train) == std::array<std::size_t, 2>{5, 3});
  CHECK(label_counts(s.validation) == std::array<std::size_t, 2>{1, 1});

  const auto again = stratified_split(posts, Fraction{4, 5}, 1);
  CHECK(again.train == s.train);
  CHECK(again.validation == s.validation);

  const auto tiny = stratified_split(corpus(1, 1), Fraction{4, 5}, 9);
  CHECK(tiny.train.size() == 2);
  CHECK(tiny.validation.empty());

  CHECK_THROWS_AS(stratified_split(std::vector<LabeledPost>{}, Fraction{4, 5}, 1), PreconditionError);
  CHECK_THROWS_AS(stratified_split(corpus(3, 0), Fraction{4, 5}, 1), PreconditionError);
  CHECK_THROWS_AS(stratified_split(corpus(3, 3), Fraction{1, 1}, 1), ConfigError);
}

TEST_CASE("stratified split properties on random corpora") {
  Xoshiro256 gen(2024);
  for (int round = 0; round < 100; ++round) {
    const auto pv = 1 + gen.below(40);
    const auto nr = 1 + gen.below(40);
    auto posts = corpus(pv, nr);
    gen.shuffle(std::span<LabeledPost>(posts));
    const auto seed = gen.next();
    const auto s = stratified_split(posts, Fraction{4, 5}, seed);
    const auto counts = label_counts(s.train);
    CHECK(counts[0] == static_cast<std::size_t>(std::floor(static_cast<double>(pv) * 0.8 + 0.5)));
    CHECK(counts[1] == static_cast<std::size_t>(std::floor(static_cast<double>(nr) * 0.8 + 0.5)));

    auto all = ids(s.train);
    const auto v = ids(s.validation);
    for (const auto& id : v) CHECK(all.insert(id).second);
    CHECK(all == ids(posts));
    CHECK(stratified_split(posts, Fraction{4, 5}, seed).train == s.train);
  }
}

TEST_CASE("different seeds give different orders") {
  const auto posts = corpus(20, 20);
  CHECK(stratified_split(posts, Fraction{4, 5}, 1).train != stratified_split(posts, Fraction{4, 5}, 2).train);
}

TEST_CASE("combine_bundles concatenates partitions") {
  const DatasetKey card_r{Source::reddit(), Domain::cardiovascular()};
  const DatasetKey card_s{Source::socialgist(), Domain::cardiovascular()};
  SplitBundle a{card_r, corpus(3, 2), {labeled("va", Label::PatientVoice)}, {labeled("ta", Label::NotRelevant)}};
  SplitBundle b{card_s, {}, {}, {}};
  for (int i = 0; i < 4; ++i) b.train.push_back(labeled("b" + std::to_string(i), Label::NotRelevant));
  b.test.push_back(labeled("tb", Label::PatientVoice));

  const DatasetKey combined{Source::combined(), Domain::cardiovascular()};
  const auto c = combine_bundles(std::vector<SplitBundle>{a, b}, combined);
  CHECK(c.key == combined);
  CHECK(c.train.size() == a.train.size() + b.train.size());
  CHECK(c.validation.size() == 1);
  CHECK(c.test.size() == 2);

  const auto same = combine_bundles(std::vector<SplitBundle>{a, SplitBundle{card_s, {}, {}, {}}}, a.key);
  CHECK(same.train == a.train);
  CHECK(same.validation == a.validation);
  CHECK(same.test == a.test);

  SplitBundle clash = b;
  clash.test.push_back(labeled("p9", Label::PatientVoice));
  SplitBundle clash2 = a;
  clash2.train.push_back(labeled("p9", Label::PatientVoice));
  CHECK_THROWS_AS(combine_bundles(std::vector<SplitBundle>{clash, clash2}, combined), PreconditionError);
}

TEST_CASE("combine_bundles sizes add for the cardiovascular pair") {
  SplitBundle a{{Source::reddit(), Domain::cardiovascular()}, {}, {}, {}};
  SplitBundle b{{Source::socialgist(), Domain::cardiovascular()}, {}, {}, {}};
  for (int i = 0; i < 884; ++i) a.train.push_back(labeled("r" + std::to_string(i), Label::PatientVoice));
  for (int i = 0; i < 876; ++i) b.train.push_back(labeled("s" + std::to_string(i), Label::PatientVoice));
  CHECK(combine_bundles(std::vector<SplitBundle>{a, b}, DatasetKey::all()).train.size() == 1760);
}

TEST_CASE("load_annotations from json lines and csv") {
  TempDir dir;
  CHECK(load_annotations(dir.write("e.csv", "")).empty());
  const auto csv = dir.write("a.csv",
                             "post_id,annotator_id,label\n"
                             "p1,ann1,patient_voice\np1,ann2,patient_voice\n"
                             "p2,ann1,not_relevant\np2,ann2,patient_voice\n");
  const auto records = load_annotations(csv);
  REQUIRE(records.size() == 4);
  CHECK(records[3] == AnnotationRecord{"p2", "ann2", Label::PatientVoice});

  const auto jl = dir.write("a.jsonl", "{\"post_id\":\"p1\",\"annotator_id\":\"x\",\"label\":\"not_relevant\"}\n");
  CHECK(load_annotations(jl).front().label == Label::NotRelevant);

  CHECK_THROWS_AS(load_annotations(dir.write("bad.csv", "post_id,annotator_id,label\np1,a,patient\n")), ParseError);
  CHECK_THROWS_AS(load_annotations(dir.write("dup.csv", "post_id,annotator_id,label\np1,a,patient_voice\n"
                                                        "p1,a,not_relevant\n")),
                  ParseError);
}

TEST_CASE("bundles save and load by file stem") {
  TempDir dir;
  SplitBundle b{{Source::socialgist(), Domain::immunology()},
                corpus(2, 2),
                {labeled("v", Label::PatientVoice)},
                {labeled("t", Label::NotRelevant)}};
  save_bundle(dir.path(), b);
  CHECK(std::filesystem::exists(dir / "socialgist__immunology.train.jsonl"));
  const auto loaded = load_bundles(dir.path());
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].key == b.key);
  CHECK(loaded[0].train == b.train);
  CHECK(loaded[0].validation == b.validation);
  CHECK(loaded[0].test == b.test);
  CHECK_THROWS_AS(load_bundles(dir / "missing"), IoError);
}

TEST_CASE("ingest config validation") {
  IngestConfig c;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.input_paths.push_back("x.jsonl");
  CHECK_NOTHROW(c.validate());
  c.train_fraction = Fraction{5, 5};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("group_by_key keeps order within groups") {
  const DatasetKey other{Source::socialgist(), Domain::neurology()};
  const std::vector<LabeledPost> posts{labeled("a", Label::PatientVoice), labeled("b", Label::PatientVoice, "x", other),
                                       labeled("c", Label::NotRelevant)};
  const auto g = group_by_key(std::span<const LabeledPost>(posts));
  REQUIRE(g.size() == 2);
  const auto& onc = g.at({Source::reddit(), Domain::oncology()});
  REQUIRE(onc.size() == 2);
  CHECK(onc[0].post.id == "a");
  CHECK(onc[1].post.id == "c");
}
