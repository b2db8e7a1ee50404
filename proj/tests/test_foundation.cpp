#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pvoice/csv.hpp"
#include "pvoice/errors.hpp"
#include "pvoice/file_util.hpp"
#include "pvoice/fraction.hpp"
#include "pvoice/random.hpp"
#include "pvoice/unicode.hpp"
#include "test_support.hpp"

using namespace pvoice;

// Reference outputs from an independent Python implementation of
// splitmix64 seeding + xoshiro256**.
TEST_CASE("xoshiro256** matches reference outputs") {
  Xoshiro256 a(0);
  CHECK(a.next() == 0x99ec5f36cb75f2b4ULL);
  CHECK(a.next() == 0xbf6e1f784956452aULL);
  CHECK(a.next() == 0x1a5f849d4933e6e0ULL);

  Xoshiro256 b(42);
  CHECK(b.next() == 0x15780b2e0c2ec716ULL);
  CHECK(b.next() == 0x6104d9866d113a7eULL);
  CHECK(b.next() == 0xae17533239e499a1ULL);

  Xoshiro256 c(7);
  std::vector<std::uint64_t> got;
  for (int i = 0; i < 8; ++i) got.push_back(c.below(10));
  CHECK(got == std::vector<std::uint64_t>{7, 2, 8, 9, 9, 8, 0, 1});
}

TEST_CASE("uniform draws stay in range") {
  Xoshiro256 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = rng.uniform(-0.1, 0.1);
    REQUIRE(v >= -0.1);
    REQUIRE(v <= 0.1);
    REQUIRE(rng.below(5) < 5);
  }
}

TEST_CASE("shuffle is a seeded permutation") {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  Xoshiro256 r1(11), r2(11);
  r1.shuffle(std::span<int>(a));
  r2.shuffle(std::span<int>(b));
  CHECK(a == b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(50);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(sorted == expected);
  CHECK(a != expected);
}

TEST_CASE("fraction parsing is exact") {
  CHECK(Fraction::parse("0.8") == Fraction{4, 5});
  CHECK(Fraction::parse("4/5") == Fraction{4, 5});
  CHECK(Fraction::parse("0.125") == Fraction{1, 8});
  CHECK(Fraction::parse("1/2") == Fraction{1, 2});
  CHECK_THROWS_AS(Fraction::parse("abc"), ConfigError);
  CHECK_THROWS_AS(Fraction::parse("1/0"), ConfigError);
  CHECK_THROWS_AS(Fraction::parse(""), ConfigError);
  CHECK(Fraction::parse("0.8").strictly_between_zero_and_one());
  CHECK_FALSE(Fraction::parse("1").strictly_between_zero_and_one());
  CHECK_FALSE(Fraction::parse("0").strictly_between_zero_and_one());
}

TEST_CASE("round half up of n times fraction") {
  const Fraction f{4, 5};
  CHECK(f.scaled_round_half_up(6) == 5);
  CHECK(f.scaled_round_half_up(4) == 3);
  CHECK(f.scaled_round_half_up(1) == 1);
  CHECK(f.scaled_round_half_up(0) == 0);
  CHECK(Fraction{1, 2}.scaled_round_half_up(5) == 3);
  CHECK(Fraction{3, 10}.scaled_round_half_up(5) == 2);
  CHECK(Fraction{1, 10}.scaled_round_half_up(4) == 0);
}

TEST_CASE("csv reader handles quoting") {
  std::istringstream in("a,b,c\n\"x,1\",\"say \"\"hi\"\"\",\"multi\nline\"\r\n\nlast,,\n");
  csv::Reader r(in);
  std::vector<std::string> f;
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"a", "b", "c"});
  CHECK(r.record_line() == 1);
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"x,1", "say \"hi\"", "multi\nline"});
  CHECK(r.record_line() == 2);
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"last", "", ""});
  CHECK(r.record_line() == 5);
  CHECK_FALSE(r.next(f));
}

TEST_CASE("csv escape round trips through the reader") {
  const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "new\nline", ""};
  std::istringstream in(csv::join_row(fields) + "\n");
  csv::Reader r(in);
  std::vector<std::string> back;
  REQUIRE(r.next(back));
  CHECK(back == fields);
  CHECK(csv::escape("plain") == "plain");
}

TEST_CASE("nfc composes combining sequences") {
  CHECK(unicode::nfc("cafe\xCC\x81") == "caf\xC3\xA9");
  CHECK(unicode::nfc("caf\xC3\xA9") == "caf\xC3\xA9");
  CHECK(unicode::nfc("") == "");
}

TEST_CASE("atomic write creates parents and replaces content") {
  test::TempDir dir;
  const auto p = dir / "a/b/c.txt";
  write_file_atomic(p, "first");
  CHECK(read_file(p) == "first");
  write_file_atomic(p, "second");
  CHECK(read_file(p) == "second");
  CHECK_FALSE(std::filesystem::exists(p.string() + ".tmp"));
  CHECK_THROWS_AS(read_file(dir / "missing.txt"), IoError);
  CHECK_THROWS_AS(read_file(dir.path()), IoError);
}

TEST_CASE("parse errors carry their line") {
  const ParseError e("bad thing", 7);
  CHECK(e.line() == 7);
  CHECK(std::string(e.what()) == "line 7: bad thing");
  const NumericError n("diverged", 3);
  CHECK(n.epoch() == 3);
}
