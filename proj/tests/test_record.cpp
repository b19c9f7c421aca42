#include "doctest.h"
#include "disambig/errors.hpp"
#include "disambig/random.hpp"
#include "disambig/record.hpp"

using namespace disambig;

TEST_CASE("parse_mention splits a four digit suffix") {
  const AuthorMention m = parse_mention("Wei Li 0002");
  CHECK(m.surface_name == "Wei Li");
  REQUIRE(m.gold_id);
  CHECK(*m.gold_id == "0002");
  CHECK(m.gold_key() == "Wei Li 0002");
  CHECK(m.raw == "Wei Li 0002");
}

TEST_CASE("parse_mention keeps names without a suffix") {
  const AuthorMention m = parse_mention("Daniel Schall");
  CHECK(m.surface_name == "Daniel Schall");
  CHECK_FALSE(m.gold_id);

  const AuthorMention three = parse_mention("Wei Li 123");
  CHECK(three.surface_name == "Wei Li 123");
  CHECK_FALSE(three.gold_id);

  CHECK_FALSE(parse_mention("Wei Li 00012").gold_id);
  CHECK_FALSE(parse_mention("Wei Li0001").gold_id);
  CHECK_FALSE(parse_mention("0001").gold_id);
}

TEST_CASE("parse_mention normalises whitespace") {
  const AuthorMention m = parse_mention("  Wei \t Li\n0001 ");
  CHECK(m.surface_name == "Wei Li");
  CHECK(*m.gold_id == "0001");
}

TEST_CASE("parse_mention rejects empty input and double suffixes") {
  CHECK_THROWS_AS(parse_mention(""), MalformedMention);
  CHECK_THROWS_AS(parse_mention(" \t\n"), MalformedMention);
  CHECK_THROWS_AS(parse_mention("Wei Li 0001 0002"), MalformedMention);
}

TEST_CASE("suffix law holds on random normalised strings") {
  Rng rng(7);
  const std::string alphabet = "ab 0123456789";
  for (int trial = 0; trial < 20000; ++trial) {
    std::string s;
    const auto len = rng.between(1, 12);
    for (std::int64_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
    s = normalize_name(s);
    if (s.empty()) continue;
    AuthorMention m;
    try {
      m = parse_mention(s);
    } catch (const MalformedMention&) {
      continue;  // double suffix
    }
    CHECK_FALSE(m.surface_name.empty());
    if (m.gold_id) {
      CHECK(s == m.surface_name + " " + *m.gold_id);
    } else {
      CHECK(s == m.surface_name);
    }
    // The surface name never keeps a suffix.
    CHECK_FALSE(parse_mention(m.surface_name).gold_id);
  }
}

TEST_CASE("record kinds map to element names") {
  CHECK(kind_from_name("inproceedings") == RecordKind::kInproceedings);
  CHECK(kind_from_name("www") == RecordKind::kWww);
  CHECK(kind_from_name("data") == RecordKind::kOther);
  CHECK(kind_name(RecordKind::kMastersthesis) == "mastersthesis");
}
