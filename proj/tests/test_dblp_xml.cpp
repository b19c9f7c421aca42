#include <sstream>

#include "doctest.h"
#include "disambig/dblp_xml.hpp"
#include "disambig/errors.hpp"
#include "disambig/random.hpp"

using namespace disambig;

namespace {

constexpr const char* kMinimal = R"(<?xml version="1.0" encoding="UTF-8"?>
<!DOCTYPE dblp SYSTEM "dblp.dtd">
<dblp>
<inproceedings key="conf/x/Li15" mdate="2015-01-01">
<author>Wei Li 0001</author>
<author>Schahram Dustdar</author>
<title>Mining <i>Co-Author</i> Graphs &amp; More</title>
<year>2015</year>
<booktitle>X Conf</booktitle>
</inproceedings>
</dblp>
)";

}  // namespace

TEST_CASE("one inproceedings element yields one record") {
  const auto records = parse_dblp(kMinimal);
  REQUIRE(records.size() == 1);
  const RawRecord& r = records[0];
  CHECK(r.record_id == "conf/x/Li15");
  CHECK(r.kind == RecordKind::kInproceedings);
  REQUIRE(r.mentions.size() == 2);
  CHECK(r.mentions[0].surface_name == "Wei Li");
  CHECK(*r.mentions[0].gold_id == "0001");
  CHECK(r.mentions[1].surface_name == "Schahram Dustdar");
  CHECK(r.title == "Mining Co-Author Graphs & More");
  CHECK(r.year == 2015);
  CHECK(r.venue == "X Conf");
}

TEST_CASE("empty element stream gives no records") {
  CHECK(parse_dblp("").empty());
  CHECK(parse_dblp("<?xml version=\"1.0\"?>\n<dblp></dblp>\n").empty());
  CHECK(parse_dblp("<dblp/>").empty());
}

TEST_CASE("entities and character references resolve to UTF-8") {
  const auto records = parse_dblp(
      "<dblp><article key=\"a\"><author>J&ouml;rg M&#252;ller</author>"
      "<author>S&#x00E9;bastien</author><title>&lt;t&gt;</title>"
      "<journal>J</journal></article></dblp>");
  REQUIRE(records.size() == 1);
  CHECK(records[0].mentions[0].surface_name == "J\xC3\xB6rg M\xC3\xBCller");
  CHECK(records[0].mentions[1].surface_name == "S\xC3\xA9" "bastien");
  CHECK(records[0].title == "<t>");
  CHECK(records[0].venue == "J");
}

TEST_CASE("ISO-8859-1 input is transcoded") {
  const std::string xml =
      "<?xml version=\"1.0\" encoding=\"ISO-8859-1\"?><dblp>"
      "<article key=\"a\"><author>J\xF6rg</author></article></dblp>";
  const auto records = parse_dblp(xml);
  REQUIRE(records.size() == 1);
  CHECK(records[0].mentions[0].surface_name == "J\xC3\xB6rg");
}

TEST_CASE("editor-only and unknown elements are ingested") {
  const auto records = parse_dblp(
      "<dblp><proceedings key=\"p\"><editor>Ed Itor</editor><title>P</title>"
      "</proceedings><data key=\"d\"><author>A B</author></data>"
      "<!-- comment --><www key=\"w\"/></dblp>");
  REQUIRE(records.size() == 3);
  CHECK(records[0].kind == RecordKind::kProceedings);
  CHECK(records[0].mentions.empty());
  CHECK(records[1].kind == RecordKind::kOther);
  CHECK(records[1].mentions.size() == 1);
  CHECK(records[2].kind == RecordKind::kWww);
}

TEST_CASE("a publication element as document root is one record") {
  const auto records = parse_dblp(
      "<article key=\"solo\"><author>A B</author><author>C D</author></article>");
  REQUIRE(records.size() == 1);
  CHECK(records[0].mentions.size() == 2);
}

TEST_CASE("CDATA sections contribute text") {
  const auto records = parse_dblp(
      "<dblp><article key=\"a\"><title><![CDATA[x < y]]></title></article></dblp>");
  CHECK(records.at(0).title == "x < y");
}

TEST_CASE("malformed XML reports a byte offset") {
  const std::string bad = "<dblp><article key=\"a\"><author>A</title></article></dblp>";
  try {
    parse_dblp(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == bad.find("</title>") + 8);
  }
  CHECK_THROWS_AS(parse_dblp("<dblp><article key=\"a\">"), ParseError);
  CHECK_THROWS_AS(parse_dblp("<dblp><article>x</article></dblp>"), ParseError);
  CHECK_THROWS_AS(parse_dblp("<dblp><article key=\"a\"><author>&bogus;</author>"
                             "</article></dblp>"),
                  ParseError);
  CHECK_THROWS_AS(parse_dblp("<dblp><article key=\"a\"><author> </author>"
                             "</article></dblp>"),
                  ParseError);
  CHECK_THROWS_AS(parse_dblp("<dblp></dblp><dblp></dblp>"), ParseError);
}

TEST_CASE("reader pulls records one at a time") {
  MemorySource source(kMinimal);
  DblpReader reader(source);
  auto first = reader.next();
  REQUIRE(first);
  const auto after_first = reader.offset();
  CHECK(after_first > 0);
  CHECK_FALSE(reader.next());
  CHECK_FALSE(reader.next());
}

TEST_CASE("writer output parses back to the same records") {
  Rng rng(11);
  const RecordKind kinds[] = {RecordKind::kArticle, RecordKind::kInproceedings,
                              RecordKind::kPhdthesis, RecordKind::kBook};
  std::vector<RawRecord> records;
  for (int i = 0; i < 200; ++i) {
    RawRecord r;
    r.record_id = "k/" + std::to_string(i) + "&<\"";
    r.kind = kinds[rng.below(4)];
    r.title = "T " + std::to_string(rng.below(1000)) + " & <x>";
    if (rng.chance(0.7)) r.venue = "V" + std::to_string(rng.below(5));
    if (rng.chance(0.8)) r.year = static_cast<int>(1980 + rng.below(40));
    const auto n = rng.between(0, 4);
    for (std::int64_t k = 0; k < n; ++k) {
      std::string name = "Name " + std::string(1, static_cast<char>('A' + rng.below(26)));
      if (rng.chance(0.3)) name += " 000" + std::to_string(rng.between(1, 9));
      r.mentions.push_back(parse_mention(name));
    }
    records.push_back(std::move(r));
  }
  CHECK(parse_dblp(to_dblp_xml(records)) == records);
}
