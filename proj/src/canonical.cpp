#include "disambig/canonical.hpp"

#include <fstream>
#include <sstream>

#include "disambig/errors.hpp"
#include "json.hpp"

namespace disambig {

using ordered_json = nlohmann::ordered_json;

std::string to_canonical_line(const RawRecord& record) {
  ordered_json j;
  j["id"] = record.record_id;
  j["kind"] = kind_name(record.kind);
  j["title"] = record.title;
  j["venue"] = record.venue ? ordered_json(*record.venue) : ordered_json();
  j["year"] = record.year ? ordered_json(*record.year) : ordered_json();
  ordered_json authors = ordered_json::array();
  for (const AuthorMention& m : record.mentions) {
    ordered_json a;
    a["name"] = m.surface_name;
    a["gold_id"] = m.gold_id ? ordered_json(*m.gold_id) : ordered_json();
    authors.push_back(std::move(a));
  }
  j["authors"] = std::move(authors);
  return j.dump();
}

RawRecord from_canonical_line(std::string_view line, std::uint64_t offset) {
  try {
    const auto j = nlohmann::json::parse(line);
    RawRecord r;
    r.record_id = j.at("id").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    r.kind = kind_from_name(kind);
    r.title = j.at("title").get<std::string>();
    if (!j.at("venue").is_null()) r.venue = j.at("venue").get<std::string>();
    if (!j.at("year").is_null()) r.year = j.at("year").get<int>();
    for (const auto& a : j.at("authors")) {
      std::string raw = a.at("name").get<std::string>();
      if (!a.at("gold_id").is_null()) {
        raw += " " + a.at("gold_id").get<std::string>();
      }
      AuthorMention m = parse_mention(raw);
      r.mentions.push_back(std::move(m));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad canonical record: ") + e.what(), offset);
  } catch (const MalformedMention& e) {
    throw ParseError(std::string("bad canonical record: ") + e.what(), offset);
  }
}

void write_canonical(std::ostream& out, const std::vector<RawRecord>& records) {
  for (const RawRecord& r : records) out << to_canonical_line(r) << '\n';
}

void read_canonical(std::istream& in,
                    const std::function<void(RawRecord&&)>& sink) {
  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    const std::uint64_t here = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    sink(from_canonical_line(line, here));
  }
}

std::vector<RawRecord> read_canonical_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::vector<RawRecord> records;
  read_canonical(in, [&](RawRecord&& r) { records.push_back(std::move(r)); });
  return records;
}

std::string gold_to_json(const GoldStandard& gold) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [block_key, authors] : gold.entries) {
    nlohmann::json block = nlohmann::json::object();
    for (const auto& [gold_key, ids] : authors) {
      block[gold_key] = std::vector<std::string>(ids.begin(), ids.end());
    }
    j[block_key] = std::move(block);
  }
  return j.dump(1);
}

GoldStandard gold_from_json(std::string_view text) {
  GoldStandard gold;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw ParseError("gold standard must be an object", 0);
    for (const auto& [block_key, authors] : j.items()) {
      auto& block = gold.entries[block_key];
      for (const auto& [gold_key, ids] : authors.items()) {
        auto& set = block[gold_key];
        for (const auto& id : ids) set.insert(id.get<std::string>());
      }
    }
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad gold standard: ") + e.what(), e.byte);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad gold standard: ") + e.what(), 0);
  }
  return gold;
}

GoldStandard read_gold_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return gold_from_json(buffer.str());
}

}  // namespace disambig
