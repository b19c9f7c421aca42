#pragma once

#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/gold.hpp"
#include "disambig/record.hpp"

namespace disambig {

// Canonical record file: one JSON object per line,
//   {"id":..,"kind":..,"title":..,"venue":..,"year":..,
//    "authors":[{"name":..,"gold_id":..}]}
// with null for absent venue, year and gold_id.

std::string to_canonical_line(const RawRecord& record);
/// Throws ParseError; `offset` is the byte position of the line, used in
/// diagnostics.
RawRecord from_canonical_line(std::string_view line, std::uint64_t offset = 0);

void write_canonical(std::ostream& out, const std::vector<RawRecord>& records);
/// Calls `sink` once per non-empty line.
void read_canonical(std::istream& in,
                    const std::function<void(RawRecord&&)>& sink);
std::vector<RawRecord> read_canonical_file(const std::string& path);

/// {block_key: {gold_key: [record_id, ...]}}
std::string gold_to_json(const GoldStandard& gold);
GoldStandard gold_from_json(std::string_view text);
GoldStandard read_gold_file(const std::string& path);

}  // namespace disambig
