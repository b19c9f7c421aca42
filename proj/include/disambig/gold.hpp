#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "disambig/record.hpp"

namespace disambig {

/// block_key -> gold author key ("Wei Li 0001") -> record ids.
struct GoldStandard {
  std::map<std::string, std::map<std::string, std::set<std::string>>> entries;

  std::size_t author_count() const;
  bool operator==(const GoldStandard&) const = default;
};

struct GoldConfig {
  // Blocks with fewer distinct gold identities are dropped. 1 keeps every
  // name that has at least one disambiguated author.
  std::size_t min_gold_authors = 1;
};

/// All gold publications of one ambiguous name.
struct Block {
  std::string block_key;
  std::vector<std::string> members;  // sorted, unique
  std::vector<std::string> labels;   // gold author key, parallel to members

  std::size_t size() const { return members.size(); }
  /// Index of `record_id` in members; throws LookupError when absent.
  std::size_t index_of(const std::string& record_id) const;
  const std::string& gold_label(const std::string& record_id) const;
};

struct BlockSet {
  std::vector<Block> blocks;  // sorted by block_key

  std::size_t size() const { return blocks.size(); }
  std::size_t publication_count() const;
};

/// Incremental form of build_gold_standard for streamed records.
class GoldBuilder {
 public:
  void add(const RawRecord& record);
  GoldStandard finish(const GoldConfig& config = {}) &&;

 private:
  GoldStandard gold_;
};

/// Drops blocks with fewer than config.min_gold_authors gold identities.
void apply_gold_config(GoldStandard& gold, const GoldConfig& config);

GoldStandard build_gold_standard(std::span<const RawRecord> records,
                                 const GoldConfig& config = {});

/// Throws DataIntegrityError when a record carries two gold identities of
/// the same name.
BlockSet build_blocks(const GoldStandard& gold);

/// Uniform sample of `count` blocks without replacement, returned in
/// block_key order. Throws ArgumentError when count exceeds the set size.
BlockSet sample_blocks(const BlockSet& blocks, std::size_t count,
                       std::uint64_t seed);

}  // namespace disambig
