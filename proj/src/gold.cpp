#include "disambig/gold.hpp"

#include <algorithm>
#include <numeric>

#include "disambig/errors.hpp"
#include "disambig/random.hpp"

namespace disambig {

std::size_t GoldStandard::author_count() const {
  std::size_t n = 0;
  for (const auto& [key, authors] : entries) n += authors.size();
  return n;
}

std::size_t Block::index_of(const std::string& record_id) const {
  const auto it = std::lower_bound(members.begin(), members.end(), record_id);
  if (it == members.end() || *it != record_id) {
    throw LookupError("record " + record_id + " is not in block " + block_key);
  }
  return static_cast<std::size_t>(it - members.begin());
}

const std::string& Block::gold_label(const std::string& record_id) const {
  return labels[index_of(record_id)];
}

std::size_t BlockSet::publication_count() const {
  std::size_t n = 0;
  for (const Block& b : blocks) n += b.size();
  return n;
}

void GoldBuilder::add(const RawRecord& record) {
  for (const AuthorMention& m : record.mentions) {
    if (!m.gold_id) continue;
    gold_.entries[m.surface_name][m.gold_key()].insert(record.record_id);
  }
}

GoldStandard GoldBuilder::finish(const GoldConfig& config) && {
  apply_gold_config(gold_, config);
  return std::move(gold_);
}

void apply_gold_config(GoldStandard& gold, const GoldConfig& config) {
  std::erase_if(gold.entries, [&](const auto& entry) {
    return entry.second.size() < config.min_gold_authors;
  });
}

GoldStandard build_gold_standard(std::span<const RawRecord> records,
                                 const GoldConfig& config) {
  GoldBuilder builder;
  for (const RawRecord& record : records) builder.add(record);
  return std::move(builder).finish(config);
}

BlockSet build_blocks(const GoldStandard& gold) {
  BlockSet set;
  set.blocks.reserve(gold.entries.size());
  for (const auto& [block_key, authors] : gold.entries) {
    std::map<std::string, std::string> label_of;
    for (const auto& [gold_key, ids] : authors) {
      for (const std::string& id : ids) {
        const auto [it, inserted] = label_of.emplace(id, gold_key);
        if (!inserted) {
          throw DataIntegrityError("record " + id + " carries both " +
                                   it->second + " and " + gold_key);
        }
      }
    }
    if (label_of.empty()) continue;
    Block block;
    block.block_key = block_key;
    block.members.reserve(label_of.size());
    block.labels.reserve(label_of.size());
    for (auto& [id, label] : label_of) {
      block.members.push_back(id);
      block.labels.push_back(label);
    }
    set.blocks.push_back(std::move(block));
  }
  return set;
}

BlockSet sample_blocks(const BlockSet& blocks, std::size_t count,
                       std::uint64_t seed) {
  const std::size_t n = blocks.size();
  if (count > n) {
    throw ArgumentError("cannot sample " + std::to_string(count) +
                        " blocks from " + std::to_string(n));
  }
  // Partial Fisher-Yates.
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
  }
  order.resize(count);
  std::sort(order.begin(), order.end());  // blocks are already key-sorted
  BlockSet sample;
  sample.blocks.reserve(count);
  for (std::size_t i : order) sample.blocks.push_back(blocks.blocks[i]);
  return sample;
}

}  // namespace disambig
