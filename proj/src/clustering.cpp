#include "disambig/clustering.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "disambig/errors.hpp"

namespace disambig {

Clustering::Clustering(std::string block_key, std::vector<std::string> members,
                       std::span<const std::uint32_t> labels)
    : block_key_(std::move(block_key)), members_(std::move(members)) {
  if (labels.size() != members_.size()) {
    throw ArgumentError("clustering labels do not match members");
  }
  if (!std::is_sorted(members_.begin(), members_.end()) ||
      std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw ArgumentError("clustering members must be sorted and unique");
  }
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  labels_.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, inserted] =
        dense.emplace(labels[i], static_cast<std::uint32_t>(dense.size()));
    if (inserted) first_member_.push_back(i);
    labels_.push_back(it->second);
  }
}

Clustering Clustering::singletons(const Block& block) {
  std::vector<std::uint32_t> labels(block.size());
  for (std::uint32_t i = 0; i < labels.size(); ++i) labels[i] = i;
  return Clustering(block.block_key, block.members, labels);
}

Clustering Clustering::one_cluster(const Block& block) {
  std::vector<std::uint32_t> labels(block.size(), 0);
  return Clustering(block.block_key, block.members, labels);
}

Clustering Clustering::gold(const Block& block) {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::uint32_t> labels;
  labels.reserve(block.size());
  for (const std::string& label : block.labels) {
    labels.push_back(
        ids.emplace(label, static_cast<std::uint32_t>(ids.size())).first->second);
  }
  return Clustering(block.block_key, block.members, labels);
}

const std::string& Clustering::cluster_id(const std::string& record_id) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), record_id);
  if (it == members_.end() || *it != record_id) {
    throw LookupError("record " + record_id + " is not in block " + block_key_);
  }
  return cluster_id_at(static_cast<std::size_t>(it - members_.begin()));
}

std::vector<std::vector<std::string>> Clustering::clusters() const {
  std::vector<std::vector<std::string>> out(cluster_count());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    out[labels_[i]].push_back(members_[i]);
  }
  return out;
}

bool is_coarsening_of(const Clustering& coarse, const Clustering& fine) {
  if (coarse.members() != fine.members()) return false;
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> image(fine.cluster_count(), kUnset);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    std::uint32_t& target = image[fine.labels()[i]];
    if (target == kUnset) target = coarse.labels()[i];
    if (target != coarse.labels()[i]) return false;
  }
  return true;
}

void write_cluster_tsv(std::ostream& out, const Clustering& clustering,
                       const Block& block) {
  for (std::size_t i = 0; i < clustering.size(); ++i) {
    out << clustering.block_key() << '\t' << clustering.members()[i] << '\t'
        << clustering.cluster_id_at(i) << '\t'
        << block.gold_label(clustering.members()[i]) << '\n';
  }
}

}  // namespace disambig
