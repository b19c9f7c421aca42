#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "disambig/gold.hpp"

namespace disambig {

/// A partition of one block's publications. Labels are canonical: clusters
/// are numbered in order of their lowest record id, so two clusterings of
/// the same members compare equal iff they are the same partition. The
/// public cluster id is that lowest record id.
class Clustering {
 public:
  Clustering() = default;
  /// `members` must be sorted and unique; `labels` is any integer labelling
  /// parallel to it.
  Clustering(std::string block_key, std::vector<std::string> members,
             std::span<const std::uint32_t> labels);

  static Clustering singletons(const Block& block);
  static Clustering one_cluster(const Block& block);
  /// The gold partition of a block.
  static Clustering gold(const Block& block);

  const std::string& block_key() const { return block_key_; }
  const std::vector<std::string>& members() const { return members_; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }
  std::size_t size() const { return members_.size(); }
  std::size_t cluster_count() const { return first_member_.size(); }

  /// Lowest record id of the cluster holding member `index`.
  const std::string& cluster_id_at(std::size_t index) const {
    return members_[first_member_[labels_[index]]];
  }
  /// Throws LookupError for records outside the block.
  const std::string& cluster_id(const std::string& record_id) const;

  std::vector<std::vector<std::string>> clusters() const;

  bool operator==(const Clustering&) const = default;

 private:
  std::string block_key_;
  std::vector<std::string> members_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> first_member_;
};

/// Is every cluster of `fine` contained in a single cluster of `coarse`?
bool is_coarsening_of(const Clustering& coarse, const Clustering& fine);

/// TSV rows "block_key record_id cluster_id gold_key", no header.
void write_cluster_tsv(std::ostream& out, const Clustering& clustering,
                       const Block& block);
inline constexpr const char* kClusterTsvHeader =
    "block_key\trecord_id\tcluster_id\tgold_key\n";

}  // namespace disambig
