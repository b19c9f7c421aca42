#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disambig/record.hpp"

namespace disambig {

using PubIndex = std::uint32_t;
using AuthorIndex = std::uint32_t;

/// Shortest-path length between two publications counted as the number of
/// intermediate nodes. Paths alternate publication and author nodes, so any
/// finite value is odd: 1 for a shared co-author, 3 for a co-author of a
/// co-author.
class PubDistance {
 public:
  static PubDistance infinite() { return PubDistance(); }
  static PubDistance from_hops(int publication_hops) {
    return PubDistance(2 * publication_hops - 1);
  }

  bool finite() const { return value_.has_value(); }
  /// Throws std::bad_optional_access when infinite.
  int value() const { return *value_; }
  /// Co-author order k = (D + 1) / 2.
  int order() const { return (*value_ + 1) / 2; }

  bool operator==(const PubDistance&) const = default;

 private:
  PubDistance() = default;
  explicit PubDistance(int v) : value_(v) {}
  std::optional<int> value_;
};

/// Bipartite author/publication network. Author identity is the
/// suffix-stripped surface name, so homonymous co-authors share a node.
/// Publications without authors are left out. Node tables are sorted, which
/// makes publication neighbor lists sorted by record id.
class CoauthorGraph {
 public:
  CoauthorGraph() = default;

  /// Throws DataIntegrityError on duplicate record ids.
  static CoauthorGraph build(std::span<const RawRecord> records);

  std::size_t pub_count() const { return pub_ids_.size(); }
  std::size_t author_count() const { return author_names_.size(); }
  std::size_t edge_count() const { return pub_adj_.size(); }

  std::optional<PubIndex> find_pub(std::string_view record_id) const;
  std::optional<AuthorIndex> find_author(std::string_view name) const;
  /// Throws LookupError.
  PubIndex pub_index(std::string_view record_id) const;

  const std::string& pub_id(PubIndex p) const { return pub_ids_[p]; }
  const std::string& author_name(AuthorIndex a) const {
    return author_names_[a];
  }

  std::span<const AuthorIndex> authors_of(PubIndex p) const {
    return {pub_adj_.data() + pub_offsets_[p],
            pub_adj_.data() + pub_offsets_[p + 1]};
  }
  std::span<const PubIndex> pubs_of(AuthorIndex a) const {
    return {author_adj_.data() + author_offsets_[a],
            author_adj_.data() + author_offsets_[a + 1]};
  }

  // Binary cache layout (native little-endian):
  //   "DSGRAPH\0" | u32 version | u64 pubs | u64 authors | u64 edges
  //   pubs x (u32 length, bytes) | authors x (u32 length, bytes)
  //   u64[pubs + 1] offsets | u32[edges] author indices
  // The author-side adjacency is rebuilt on load.
  void save(std::ostream& out) const;
  /// Throws ParseError on a bad header or truncated data.
  static CoauthorGraph load(std::istream& in);

  bool operator==(const CoauthorGraph&) const = default;

 private:
  void build_author_side();

  std::vector<std::string> pub_ids_;
  std::vector<std::string> author_names_;
  std::vector<std::uint64_t> pub_offsets_{0};
  std::vector<AuthorIndex> pub_adj_;
  std::vector<std::uint64_t> author_offsets_{0};
  std::vector<PubIndex> author_adj_;
};

/// Reusable breadth-first search state for one graph. Not thread-safe; use
/// one searcher per worker.
class DistanceSearcher {
 public:
  explicit DistanceSearcher(const CoauthorGraph& graph);

  /// `max_distance` must be odd and >= 1. The excluded author's node is
  /// treated as absent.
  PubDistance distance(PubIndex from, PubIndex to, int max_distance,
                       std::optional<AuthorIndex> excluded);

  /// Every publication other than `from` within co-author order
  /// `max_order`, paired with its minimal order, sorted by index.
  std::vector<std::pair<PubIndex, int>> within(
      PubIndex from, int max_order, std::optional<AuthorIndex> excluded);

  const CoauthorGraph& graph() const { return graph_; }

 private:
  void next_epoch();

  const CoauthorGraph& graph_;
  std::vector<std::uint32_t> pub_seen_;
  std::vector<std::uint32_t> author_seen_;
  std::uint32_t epoch_ = 0;
  std::vector<PubIndex> frontier_;
  std::vector<PubIndex> next_frontier_;
};

/// Throws LookupError for unknown ids, ArgumentError for p1 == p2 or a bound
/// that is not a positive odd number.
PubDistance pub_distance(const CoauthorGraph& graph, std::string_view p1,
                         std::string_view p2, int max_distance,
                         std::string_view excluded_author);

/// record_id -> minimal co-author order, for orders 1..k.
std::map<std::string, int> pubs_within(const CoauthorGraph& graph,
                                       std::string_view record_id, int k,
                                       std::string_view excluded_author);

}  // namespace disambig
