#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disambig/clustering.hpp"
#include "disambig/coauthor_graph.hpp"
#include "disambig/gold.hpp"

namespace disambig {

struct WeightedEdge {
  std::uint32_t u;  // u < v
  std::uint32_t v;
  double weight;

  bool operator==(const WeightedEdge&) const = default;
};

/// Undirected weighted graph over one block's publications. Node i is the
/// block's i-th member.
class WeightedPubGraph {
 public:
  WeightedPubGraph() = default;
  /// Edges are normalised to u < v and sorted. Throws ArgumentError for
  /// self-loops, out-of-range endpoints, duplicate pairs or non-positive
  /// weights.
  WeightedPubGraph(std::vector<std::string> nodes,
                   std::vector<WeightedEdge> edges);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  double total_weight() const { return total_weight_; }
  /// Weight of edge {u, v}, 0 when absent.
  double weight(std::uint32_t u, std::uint32_t v) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<WeightedEdge> edges_;
  double total_weight_ = 0.0;
};

/// Community of every node, dense ids from 0 numbered by first appearance.
struct Partition {
  std::vector<std::uint32_t> assignment;

  /// Canonicalises any labelling.
  static Partition from_labels(const std::vector<std::uint32_t>& labels);
  static Partition singletons(std::size_t n);
  std::size_t community_count() const;

  bool operator==(const Partition&) const = default;
};

struct LouvainConfig {
  double resolution = 1.0;
  // Upper bound on local-moving plus aggregation rounds.
  int max_passes = 100;
  // Nodes are always visited in sorted id order; the seed is unused.
  std::uint64_t seed = 0;
};

struct LouvainResult {
  Partition partition;
  // Modularity after each pass that moved at least one node.
  std::vector<double> pass_modularity;
  int passes = 0;
};

/// Edge weight 2 for co-author order 1, weight 1 for order 2, no edge
/// otherwise. The block's own name is excluded from paths.
WeightedPubGraph build_similarity_graph(const Block& block,
                                        DistanceSearcher& searcher);
WeightedPubGraph build_similarity_graph(const Block& block,
                                        const CoauthorGraph& graph);

/// Q = sum_c [ W_in(c)/W - resolution * (S(c) / 2W)^2 ].
/// Throws UndefinedModularity when the graph has no edges.
double modularity(const WeightedPubGraph& graph, const Partition& partition,
                  double resolution = 1.0);

/// Multi-level Louvain: greedy local moving to convergence, then community
/// aggregation, repeated while a pass moves any node. Deterministic; among
/// equally good target communities the lowest id wins and a node stays put
/// unless a move strictly increases Q.
LouvainResult louvain(const WeightedPubGraph& graph,
                      const LouvainConfig& config = {});

struct Refinement {
  Clustering clustering;
  std::optional<double> q_before;  // base clustering on the weighted graph
  std::optional<double> q_after;
  int passes = 0;
};

/// Replaces the threshold components by Louvain communities of the block's
/// weighted similarity graph. Publications isolated in that graph remain
/// singletons.
Refinement refine_block(const Block& block, const Clustering& base,
                        DistanceSearcher& searcher, const LouvainConfig& config);

Clustering refine_clustering(const Block& block, const Clustering& base,
                             const CoauthorGraph& graph,
                             const LouvainConfig& config = {});

}  // namespace disambig
