#include "disambig/threshold_cluster.hpp"

#include <algorithm>

#include "disambig/disjoint_set.hpp"
#include "disambig/errors.hpp"

namespace disambig {

std::uint64_t count_comparisons(const BlockSet& blocks) {
  std::uint64_t total = 0;
  for (const Block& b : blocks.blocks) {
    const std::uint64_t m = b.size();
    total += m * (m - (m > 0 ? 1 : 0)) / 2;
  }
  return total;
}

Clustering cluster_block(const Block& block, DistanceSearcher& searcher,
                         int threshold, ClusterStats* stats,
                         PairStrategy strategy) {
  if (threshold < 1 || threshold % 2 == 0) {
    throw ArgumentError("threshold must be a positive odd number");
  }
  const CoauthorGraph& graph = searcher.graph();
  const std::size_t m = block.size();
  std::vector<PubIndex> nodes(m);
  for (std::size_t i = 0; i < m; ++i) nodes[i] = graph.pub_index(block.members[i]);
  const std::optional<AuthorIndex> focal = graph.find_author(block.block_key);

  DisjointSet sets(m);
  std::uint64_t comparisons = 0;
  std::uint64_t similar = 0;

  if (strategy == PairStrategy::kPairwise) {
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t j = i + 1; j < m; ++j) {
        ++comparisons;
        if (searcher.distance(nodes[i], nodes[j], threshold, focal).finite()) {
          ++similar;
          sets.unite(i, j);
        }
      }
    }
  } else {
    // Block members are a sorted subset of the graph's sorted ids, so graph
    // index order and member order agree.
    const int order = (threshold + 1) / 2;
    std::vector<std::uint8_t> near(m, 0);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t i = 0; i < m; ++i) {
      touched.clear();
      for (const auto& [q, k] : searcher.within(nodes[i], order, focal)) {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), q);
        if (it == nodes.end() || *it != q) continue;
        const auto j = static_cast<std::uint32_t>(it - nodes.begin());
        near[j] = 1;
        touched.push_back(j);
      }
      for (std::uint32_t j = i + 1; j < m; ++j) {
        ++comparisons;
        if (near[j]) {
          ++similar;
          sets.unite(i, j);
        }
      }
      for (std::uint32_t j : touched) near[j] = 0;
    }
  }

  if (stats) {
    stats->comparisons += comparisons;
    stats->similar_pairs += similar;
  }
  const std::vector<std::uint32_t> roots = sets.roots();
  return Clustering(block.block_key, block.members, roots);
}

Clustering cluster_block(const Block& block, const CoauthorGraph& graph,
                         int threshold, ClusterStats* stats,
                         PairStrategy strategy) {
  DistanceSearcher searcher(graph);
  return cluster_block(block, searcher, threshold, stats, strategy);
}

}  // namespace disambig
