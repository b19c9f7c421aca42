#pragma once

#include <cstdint>

#include "disambig/clustering.hpp"
#include "disambig/coauthor_graph.hpp"
#include "disambig/gold.hpp"

namespace disambig {

/// Total pairwise comparisons over all blocks: sum of m(m-1)/2.
std::uint64_t count_comparisons(const BlockSet& blocks);

enum class PairStrategy {
  // One bounded search per member, pairs answered from its result.
  kBatched,
  // One bounded search per pair.
  kPairwise,
};

struct ClusterStats {
  std::uint64_t comparisons = 0;    // pair evaluations
  std::uint64_t similar_pairs = 0;  // evaluations that came out true
};

/// Compares every unordered pair of the block's publications; a pair is
/// similar when its distance, with the block's own name removed from the
/// graph, is at most `threshold`. Similar pairs are merged, so the result is
/// the connected components of the similarity relation; publications similar
/// to nothing stay singletons.
///
/// `threshold` must be a positive odd number. Throws LookupError when a
/// member is missing from the graph. `stats`, when given, is incremented.
Clustering cluster_block(const Block& block, DistanceSearcher& searcher,
                         int threshold, ClusterStats* stats = nullptr,
                         PairStrategy strategy = PairStrategy::kBatched);

Clustering cluster_block(const Block& block, const CoauthorGraph& graph,
                         int threshold, ClusterStats* stats = nullptr,
                         PairStrategy strategy = PairStrategy::kBatched);

}  // namespace disambig
