#include "disambig/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "disambig/errors.hpp"

namespace disambig {

WeightedPubGraph::WeightedPubGraph(std::vector<std::string> nodes,
                                   std::vector<WeightedEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const auto n = static_cast<std::uint32_t>(nodes_.size());
  for (WeightedEdge& e : edges_) {
    if (e.u == e.v) throw ArgumentError("self-loop in similarity graph");
    if (e.u >= n || e.v >= n) throw ArgumentError("edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ArgumentError("edge weights must be positive");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
      throw ArgumentError("duplicate edge in similarity graph");
    }
  }
  for (const WeightedEdge& e : edges_) total_weight_ += e.weight;
}

double WeightedPubGraph::weight(std::uint32_t u, std::uint32_t v) const {
  if (u > v) std::swap(u, v);
  const auto it = std::lower_bound(
      edges_.begin(), edges_.end(), std::pair(u, v),
      [](const WeightedEdge& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
        return std::pair(e.u, e.v) < k;
      });
  return it != edges_.end() && it->u == u && it->v == v ? it->weight : 0.0;
}

Partition Partition::from_labels(const std::vector<std::uint32_t>& labels) {
  Partition p;
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  p.assignment.reserve(labels.size());
  for (std::uint32_t label : labels) {
    p.assignment.push_back(
        dense.emplace(label, static_cast<std::uint32_t>(dense.size()))
            .first->second);
  }
  return p;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.assignment.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) p.assignment[i] = i;
  return p;
}

std::size_t Partition::community_count() const {
  if (assignment.empty()) return 0;
  return *std::max_element(assignment.begin(), assignment.end()) + 1;
}

WeightedPubGraph build_similarity_graph(const Block& block,
                                        DistanceSearcher& searcher) {
  const CoauthorGraph& graph = searcher.graph();
  const std::size_t m = block.size();
  std::vector<PubIndex> nodes(m);
  for (std::size_t i = 0; i < m; ++i) nodes[i] = graph.pub_index(block.members[i]);
  const std::optional<AuthorIndex> focal = graph.find_author(block.block_key);

  std::vector<WeightedEdge> edges;
  for (std::uint32_t i = 0; i < m; ++i) {
    for (const auto& [q, order] : searcher.within(nodes[i], 2, focal)) {
      if (q <= nodes[i]) continue;  // each pair once, from its lower end
      const auto it = std::lower_bound(nodes.begin(), nodes.end(), q);
      if (it == nodes.end() || *it != q) continue;
      const auto j = static_cast<std::uint32_t>(it - nodes.begin());
      edges.push_back({i, j, order == 1 ? 2.0 : 1.0});
    }
  }
  return WeightedPubGraph(block.members, std::move(edges));
}

WeightedPubGraph build_similarity_graph(const Block& block,
                                        const CoauthorGraph& graph) {
  DistanceSearcher searcher(graph);
  return build_similarity_graph(block, searcher);
}

double modularity(const WeightedPubGraph& graph, const Partition& partition,
                  double resolution) {
  if (partition.assignment.size() != graph.node_count()) {
    throw ArgumentError("partition does not cover the graph");
  }
  const double total = graph.total_weight();
  if (graph.edges().empty() || total <= 0.0) {
    throw UndefinedModularity("modularity of an edgeless graph");
  }
  const std::size_t k = partition.community_count();
  std::vector<double> inside(k, 0.0);
  std::vector<double> degree(k, 0.0);
  for (const WeightedEdge& e : graph.edges()) {
    const std::uint32_t cu = partition.assignment[e.u];
    const std::uint32_t cv = partition.assignment[e.v];
    if (cu == cv) inside[cu] += e.weight;
    degree[cu] += e.weight;
    degree[cv] += e.weight;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double share = degree[c] / (2.0 * total);
    q += inside[c] / total - resolution * share * share;
  }
  return q;
}

namespace {

// One level of the Louvain hierarchy. Intra-community weight of aggregated
// nodes lives in self_loop; adjacency never holds self-loops.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
  std::vector<double> self_loop;
  std::vector<double> degree;

  std::size_t size() const { return adjacency.size(); }
};

LevelGraph level_from(const WeightedPubGraph& graph) {
  LevelGraph level;
  const std::size_t n = graph.node_count();
  level.adjacency.resize(n);
  level.self_loop.assign(n, 0.0);
  level.degree.assign(n, 0.0);
  for (const WeightedEdge& e : graph.edges()) {
    level.adjacency[e.u].emplace_back(e.v, e.weight);
    level.adjacency[e.v].emplace_back(e.u, e.weight);
    level.degree[e.u] += e.weight;
    level.degree[e.v] += e.weight;
  }
  return level;
}

double level_modularity(const LevelGraph& level,
                        const std::vector<std::uint32_t>& community,
                        double total, double resolution) {
  const std::size_t n = level.size();
  std::vector<double> inside(n, 0.0);
  std::vector<double> degree(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t c = community[i];
    inside[c] += level.self_loop[i];
    degree[c] += level.degree[i];
    for (const auto& [j, w] : level.adjacency[i]) {
      if (i < j && community[j] == c) inside[c] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double share = degree[c] / (2.0 * total);
    q += inside[c] / total - resolution * share * share;
  }
  return q;
}

// Greedy node moves until a full sweep changes nothing. Returns whether any
// node moved.
bool local_moving(const LevelGraph& level, double total, double resolution,
                  std::vector<std::uint32_t>& community) {
  // Gains are compared in units of edge weight (Q gain times W).
  constexpr double kEpsilon = 1e-10;
  const std::size_t n = level.size();
  community.resize(n);
  std::vector<double> community_degree(level.degree);
  std::vector<std::uint32_t> members(n, 1);
  for (std::uint32_t i = 0; i < n; ++i) community[i] = i;
  std::set<std::uint32_t> empty;

  std::vector<double> link(n, 0.0);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint32_t> touched;
  bool moved_any = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t current = community[i];
      const double k_i = level.degree[i];
      touched.clear();
      for (const auto& [j, w] : level.adjacency[i]) {
        const std::uint32_t c = community[j];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += w;
      }
      community_degree[current] -= k_i;
      if (--members[current] == 0) empty.insert(current);

      const double scale = resolution * k_i / (2.0 * total);
      auto gain = [&](std::uint32_t c) {
        return link[c] - scale * community_degree[c];
      };
      std::uint32_t best = current;
      double best_gain = gain(current);
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        if (c == current) continue;
        const double g = gain(c);
        if (g > best_gain + kEpsilon) {
          best = c;
          best_gain = g;
        }
      }
      // Standing alone gains exactly 0.
      if (0.0 > best_gain + kEpsilon && members[current] > 0) {
        best = *empty.begin();
      }

      community[i] = best;
      community_degree[best] += k_i;
      if (members[best]++ == 0) empty.erase(best);
      if (best != current) moved = true;
      for (std::uint32_t c : touched) {
        link[c] = 0.0;
        seen[c] = 0;
      }
    }
    moved_any = moved_any || moved;
  }
  return moved_any;
}

// Renumbers communities by first appearance and collapses each into a node.
LevelGraph aggregate(const LevelGraph& level,
                     std::vector<std::uint32_t>& community) {
  const std::size_t n = level.size();
  std::vector<std::uint32_t> dense(n, UINT32_MAX);
  std::uint32_t count = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t& d = dense[community[i]];
    if (d == UINT32_MAX) d = count++;
    community[i] = d;
  }
  LevelGraph next;
  next.adjacency.resize(count);
  next.self_loop.assign(count, 0.0);
  next.degree.assign(count, 0.0);
  std::vector<std::map<std::uint32_t, double>> between(count);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t c = community[i];
    next.self_loop[c] += level.self_loop[i];
    next.degree[c] += level.degree[i];
    for (const auto& [j, w] : level.adjacency[i]) {
      if (j < i) continue;
      const std::uint32_t d = community[j];
      if (c == d) {
        next.self_loop[c] += w;
      } else {
        between[c][d] += w;
        between[d][c] += w;
      }
    }
  }
  for (std::uint32_t c = 0; c < count; ++c) {
    next.adjacency[c].assign(between[c].begin(), between[c].end());
  }
  return next;
}

}  // namespace

LouvainResult louvain(const WeightedPubGraph& graph,
                      const LouvainConfig& config) {
  if (!(config.resolution > 0.0)) {
    throw ArgumentError("resolution must be positive");
  }
  if (config.max_passes < 1) throw ArgumentError("max_passes must be >= 1");
  LouvainResult result;
  const std::size_t n = graph.node_count();
  std::vector<std::uint32_t> node_community(n);
  for (std::uint32_t i = 0; i < n; ++i) node_community[i] = i;
  const double total = graph.total_weight();
  if (graph.edges().empty()) {
    result.partition = Partition::singletons(n);
    return result;
  }

  LevelGraph level = level_from(graph);
  std::vector<std::uint32_t> community;
  while (result.passes < config.max_passes) {
    if (!local_moving(level, total, config.resolution, community)) break;
    ++result.passes;
    result.pass_modularity.push_back(
        level_modularity(level, community, total, config.resolution));
    level = aggregate(level, community);
    for (std::uint32_t& c : node_community) c = community[c];
  }
  result.partition = Partition::from_labels(node_community);
  return result;
}

Refinement refine_block(const Block& block, const Clustering& base,
                        DistanceSearcher& searcher,
                        const LouvainConfig& config) {
  if (base.members() != block.members) {
    throw ArgumentError("base clustering does not cover block " +
                        block.block_key);
  }
  const WeightedPubGraph weighted = build_similarity_graph(block, searcher);
  Refinement out;
  if (weighted.edges().empty()) {
    out.clustering = Clustering::singletons(block);
    return out;
  }
  out.q_before = modularity(weighted, Partition::from_labels(base.labels()),
                            config.resolution);
  const LouvainResult communities = louvain(weighted, config);
  out.q_after =
      modularity(weighted, communities.partition, config.resolution);
  out.passes = communities.passes;
  out.clustering = Clustering(block.block_key, block.members,
                              communities.partition.assignment);
  return out;
}

Clustering refine_clustering(const Block& block, const Clustering& base,
                             const CoauthorGraph& graph,
                             const LouvainConfig& config) {
  DistanceSearcher searcher(graph);
  return refine_block(block, base, searcher, config).clustering;
}

}  // namespace disambig
