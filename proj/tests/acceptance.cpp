// Acceptance suite. Prints one line per criterion and exits nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

#include "disambig/bcubed.hpp"
#include "disambig/community.hpp"
#include "disambig/dblp_xml.hpp"
#include "disambig/pipeline.hpp"
#include "disambig/synth.hpp"
#include "disambig/threshold_cluster.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace disambig;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  enum Status { kPass, kFail, kSkip } status = kPass;
  std::string detail;
};

Outcome fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }

// ---------------------------------------------------------------------------

Outcome bcubed_oracle() {
  Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = static_cast<std::size_t>(rng.between(1, 12));
    const auto classes = rng.between(1, 5);
    const auto clusters = rng.between(1, 6);
    Block block;
    block.block_key = "B";
    std::vector<std::uint32_t> labels;
    for (std::size_t i = 0; i < m; ++i) {
      block.members.push_back("r" + std::to_string(100 + i));
      block.labels.push_back("g" + std::to_string(rng.between(1, classes)));
      labels.push_back(static_cast<std::uint32_t>(rng.between(1, clusters)));
    }
    const Clustering c(block.block_key, block.members, labels);
    std::vector<std::string> predicted;
    for (std::size_t i = 0; i < m; ++i) predicted.push_back(c.cluster_id_at(i));
    const double alpha = trial % 2 ? 0.5 : 0.1 + 0.8 * rng.unit();

    const auto items = all_item_scores(c, block, {alpha, false});
    for (std::size_t i = 0; i < m; ++i) {
      const oracle::Scores o = oracle::bcubed_item(predicted, block.labels, i, alpha);
      worst = std::max({worst, std::abs(items[i].precision - o.precision),
                        std::abs(items[i].recall - o.recall),
                        std::abs(items[i].f - o.f)});
    }
    const BcubedScores s = block_scores(c, block, {alpha, false});
    const oracle::Scores o = oracle::bcubed_block(predicted, block.labels, alpha);
    worst = std::max({worst, std::abs(s.precision - o.precision),
                      std::abs(s.recall - o.recall), std::abs(s.f - o.f)});
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max deviation %.1e", worst);
  if (worst > 1e-12) return fail(buf);
  return {Outcome::kPass, std::string("1000 instances, ") + buf};
}

// ---------------------------------------------------------------------------

std::vector<RawRecord> random_block_corpus(Rng& rng, int trial) {
  if (trial % 2 == 0) {
    const auto pubs = static_cast<std::size_t>(rng.between(2, 200));
    return fixtures::random_corpus(rng, pubs, static_cast<std::size_t>(rng.between(3, 20)),
                                   static_cast<std::size_t>(rng.between(0, 30)));
  }
  SynthConfig cfg;
  cfg.blocks = 1;
  cfg.authors_min = 1;
  cfg.authors_max = 4;
  cfg.pubs_min = 1;
  cfg.pubs_max = 50;
  cfg.pool_size = static_cast<std::size_t>(rng.between(3, 10));
  cfg.topics_max = static_cast<std::size_t>(rng.between(1, 3));
  cfg.bridge_rate = rng.unit() * 0.5;
  cfg.seed = rng.below(1u << 30);
  return generate_synthetic(cfg).records;
}

Outcome clustering_components() {
  Rng rng(2002);
  std::size_t pubs_total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<RawRecord> records = random_block_corpus(rng, trial);
    const GoldStandard gold = build_gold_standard(records);
    const BlockSet blocks = build_blocks(gold);
    if (blocks.size() != 1) return fail("trial " + std::to_string(trial) + ": not one block");
    const Block& block = blocks.blocks[0];
    if (block.size() > 200) return fail("block larger than 200");
    pubs_total += block.size();
    const CoauthorGraph graph = CoauthorGraph::build(records);
    const oracle::NodeGraph reference(records);
    Clustering previous;
    for (int t : {1, 3}) {
      const Clustering got = cluster_block(block, graph, t);
      const std::vector<std::string> want =
          oracle::threshold_components(reference, block.members, block.block_key, t);
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (got.cluster_id_at(i) != want[i]) {
          return fail("trial " + std::to_string(trial) + " threshold " +
                      std::to_string(t) + ": component mismatch at " + block.members[i]);
        }
      }
      if (t == 3 && !is_coarsening_of(got, previous)) {
        return fail("trial " + std::to_string(trial) + ": threshold 3 does not coarsen 1");
      }
      previous = got;
    }
  }
  return {Outcome::kPass, "200 blocks, " + std::to_string(pubs_total) + " publications"};
}

// ---------------------------------------------------------------------------

Outcome comparison_audit() {
  std::size_t runs = 0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SynthConfig sc;
    sc.blocks = 15;
    sc.authors_min = 1;
    sc.pubs_min = 1;
    sc.pubs_max = 40;
    sc.bridge_rate = 0.2;
    sc.seed = seed;
    const SyntheticCorpus corpus = generate_synthetic(sc);
    const CoauthorGraph graph = CoauthorGraph::build(corpus.records);
    const BlockSet blocks = build_blocks(corpus.gold);
    for (std::size_t sample : {std::size_t{1}, std::size_t{7}, std::size_t{15}}) {
      ExperimentConfig cfg;
      cfg.sample_count = sample;
      cfg.seed = seed;
      cfg.thresholds = {1, 3, 5};
      const BlockSet chosen = select_blocks(blocks, cfg);
      std::uint64_t expected = 0;
      for (const Block& b : chosen.blocks) {
        const std::uint64_t m = b.size();
        expected += m * (m - 1) / 2;
      }
      const RunResult r = run_experiment(graph, chosen, cfg);
      if (r.expected_comparisons != expected) return fail("expected count mismatch");
      for (const ThresholdResult& t : r.thresholds) {
        if (t.comparisons != expected) {
          return fail("threshold " + std::to_string(t.threshold) + " made " +
                      std::to_string(t.comparisons) + " comparisons, expected " +
                      std::to_string(expected));
        }
        ++runs;
      }
      // Pairwise strategy counts the same pairs.
      ClusterStats stats;
      for (const Block& b : chosen.blocks) {
        cluster_block(b, graph, 3, &stats, PairStrategy::kPairwise);
      }
      if (stats.comparisons != expected) return fail("pairwise count mismatch");
    }
  }
  return {Outcome::kPass, std::to_string(runs) + " threshold runs audited"};
}

// ---------------------------------------------------------------------------

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("n" + std::to_string(100 + i));
  return out;
}

oracle::Matrix dense(const WeightedPubGraph& g) {
  oracle::Matrix w(g.node_count(), std::vector<double>(g.node_count(), 0.0));
  for (const WeightedEdge& e : g.edges()) w[e.u][e.v] = w[e.v][e.u] = e.weight;
  return w;
}

std::vector<std::pair<std::string, WeightedPubGraph>> louvain_fixed_set() {
  std::vector<std::pair<std::string, WeightedPubGraph>> set;
  for (std::uint32_t a = 3; a <= 6; ++a) {
    for (std::uint32_t b = 3; a + b <= 12 && b <= a; ++b) {
      for (double bridge : {1.0, 2.0}) {
        std::vector<WeightedEdge> e;
        for (std::uint32_t i = 0; i < a; ++i)
          for (std::uint32_t j = i + 1; j < a; ++j) e.push_back({i, j, 2.0});
        for (std::uint32_t i = a; i < a + b; ++i)
          for (std::uint32_t j = i + 1; j < a + b; ++j) e.push_back({i, j, 2.0});
        e.push_back({0, a, bridge});
        set.emplace_back("cliques " + std::to_string(a) + "+" + std::to_string(b),
                         WeightedPubGraph(names(a + b), e));
      }
    }
  }
  for (std::uint32_t n = 2; n <= 12; ++n) {
    std::vector<WeightedEdge> star, path;
    for (std::uint32_t i = 1; i < n; ++i) {
      star.push_back({0, i, 1.0});
      path.push_back({i - 1, i, i % 2 ? 2.0 : 1.0});
    }
    set.emplace_back("star " + std::to_string(n), WeightedPubGraph(names(n), star));
    set.emplace_back("path " + std::to_string(n), WeightedPubGraph(names(n), path));
  }
  Rng rng(4004);
  for (int k = 0; k < 40; ++k) {
    const auto a = static_cast<std::uint32_t>(rng.between(3, 6));
    const auto b = static_cast<std::uint32_t>(rng.between(3, 6));
    std::vector<WeightedEdge> e;
    for (std::uint32_t i = 0; i < a + b; ++i) {
      for (std::uint32_t j = i + 1; j < a + b; ++j) {
        const bool same = (i < a) == (j < a);
        if (same ? rng.chance(0.7) : rng.chance(0.1)) {
          e.push_back({i, j, same && rng.chance(0.6) ? 2.0 : 1.0});
        }
      }
    }
    if (e.empty()) continue;
    set.emplace_back("planted " + std::to_string(k), WeightedPubGraph(names(a + b), e));
  }
  return set;
}

Outcome louvain_exact() {
  const auto fixed = louvain_fixed_set();
  for (const auto& [label, g] : fixed) {
    const double q = modularity(g, louvain(g).partition);
    const oracle::BestPartition best = oracle::max_modularity(dense(g), 1.0);
    if (std::abs(q - best.q) > 1e-9) {
      return fail(label + ": Q " + std::to_string(q) + " vs maximum " +
                  std::to_string(best.q));
    }
  }
  Rng rng(4005);
  int graphs = 0;
  while (graphs < 1000) {
    const auto n = static_cast<std::size_t>(rng.between(2, 60));
    const double density = rng.unit() * 0.4;
    std::vector<WeightedEdge> e;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (rng.chance(density)) e.push_back({i, j, rng.chance(0.5) ? 2.0 : 1.0});
    if (e.empty()) continue;
    const WeightedPubGraph g(names(n), e);
    const double q = modularity(g, louvain(g).partition);
    if (q < modularity(g, Partition::singletons(n)) - 1e-12) {
      return fail("random graph " + std::to_string(graphs) + " below singletons");
    }
    ++graphs;
  }
  return {Outcome::kPass, std::to_string(fixed.size()) +
                              " fixed graphs at the exhaustive maximum, 1000 random graphs"};
}

// ---------------------------------------------------------------------------

Outcome common_names_direction() {
  SynthConfig sc;
  sc.blocks = 28;
  sc.authors_min = 2;
  sc.authors_max = 4;
  sc.pubs_min = 101;
  sc.pubs_max = 150;
  sc.topics_min = 2;
  sc.topics_max = 4;
  sc.seed = 5005;
  // Bridge rate varies per block within [0.1, 0.3]: generate one block at a
  // time and merge.
  std::vector<RawRecord> records;
  Rng rng(sc.seed);
  for (std::size_t b = 0; b < 28; ++b) {
    SynthConfig one = sc;
    one.blocks = 1;
    one.bridge_rate = 0.1 + 0.2 * rng.unit();
    one.seed = rng.below(1ull << 40);
    // Distinct names and ids per block.
    const std::string prefix = "b" + std::to_string(b) + "/";
    for (RawRecord& r : generate_synthetic(one).records) {
      r.record_id = prefix + r.record_id;
      for (AuthorMention& m : r.mentions) m.surface_name = prefix + m.surface_name;
      records.push_back(std::move(r));
    }
  }
  const GoldStandard gold = build_gold_standard(records);
  const CoauthorGraph graph = CoauthorGraph::build(records);
  const BlockSet blocks = build_blocks(gold);
  ExperimentConfig cfg;
  cfg.all_blocks = true;
  cfg.common_name_min_pubs = 200;
  cfg.workers = 4;
  const CommonNamesResult r = run_common_names(graph, blocks, cfg);
  if (r.blocks.size() != 28) {
    return fail(std::to_string(r.blocks.size()) + " blocks above 200 publications");
  }
  const BcubedScores& before = *r.before;
  const BcubedScores& after = *r.after;
  char buf[160];
  std::snprintf(buf, sizeof buf, "P %.3f -> %.3f, R %.3f -> %.3f, F %.3f -> %.3f",
                before.precision, after.precision, before.recall, after.recall,
                before.f, after.f);
  if (after.precision - before.precision < 0.15 || !(after.recall < before.recall)) {
    return fail(buf);
  }
  return {Outcome::kPass, buf};
}

// ---------------------------------------------------------------------------

Outcome dblp_snapshot() {
  const char* path = std::getenv("DISAMBIG_DBLP_XML");
  if (!path || !*path) {
    return {Outcome::kSkip, "set DISAMBIG_DBLP_XML to a DBLP XML snapshot to run"};
  }
  std::vector<RawRecord> records;
  GoldBuilder builder;
  {
    DblpReader reader(open_input(path));
    while (auto r = reader.next()) {
      builder.add(*r);
      records.push_back(std::move(*r));
    }
  }
  const GoldStandard gold = std::move(builder).finish();
  const CoauthorGraph graph = CoauthorGraph::build(records);
  records.clear();
  const BlockSet blocks = build_blocks(gold);
  ExperimentConfig cfg;
  cfg.sample_count = 1000;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  const RunResult run = run_experiment(graph, blocks, cfg);
  const double want[2][3] = {{0.98, 0.74, 0.79}, {0.94, 0.81, 0.82}};
  std::ostringstream detail;
  detail << gold.author_count() << " gold authors";
  bool ok = gold.author_count() == 5408;
  for (int i = 0; i < 2; ++i) {
    const BcubedScores& s = run.thresholds[static_cast<std::size_t>(i)].corpus;
    const double got[3] = {s.precision, s.recall, s.f};
    detail << "; T=" << run.thresholds[static_cast<std::size_t>(i)].threshold;
    for (int k = 0; k < 3; ++k) {
      detail << ' ' << got[k];
      ok = ok && std::abs(got[k] - want[i][k]) <= 0.05;
    }
  }
  return {ok ? Outcome::kPass : Outcome::kFail, detail.str()};
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  SynthConfig sc;
  sc.blocks = 40;
  sc.authors_min = 1;
  sc.pubs_min = 5;
  sc.pubs_max = 90;
  sc.topics_max = 3;
  sc.bridge_rate = 0.2;
  sc.seed = 7007;
  const SyntheticCorpus corpus = generate_synthetic(sc);
  const CoauthorGraph graph = CoauthorGraph::build(corpus.records);
  const BlockSet blocks = build_blocks(corpus.gold);
  ExperimentConfig cfg;
  cfg.sample_count = 30;
  cfg.seed = 7;
  cfg.thresholds = {1, 3, 5};
  cfg.common_name_min_pubs = 100;
  const fs::path root = fs::temp_directory_path() / "disambig_acceptance_det";
  fs::remove_all(root);
  std::vector<fs::path> dirs;
  for (unsigned workers : {1u, 2u, 3u, 8u}) {
    cfg.workers = workers;
    const fs::path dir = root / ("w" + std::to_string(workers));
    fs::create_directories(dir);
    const BlockSet chosen = select_blocks(blocks, cfg);
    write_run_outputs(dir.string(), run_experiment(graph, chosen, cfg), chosen, cfg);
    write_common_names_outputs(dir.string(), run_common_names(graph, chosen, cfg),
                               chosen, cfg);
    dirs.push_back(dir);
  }
  std::size_t files = 0;
  Outcome out{Outcome::kPass, ""};
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const std::string reference = slurp(entry.path());
    for (std::size_t k = 1; k < dirs.size(); ++k) {
      if (slurp(dirs[k] / entry.path().filename()) != reference) {
        out = fail(entry.path().filename().string() + " differs for " +
                   dirs[k].filename().string());
      }
    }
    ++files;
  }
  fs::remove_all(root);
  if (out.status == Outcome::kPass) {
    out.detail = std::to_string(files) + " report files identical for 1, 2, 3, 8 workers";
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "BCubed oracle equivalence", 10, bcubed_oracle},
      {2, "clustering equals oracle components", 60, clustering_components},
      {3, "comparison count audit", 60, comparison_audit},
      {4, "Louvain exact at desk scale", 120, louvain_exact},
      {5, "common-name refinement direction", 300, common_names_direction},
      {6, "DBLP snapshot reproduction", 86400, dblp_snapshot},
      {7, "determinism across worker counts", 120, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.status == Outcome::kPass && seconds > c.limit_seconds) {
      o = fail("took " + std::to_string(seconds) + " s, limit " +
               std::to_string(c.limit_seconds) + " s");
    }
    const char* tag = o.status == Outcome::kPass   ? "PASS"
                      : o.status == Outcome::kSkip ? "SKIP"
                                                   : "FAIL";
    std::printf("[%s] criterion %d: %s (%.2f s) %s\n", tag, c.number, c.name, seconds,
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.status == Outcome::kFail;
  }
  return failures == 0 ? 0 : 1;
}
