#include "disambig/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "disambig/errors.hpp"
#include "disambig/threshold_cluster.hpp"

namespace disambig {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json scores_json(const BcubedScores& s) {
  ordered_json j;
  j["p"] = s.precision;
  j["r"] = s.recall;
  j["f"] = s.f;
  return j;
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json();
}

std::vector<std::unique_ptr<DistanceSearcher>> searcher_slots(
    const ExperimentConfig& config) {
  return std::vector<std::unique_ptr<DistanceSearcher>>(
      std::max(1u, config.workers));
}

DistanceSearcher& searcher_for(
    std::vector<std::unique_ptr<DistanceSearcher>>& slots, unsigned worker,
    const CoauthorGraph& graph) {
  auto& slot = slots[worker];
  if (!slot) slot = std::make_unique<DistanceSearcher>(graph);
  return *slot;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string format_score(const ordered_json& value) {
  if (value.is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value.get<double>());
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string table_row(const std::string& label, const ordered_json& scores) {
  return pad(label, 22) + pad(format_score(scores.at("p")), 12) +
         pad(format_score(scores.at("r")), 12) + format_score(scores.at("f")) +
         "\n";
}

const std::string kTableHeader = pad("", 22) + pad("BCubed P", 12) +
                                 pad("BCubed R", 12) + "BCubed F\n";

}  // namespace

void ExperimentConfig::validate() const {
  if (thresholds.empty()) throw ArgumentError("no thresholds given");
  for (int t : thresholds) {
    if (t < 1 || t % 2 == 0) {
      throw ArgumentError("thresholds must be positive odd numbers, got " +
                          std::to_string(t));
    }
  }
  if (common_name_threshold < 1 || common_name_threshold % 2 == 0) {
    throw ArgumentError("common-name threshold must be a positive odd number");
  }
  if (!all_blocks && sample_count < 1) {
    throw ArgumentError("sample count must be >= 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (!(resolution > 0.0)) throw ArgumentError("resolution must be positive");
  if (max_passes < 1) throw ArgumentError("max passes must be >= 1");
}

BlockSet select_blocks(const BlockSet& blocks, const ExperimentConfig& config) {
  config.validate();
  if (config.all_blocks) return blocks;
  return sample_blocks(blocks, config.sample_count, config.seed);
}

RunResult run_experiment(const CoauthorGraph& graph, const BlockSet& blocks,
                         const ExperimentConfig& config) {
  config.validate();
  RunResult result;
  result.blocks = blocks.size();
  result.publications = blocks.publication_count();
  result.expected_comparisons = count_comparisons(blocks);
  const std::size_t n = blocks.size();
  const std::size_t t_count = config.thresholds.size();

  std::vector<std::vector<Clustering>> clusterings(
      t_count, std::vector<Clustering>(n));
  std::vector<std::vector<BcubedScores>> scores(
      t_count, std::vector<BcubedScores>(n));
  std::vector<std::vector<ClusterStats>> stats(
      t_count, std::vector<ClusterStats>(n));
  auto slots = searcher_slots(config);
  const EvalConfig eval = config.eval();

  parallel_for(n, config.workers, [&](std::size_t i, unsigned worker) {
    DistanceSearcher& searcher = searcher_for(slots, worker, graph);
    const Block& block = blocks.blocks[i];
    for (std::size_t t = 0; t < t_count; ++t) {
      clusterings[t][i] =
          cluster_block(block, searcher, config.thresholds[t], &stats[t][i]);
      scores[t][i] = block_scores(clusterings[t][i], block, eval);
    }
  });

  for (std::size_t t = 0; t < t_count; ++t) {
    ThresholdResult tr;
    tr.threshold = config.thresholds[t];
    for (std::size_t i = 0; i < n; ++i) {
      tr.per_block.push_back(
          {blocks.blocks[i].block_key, blocks.blocks[i].size(), scores[t][i]});
      tr.comparisons += stats[t][i].comparisons;
    }
    if (n > 0) tr.corpus = corpus_scores(scores[t]);
    tr.clusterings = std::move(clusterings[t]);
    result.thresholds.push_back(std::move(tr));
  }
  return result;
}

CommonNamesResult run_common_names(const CoauthorGraph& graph,
                                   const BlockSet& blocks,
                                   const ExperimentConfig& config) {
  config.validate();
  std::vector<const Block*> common;
  for (const Block& b : blocks.blocks) {
    if (b.size() > config.common_name_min_pubs) common.push_back(&b);
  }
  CommonNamesResult result;
  result.blocks.resize(common.size());
  auto slots = searcher_slots(config);
  const EvalConfig eval = config.eval();
  const LouvainConfig louvain_config = config.louvain();

  parallel_for(common.size(), config.workers,
               [&](std::size_t i, unsigned worker) {
                 DistanceSearcher& searcher = searcher_for(slots, worker, graph);
                 const Block& block = *common[i];
                 const Clustering base = cluster_block(
                     block, searcher, config.common_name_threshold);
                 Refinement refined =
                     refine_block(block, base, searcher, louvain_config);
                 CommonNameBlock& out = result.blocks[i];
                 out.block_key = block.block_key;
                 out.m = block.size();
                 out.before = block_scores(base, block, eval);
                 out.after = block_scores(refined.clustering, block, eval);
                 out.q_before = refined.q_before;
                 out.q_after = refined.q_after;
                 out.passes = refined.passes;
                 out.refined = std::move(refined.clustering);
               });

  if (!result.blocks.empty()) {
    std::vector<BcubedScores> before, after;
    for (const CommonNameBlock& b : result.blocks) {
      before.push_back(b.before);
      after.push_back(b.after);
    }
    result.before = corpus_scores(before);
    result.after = corpus_scores(after);
  }
  return result;
}

ordered_json eval_report(const ThresholdResult& result,
                         const ExperimentConfig& config) {
  ordered_json j;
  j["threshold"] = result.threshold;
  j["alpha"] = config.alpha;
  ordered_json per_block = ordered_json::array();
  for (const BlockResult& b : result.per_block) {
    ordered_json row;
    row["block_key"] = b.block_key;
    row["m"] = b.m;
    row["p"] = b.scores.precision;
    row["r"] = b.scores.recall;
    row["f"] = b.scores.f;
    per_block.push_back(std::move(row));
  }
  j["per_block"] = std::move(per_block);
  j["corpus"] = result.per_block.empty() ? ordered_json()
                                         : scores_json(result.corpus);
  return j;
}

ordered_json run_summary(const RunResult& result,
                         const ExperimentConfig& config) {
  ordered_json j;
  j["seed"] = config.seed;
  j["sample_count"] = config.all_blocks ? result.blocks : config.sample_count;
  j["blocks"] = result.blocks;
  j["publications"] = result.publications;
  j["expected_comparisons"] = result.expected_comparisons;
  j["alpha"] = config.alpha;
  ordered_json rows = ordered_json::array();
  for (const ThresholdResult& t : result.thresholds) {
    ordered_json row;
    row["threshold"] = t.threshold;
    row["comparisons"] = t.comparisons;
    row["corpus"] = t.per_block.empty() ? ordered_json() : scores_json(t.corpus);
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  return j;
}

ordered_json common_names_report(const CommonNamesResult& result,
                                 const ExperimentConfig& config) {
  ordered_json j;
  j["status"] = result.blocks.empty() ? "empty" : "ok";
  j["threshold"] = config.common_name_threshold;
  j["min_block_size"] = config.common_name_min_pubs;
  j["resolution"] = config.resolution;
  j["alpha"] = config.alpha;
  j["blocks"] = result.blocks.size();
  j["before"] = result.before ? scores_json(*result.before) : ordered_json();
  j["after"] = result.after ? scores_json(*result.after) : ordered_json();
  ordered_json per_block = ordered_json::array();
  for (const CommonNameBlock& b : result.blocks) {
    ordered_json row;
    row["block_key"] = b.block_key;
    row["m"] = b.m;
    row["Q_before"] = optional_json(b.q_before);
    row["Q_after"] = optional_json(b.q_after);
    row["passes"] = b.passes;
    row["communities"] = b.refined.cluster_count();
    row["before"] = scores_json(b.before);
    row["after"] = scores_json(b.after);
    per_block.push_back(std::move(row));
  }
  j["per_block"] = std::move(per_block);
  return j;
}

void write_run_outputs(const std::string& dir, const RunResult& result,
                       const BlockSet& blocks, const ExperimentConfig& config) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  write_file(root / "run.json", run_summary(result, config).dump(2) + "\n");
  for (const ThresholdResult& t : result.thresholds) {
    const std::string suffix = "_t" + std::to_string(t.threshold);
    write_file(root / ("eval" + suffix + ".json"),
               eval_report(t, config).dump(2) + "\n");
    std::ostringstream tsv;
    tsv << kClusterTsvHeader;
    for (std::size_t i = 0; i < t.clusterings.size(); ++i) {
      write_cluster_tsv(tsv, t.clusterings[i], blocks.blocks[i]);
    }
    write_file(root / ("clusters" + suffix + ".tsv"), tsv.str());
  }
}

void write_common_names_outputs(const std::string& dir,
                                const CommonNamesResult& result,
                                const BlockSet& blocks,
                                const ExperimentConfig& config) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  write_file(root / "common_names.json",
             common_names_report(result, config).dump(2) + "\n");
  std::ostringstream tsv;
  tsv << kClusterTsvHeader;
  for (const CommonNameBlock& b : result.blocks) {
    const auto it = std::lower_bound(
        blocks.blocks.begin(), blocks.blocks.end(), b.block_key,
        [](const Block& x, const std::string& key) { return x.block_key < key; });
    write_cluster_tsv(tsv, b.refined, *it);
  }
  write_file(root / "communities.tsv", tsv.str());
}

std::string render_report(const ordered_json& report) {
  std::string out;
  if (report.contains("results")) {
    out += "Mean BCubed scores over " +
           std::to_string(report.at("blocks").get<std::size_t>()) +
           " blocks (seed " + report.at("seed").dump() + ", " +
           report.at("expected_comparisons").dump() + " comparisons)\n";
    out += kTableHeader;
    for (const auto& row : report.at("results")) {
      if (row.at("corpus").is_null()) continue;
      out += table_row("Threshold=" + row.at("threshold").dump(),
                       row.at("corpus"));
    }
  } else if (report.contains("before")) {
    out += "BCubed scores for " + report.at("blocks").dump() +
           " names with more than " + report.at("min_block_size").dump() +
           " publications, threshold " + report.at("threshold").dump() + "\n";
    if (report.at("status") == "empty") return out + "(no qualifying blocks)\n";
    out += kTableHeader;
    out += table_row("Before optimization", report.at("before"));
    out += table_row("After optimization", report.at("after"));
  } else if (report.contains("per_block") && report.contains("corpus")) {
    out += kTableHeader;
    if (!report.at("corpus").is_null()) {
      out += table_row("Threshold=" + report.at("threshold").dump(),
                       report.at("corpus"));
    }
  } else {
    throw ArgumentError("unrecognised report format");
  }
  return out;
}

}  // namespace disambig
