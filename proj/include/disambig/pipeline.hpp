#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "disambig/bcubed.hpp"
#include "disambig/clustering.hpp"
#include "disambig/coauthor_graph.hpp"
#include "disambig/community.hpp"
#include "disambig/gold.hpp"
#include "json.hpp"

namespace disambig {

struct ExperimentConfig {
  std::vector<int> thresholds{1, 3};
  std::size_t sample_count = 1000;
  bool all_blocks = false;  // skip sampling, use every block
  std::uint64_t seed = 1;
  double alpha = 0.5;
  bool f_from_means = false;
  // Common-name refinement applies to blocks with more publications.
  std::size_t common_name_min_pubs = 200;
  int common_name_threshold = 3;
  double resolution = 1.0;
  int max_passes = 100;
  unsigned workers = 1;

  /// Throws ArgumentError.
  void validate() const;
  EvalConfig eval() const { return {alpha, f_from_means}; }
  LouvainConfig louvain() const { return {resolution, max_passes, seed}; }
};

struct BlockResult {
  std::string block_key;
  std::size_t m = 0;
  BcubedScores scores;
};

struct ThresholdResult {
  int threshold = 0;
  std::vector<BlockResult> per_block;
  BcubedScores corpus;
  std::uint64_t comparisons = 0;
  std::vector<Clustering> clusterings;
};

struct RunResult {
  std::size_t blocks = 0;
  std::size_t publications = 0;
  std::uint64_t expected_comparisons = 0;
  std::vector<ThresholdResult> thresholds;
};

struct CommonNameBlock {
  std::string block_key;
  std::size_t m = 0;
  BcubedScores before;
  BcubedScores after;
  std::optional<double> q_before;
  std::optional<double> q_after;
  int passes = 0;
  Clustering refined;
};

struct CommonNamesResult {
  std::vector<CommonNameBlock> blocks;
  std::optional<BcubedScores> before;  // absent when no block qualifies
  std::optional<BcubedScores> after;
};

/// The configured sample, or every block when all_blocks is set.
BlockSet select_blocks(const BlockSet& blocks, const ExperimentConfig& config);

/// Clusters and scores every block at every configured threshold.
RunResult run_experiment(const CoauthorGraph& graph, const BlockSet& blocks,
                         const ExperimentConfig& config);

/// Threshold clustering before and after Louvain refinement, for the blocks
/// with more than common_name_min_pubs publications.
CommonNamesResult run_common_names(const CoauthorGraph& graph,
                                   const BlockSet& blocks,
                                   const ExperimentConfig& config);

// {threshold, alpha, per_block: [{block_key, m, p, r, f}], corpus: {p, r, f}}
nlohmann::ordered_json eval_report(const ThresholdResult& result,
                                   const ExperimentConfig& config);
nlohmann::ordered_json run_summary(const RunResult& result,
                                   const ExperimentConfig& config);
nlohmann::ordered_json common_names_report(const CommonNamesResult& result,
                                           const ExperimentConfig& config);

/// Writes run.json, eval_t<T>.json and clusters_t<T>.tsv into `dir`.
void write_run_outputs(const std::string& dir, const RunResult& result,
                       const BlockSet& blocks, const ExperimentConfig& config);
/// Writes common_names.json and communities.tsv into `dir`.
void write_common_names_outputs(const std::string& dir,
                                const CommonNamesResult& result,
                                const BlockSet& blocks,
                                const ExperimentConfig& config);

/// Plain-text table for any report written above.
std::string render_report(const nlohmann::ordered_json& report);

/// Runs fn(index, worker) for every index on `workers` threads. The first
/// exception thrown by any task is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i, w);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace disambig
