#pragma once

#include <span>
#include <string>
#include <vector>

#include "disambig/clustering.hpp"
#include "disambig/gold.hpp"

namespace disambig {

struct BcubedScores {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;

  bool operator==(const BcubedScores&) const = default;
};

struct EvalConfig {
  // Weight of precision in the F combination.
  double alpha = 0.5;
  // Block F as the harmonic combination of block P and R instead of the
  // mean of item F values.
  bool f_from_means = false;
};

/// 1 / (alpha/P + (1-alpha)/R), or 0 when P or R is 0.
double f_measure(double precision, double recall, double alpha);

/// Scores of one publication: the share of its predicted cluster written by
/// its gold author (precision) and the share of its gold author's
/// publications found in its cluster (recall).
BcubedScores item_scores(const Clustering& clustering, const Block& block,
                         const std::string& record_id,
                         const EvalConfig& config = {});

/// Item scores for every member, in member order.
std::vector<BcubedScores> all_item_scores(const Clustering& clustering,
                                          const Block& block,
                                          const EvalConfig& config = {});

/// Mean of item precision, recall and F.
BcubedScores block_scores(const Clustering& clustering, const Block& block,
                          const EvalConfig& config = {});

/// Unweighted mean over blocks. Throws ArgumentError on an empty list.
BcubedScores corpus_scores(std::span<const BcubedScores> per_block);

/// Mean over blocks weighted by block size.
BcubedScores corpus_scores_micro(std::span<const BcubedScores> per_block,
                                 std::span<const std::size_t> block_sizes);

}  // namespace disambig
