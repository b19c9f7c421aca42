#include "disambig/bcubed.hpp"

#include <map>
#include <unordered_map>
#include <utility>

#include "disambig/errors.hpp"

namespace disambig {
namespace {

void check_config(const EvalConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1)");
  }
}

void check_cover(const Clustering& clustering, const Block& block) {
  if (clustering.members() != block.members) {
    throw ArgumentError("clustering does not cover block " + block.block_key);
  }
}

// Per-member gold class ids, class sizes, cluster sizes and
// cluster-class overlaps.
struct Counts {
  std::vector<std::uint32_t> gold;
  std::vector<std::size_t> class_size;
  std::vector<std::size_t> cluster_size;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> overlap;

  Counts(const Clustering& clustering, const Block& block) {
    std::unordered_map<std::string, std::uint32_t> ids;
    gold.reserve(block.size());
    for (const std::string& label : block.labels) {
      const auto [it, inserted] =
          ids.emplace(label, static_cast<std::uint32_t>(ids.size()));
      if (inserted) class_size.push_back(0);
      ++class_size[it->second];
      gold.push_back(it->second);
    }
    cluster_size.assign(clustering.cluster_count(), 0);
    for (std::size_t i = 0; i < block.size(); ++i) {
      const std::uint32_t c = clustering.labels()[i];
      ++cluster_size[c];
      ++overlap[{c, gold[i]}];
    }
  }

  BcubedScores item(const Clustering& clustering, std::size_t i,
                    double alpha) const {
    const std::uint32_t c = clustering.labels()[i];
    const auto shared = static_cast<double>(overlap.at({c, gold[i]}));
    BcubedScores s;
    s.precision = shared / static_cast<double>(cluster_size[c]);
    s.recall = shared / static_cast<double>(class_size[gold[i]]);
    s.f = f_measure(s.precision, s.recall, alpha);
    return s;
  }
};

}  // namespace

double f_measure(double precision, double recall, double alpha) {
  if (precision <= 0.0 || recall <= 0.0) return 0.0;
  return 1.0 / (alpha / precision + (1.0 - alpha) / recall);
}

BcubedScores item_scores(const Clustering& clustering, const Block& block,
                         const std::string& record_id,
                         const EvalConfig& config) {
  check_config(config);
  check_cover(clustering, block);
  const std::size_t i = block.index_of(record_id);
  return Counts(clustering, block).item(clustering, i, config.alpha);
}

std::vector<BcubedScores> all_item_scores(const Clustering& clustering,
                                          const Block& block,
                                          const EvalConfig& config) {
  check_config(config);
  check_cover(clustering, block);
  const Counts counts(clustering, block);
  std::vector<BcubedScores> out;
  out.reserve(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    out.push_back(counts.item(clustering, i, config.alpha));
  }
  return out;
}

BcubedScores block_scores(const Clustering& clustering, const Block& block,
                          const EvalConfig& config) {
  const std::vector<BcubedScores> items =
      all_item_scores(clustering, block, config);
  if (items.empty()) throw ArgumentError("empty block " + block.block_key);
  BcubedScores mean;
  for (const BcubedScores& s : items) {
    mean.precision += s.precision;
    mean.recall += s.recall;
    mean.f += s.f;
  }
  const auto n = static_cast<double>(items.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f = config.f_from_means
               ? f_measure(mean.precision, mean.recall, config.alpha)
               : mean.f / n;
  return mean;
}

BcubedScores corpus_scores(std::span<const BcubedScores> per_block) {
  if (per_block.empty()) throw ArgumentError("no blocks to aggregate");
  BcubedScores mean;
  for (const BcubedScores& s : per_block) {
    mean.precision += s.precision;
    mean.recall += s.recall;
    mean.f += s.f;
  }
  const auto n = static_cast<double>(per_block.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f /= n;
  return mean;
}

BcubedScores corpus_scores_micro(std::span<const BcubedScores> per_block,
                                 std::span<const std::size_t> block_sizes) {
  if (per_block.empty()) throw ArgumentError("no blocks to aggregate");
  if (per_block.size() != block_sizes.size()) {
    throw ArgumentError("block sizes do not match scores");
  }
  BcubedScores sum;
  double weight = 0.0;
  for (std::size_t i = 0; i < per_block.size(); ++i) {
    const auto w = static_cast<double>(block_sizes[i]);
    sum.precision += w * per_block[i].precision;
    sum.recall += w * per_block[i].recall;
    sum.f += w * per_block[i].f;
    weight += w;
  }
  if (weight <= 0.0) throw ArgumentError("block sizes sum to zero");
  sum.precision /= weight;
  sum.recall /= weight;
  sum.f /= weight;
  return sum;
}

}  // namespace disambig
