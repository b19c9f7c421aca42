#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "disambig/gold.hpp"
#include "disambig/record.hpp"

namespace disambig {

/// Planted-author corpus. Every block is one ambiguous name shared by
/// several gold authors. Each author writes with a private pool of
/// co-authors, and every publication after the first reuses an earlier
/// co-author, so an author's publications are connected at co-author
/// order 1. With probability `bridge_rate` per publication a context
/// publication (outside the gold standard) is added that joins one of its
/// co-authors with a co-author of another author of the same name, which
/// links the two authors at co-author order 2.
struct SynthConfig {
  std::size_t blocks = 10;
  std::size_t authors_min = 2;
  std::size_t authors_max = 4;
  std::size_t pubs_min = 10;
  std::size_t pubs_max = 30;
  std::size_t pool_size = 8;
  // Each author works on this many topics, each with its own co-author pool.
  // The first publication of a later topic borrows one co-author from an
  // earlier topic, so the author stays connected at order 1.
  std::size_t topics_min = 1;
  std::size_t topics_max = 1;
  std::size_t coauthors_min = 1;
  std::size_t coauthors_max = 3;
  double bridge_rate = 0.0;
  std::uint64_t seed = 1;
};

struct SyntheticCorpus {
  std::vector<RawRecord> records;  // sorted by record id
  GoldStandard gold;
};

/// Throws ArgumentError for empty ranges or a rate outside [0, 1].
SyntheticCorpus generate_synthetic(const SynthConfig& config);

}  // namespace disambig
