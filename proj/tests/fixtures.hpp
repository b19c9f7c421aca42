#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "disambig/gold.hpp"
#include "disambig/random.hpp"
#include "disambig/record.hpp"

namespace fixtures {

inline disambig::RawRecord record(const std::string& id,
                                  std::initializer_list<const char*> authors) {
  disambig::RawRecord r;
  r.record_id = id;
  r.kind = disambig::RecordKind::kInproceedings;
  r.title = "Title of " + id;
  for (const char* a : authors) r.mentions.push_back(disambig::parse_mention(a));
  return r;
}

// Two homonym blocks in the shape of the worked distance examples: p1 and p2
// share a co-author; p3 and p4 are joined through a co-author of a co-author
// (the context record c1).
inline std::vector<disambig::RawRecord> distance_example() {
  return {
      record("p1", {"Daniel Schall 0001", "Schahram Dustdar"}),
      record("p2", {"Schahram Dustdar", "Daniel Schall 0001", "Florian Skopik"}),
      record("p3", {"Eric Dubois 0001", "Nicolas Mayer"}),
      record("c1", {"Nicolas Mayer", "Andre Rifaut"}),
      record("p4", {"Andre Rifaut", "Eric Dubois 0002"}),
      record("p5", {"Eric Dubois 0003"}),
  };
}

/// Random small corpus: `pubs` gold publications of one name shared by a
/// few identities, co-authors drawn from a small global pool, plus context
/// records among the pool.
inline std::vector<disambig::RawRecord> random_corpus(disambig::Rng& rng,
                                                      std::size_t pubs,
                                                      std::size_t pool,
                                                      std::size_t context) {
  std::vector<disambig::RawRecord> out;
  const auto identities = rng.between(1, 4);
  for (std::size_t i = 0; i < pubs; ++i) {
    disambig::RawRecord r;
    r.record_id = "g" + std::to_string(1000 + i);
    r.mentions.push_back(disambig::parse_mention(
        "Focal Name 000" + std::to_string(rng.between(1, identities))));
    const auto extra = rng.between(0, 3);
    for (std::int64_t k = 0; k < extra; ++k) {
      r.mentions.push_back(disambig::parse_mention(
          "Pool Person " + std::string(1, static_cast<char>('A' + rng.below(pool)))));
    }
    out.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < context; ++i) {
    disambig::RawRecord r;
    r.record_id = "x" + std::to_string(1000 + i);
    const auto n = rng.between(1, 3);
    for (std::int64_t k = 0; k < n; ++k) {
      r.mentions.push_back(disambig::parse_mention(
          "Pool Person " + std::string(1, static_cast<char>('A' + rng.below(pool)))));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fixtures
