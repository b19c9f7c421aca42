#include "disambig/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <string_view>

#include "disambig/errors.hpp"
#include "disambig/random.hpp"

namespace disambig {
namespace {

constexpr std::array<std::string_view, 16> kGiven{
    "Wei",  "Jing", "Lei",   "Yang", "Hui",  "Min", "Jun",  "Xin",
    "Ying", "Tao",  "Qiang", "Yan",  "Ming", "Hao", "Fang", "Bo"};
constexpr std::array<std::string_view, 16> kFamily{
    "Li",  "Wang", "Zhang", "Liu", "Chen", "Yang", "Zhao", "Huang",
    "Wu",  "Zhou", "Xu",    "Sun", "Ma",   "Zhu",  "Hu",   "Guo"};

std::string block_name(std::size_t index) {
  const std::size_t tier = index / (kGiven.size() * kFamily.size());
  std::string name(kGiven[index % kGiven.size()]);
  name += ' ';
  name += kFamily[(index / kGiven.size()) % kFamily.size()];
  if (tier > 0) name += " " + std::string(tier, 'X');
  return name;
}

std::string padded(std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, value);
  return buf;
}

AuthorMention mention(std::string name, std::optional<std::string> gold) {
  AuthorMention m;
  m.raw = gold ? name + " " + *gold : name;
  m.surface_name = std::move(name);
  m.gold_id = std::move(gold);
  return m;
}

void check(const SynthConfig& c) {
  if (c.authors_min < 1 || c.authors_min > c.authors_max) {
    throw ArgumentError("bad authors-per-block range");
  }
  if (c.authors_max > 9999) throw ArgumentError("at most 9999 authors per block");
  if (c.pubs_min < 1 || c.pubs_min > c.pubs_max) {
    throw ArgumentError("bad publications-per-author range");
  }
  if (c.coauthors_min < 1 || c.coauthors_min > c.coauthors_max) {
    throw ArgumentError("bad co-authors-per-publication range");
  }
  if (c.topics_min < 1 || c.topics_min > c.topics_max) {
    throw ArgumentError("bad topics-per-author range");
  }
  if (c.pool_size < c.coauthors_max) {
    throw ArgumentError("co-author pool smaller than co-authors per publication");
  }
  if (!(c.bridge_rate >= 0.0 && c.bridge_rate <= 1.0)) {
    throw ArgumentError("bridge rate must lie in [0, 1]");
  }
}

}  // namespace

SyntheticCorpus generate_synthetic(const SynthConfig& config) {
  check(config);
  Rng rng(config.seed);
  SyntheticCorpus corpus;
  std::size_t context_count = 0;

  for (std::size_t b = 0; b < config.blocks; ++b) {
    const std::string name = block_name(b);
    const std::string block_tag = "b" + padded(b, 4);
    const auto authors = static_cast<std::size_t>(rng.between(
        static_cast<std::int64_t>(config.authors_min),
        static_cast<std::int64_t>(config.authors_max)));

    // Co-author names of every publication, per author.
    std::vector<std::vector<std::vector<std::string>>> coauthors(authors);
    std::vector<std::vector<std::string>> ids(authors);
    for (std::size_t a = 0; a < authors; ++a) {
      const std::string gold_id = padded(a + 1, 4);
      const auto topics = static_cast<std::size_t>(
          rng.between(static_cast<std::int64_t>(config.topics_min),
                      static_cast<std::int64_t>(config.topics_max)));
      std::vector<std::vector<std::string>> pools(topics);
      for (std::size_t t = 0; t < topics; ++t) {
        const std::string tag = block_tag + "-a" + std::to_string(a) +
                                (t == 0 ? "" : "-t" + std::to_string(t));
        for (std::size_t j = 0; j < config.pool_size; ++j) {
          pools[t].push_back("Coauthor " + tag + "-c" + std::to_string(j) +
                             " Smith");
        }
      }
      // Pool indices already used per topic, and every name used so far.
      std::vector<std::vector<std::size_t>> used(topics);
      std::vector<std::string> seen;
      const auto pubs = static_cast<std::size_t>(
          rng.between(static_cast<std::int64_t>(config.pubs_min),
                      static_cast<std::int64_t>(config.pubs_max)));
      for (std::size_t p = 0; p < pubs; ++p) {
        const std::size_t t = topics == 1 ? 0 : rng.below(topics);
        const auto& pool = pools[t];
        const auto wanted = static_cast<std::size_t>(
            rng.between(static_cast<std::int64_t>(config.coauthors_min),
                        static_cast<std::int64_t>(config.coauthors_max)));
        std::vector<std::string> names;
        std::vector<std::size_t> chosen;
        if (!used[t].empty()) {
          chosen.push_back(used[t][rng.below(used[t].size())]);
        } else if (!seen.empty()) {
          names.push_back(seen[rng.below(seen.size())]);
        } else {
          chosen.push_back(rng.below(pool.size()));
        }
        while (names.size() + chosen.size() < wanted) {
          const std::size_t c = rng.below(pool.size());
          if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) {
            chosen.push_back(c);
          }
        }
        RawRecord record;
        record.record_id = "synth/" + block_tag + "/a" + padded(a + 1, 4) +
                           "/p" + padded(p, 5);
        record.kind = RecordKind::kInproceedings;
        record.title = "Publication " + std::to_string(p) + " of " + name +
                       " " + gold_id;
        record.venue = "Synthetic Venue " + std::to_string(rng.below(20));
        record.year = static_cast<int>(1990 + rng.below(30));
        record.mentions.push_back(mention(name, gold_id));
        for (std::size_t c : chosen) {
          if (std::find(used[t].begin(), used[t].end(), c) == used[t].end()) {
            used[t].push_back(c);
            seen.push_back(pool[c]);
          }
          names.push_back(pool[c]);
        }
        for (const std::string& n : names) {
          record.mentions.push_back(mention(n, std::nullopt));
        }
        coauthors[a].push_back(std::move(names));
        ids[a].push_back(record.record_id);
        corpus.gold.entries[name][name + " " + gold_id].insert(record.record_id);
        corpus.records.push_back(std::move(record));
      }
    }

    if (authors < 2 || config.bridge_rate <= 0.0) continue;
    for (std::size_t a = 0; a < authors; ++a) {
      for (std::size_t p = 0; p < coauthors[a].size(); ++p) {
        if (!rng.chance(config.bridge_rate)) continue;
        std::size_t other = rng.below(authors - 1);
        if (other >= a) ++other;
        const auto& mine = coauthors[a][p];
        const auto& theirs = coauthors[other][rng.below(coauthors[other].size())];
        RawRecord context;
        context.record_id = "synth/ctx/" + padded(context_count++, 7);
        context.kind = RecordKind::kArticle;
        context.title = "Joint work " + std::to_string(context_count);
        context.venue = "Synthetic Journal";
        context.year = static_cast<int>(1990 + rng.below(30));
        context.mentions.push_back(
            mention(mine[rng.below(mine.size())], std::nullopt));
        context.mentions.push_back(
            mention(theirs[rng.below(theirs.size())], std::nullopt));
        corpus.records.push_back(std::move(context));
      }
    }
  }
  std::sort(corpus.records.begin(), corpus.records.end(),
            [](const RawRecord& x, const RawRecord& y) {
              return x.record_id < y.record_id;
            });
  return corpus;
}

}  // namespace disambig
