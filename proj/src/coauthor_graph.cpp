#include "disambig/coauthor_graph.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <limits>

#include "disambig/errors.hpp"

namespace disambig {
namespace {

constexpr std::array<char, 8> kMagic{'D', 'S', 'G', 'R', 'A', 'P', 'H', '\0'};
constexpr std::uint32_t kSnapshotVersion = 1;

template <typename T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void put_array(std::ostream& out, const std::vector<T>& values) {
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(T)));
}

void put_string(std::ostream& out, const std::string& s) {
  put(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class SnapshotReader {
 public:
  explicit SnapshotReader(std::istream& in) : in_(in) {}

  void bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw ParseError("truncated graph snapshot", offset_);
    }
    offset_ += n;
  }

  template <typename T>
  T get() {
    T value;
    bytes(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
  }

  template <typename T>
  std::vector<T> array(std::uint64_t n) {
    std::vector<T> values;
    // Grow in chunks so a corrupt count cannot trigger a huge allocation.
    constexpr std::uint64_t kChunk = 1 << 20;
    for (std::uint64_t done = 0; done < n;) {
      const std::uint64_t step = std::min(kChunk, n - done);
      values.resize(done + step);
      bytes(reinterpret_cast<char*>(values.data() + done), step * sizeof(T));
      done += step;
    }
    return values;
  }

  std::string string() {
    const auto n = get<std::uint32_t>();
    std::string s;
    s.resize(n);
    bytes(s.data(), n);
    return s;
  }

  std::uint64_t offset() const { return offset_; }

 private:
  std::istream& in_;
  std::uint64_t offset_ = 0;
};

}  // namespace

CoauthorGraph CoauthorGraph::build(std::span<const RawRecord> records) {
  CoauthorGraph g;
  std::vector<const RawRecord*> pubs;
  for (const RawRecord& r : records) {
    if (!r.mentions.empty()) pubs.push_back(&r);
    for (const AuthorMention& m : r.mentions) {
      g.author_names_.push_back(m.surface_name);
    }
  }
  std::sort(pubs.begin(), pubs.end(),
            [](const RawRecord* a, const RawRecord* b) {
              return a->record_id < b->record_id;
            });
  for (std::size_t i = 1; i < pubs.size(); ++i) {
    if (pubs[i - 1]->record_id == pubs[i]->record_id) {
      throw DataIntegrityError("duplicate record id " + pubs[i]->record_id);
    }
  }
  std::sort(g.author_names_.begin(), g.author_names_.end());
  g.author_names_.erase(
      std::unique(g.author_names_.begin(), g.author_names_.end()),
      g.author_names_.end());
  if (pubs.size() >= std::numeric_limits<PubIndex>::max() ||
      g.author_names_.size() >= std::numeric_limits<AuthorIndex>::max()) {
    throw DataIntegrityError("graph exceeds 32-bit node indices");
  }

  g.pub_ids_.reserve(pubs.size());
  g.pub_offsets_.reserve(pubs.size() + 1);
  std::vector<AuthorIndex> row;
  for (const RawRecord* r : pubs) {
    g.pub_ids_.push_back(r->record_id);
    row.clear();
    for (const AuthorMention& m : r->mentions) {
      row.push_back(*g.find_author(m.surface_name));
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    g.pub_adj_.insert(g.pub_adj_.end(), row.begin(), row.end());
    g.pub_offsets_.push_back(g.pub_adj_.size());
  }
  g.build_author_side();
  return g;
}

void CoauthorGraph::build_author_side() {
  std::vector<std::uint64_t> degree(author_names_.size() + 1, 0);
  for (AuthorIndex a : pub_adj_) ++degree[a + 1];
  for (std::size_t i = 1; i < degree.size(); ++i) degree[i] += degree[i - 1];
  author_offsets_ = degree;
  author_adj_.assign(pub_adj_.size(), 0);
  std::vector<std::uint64_t> cursor(degree.begin(), degree.end() - 1);
  // Publications are visited in index order, so each list comes out sorted.
  for (PubIndex p = 0; p < pub_ids_.size(); ++p) {
    for (AuthorIndex a : authors_of(p)) author_adj_[cursor[a]++] = p;
  }
}

std::optional<PubIndex> CoauthorGraph::find_pub(
    std::string_view record_id) const {
  const auto it = std::lower_bound(pub_ids_.begin(), pub_ids_.end(), record_id);
  if (it == pub_ids_.end() || *it != record_id) return std::nullopt;
  return static_cast<PubIndex>(it - pub_ids_.begin());
}

std::optional<AuthorIndex> CoauthorGraph::find_author(
    std::string_view name) const {
  const auto it =
      std::lower_bound(author_names_.begin(), author_names_.end(), name);
  if (it == author_names_.end() || *it != name) return std::nullopt;
  return static_cast<AuthorIndex>(it - author_names_.begin());
}

PubIndex CoauthorGraph::pub_index(std::string_view record_id) const {
  if (auto p = find_pub(record_id)) return *p;
  throw LookupError("publication " + std::string(record_id) +
                    " is not in the co-author graph");
}

void CoauthorGraph::save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  put(out, kSnapshotVersion);
  put(out, static_cast<std::uint64_t>(pub_ids_.size()));
  put(out, static_cast<std::uint64_t>(author_names_.size()));
  put(out, static_cast<std::uint64_t>(pub_adj_.size()));
  for (const std::string& s : pub_ids_) put_string(out, s);
  for (const std::string& s : author_names_) put_string(out, s);
  put_array(out, pub_offsets_);
  put_array(out, pub_adj_);
}

CoauthorGraph CoauthorGraph::load(std::istream& in) {
  SnapshotReader reader(in);
  std::array<char, 8> magic{};
  reader.bytes(magic.data(), magic.size());
  if (magic != kMagic) throw ParseError("not a graph snapshot", 0);
  const auto version = reader.get<std::uint32_t>();
  if (version != kSnapshotVersion) {
    throw ParseError("unsupported graph snapshot version " +
                         std::to_string(version),
                     reader.offset());
  }
  const auto pubs = reader.get<std::uint64_t>();
  const auto authors = reader.get<std::uint64_t>();
  const auto edges = reader.get<std::uint64_t>();
  if (pubs >= std::numeric_limits<PubIndex>::max() ||
      authors >= std::numeric_limits<AuthorIndex>::max()) {
    throw ParseError("graph snapshot counts out of range", reader.offset());
  }
  CoauthorGraph g;
  g.pub_ids_.reserve(pubs);
  for (std::uint64_t i = 0; i < pubs; ++i) g.pub_ids_.push_back(reader.string());
  g.author_names_.reserve(authors);
  for (std::uint64_t i = 0; i < authors; ++i) {
    g.author_names_.push_back(reader.string());
  }
  g.pub_offsets_ = reader.array<std::uint64_t>(pubs + 1);
  g.pub_adj_ = reader.array<AuthorIndex>(edges);
  if (g.pub_offsets_.front() != 0 || g.pub_offsets_.back() != edges ||
      !std::is_sorted(g.pub_offsets_.begin(), g.pub_offsets_.end()) ||
      std::any_of(g.pub_adj_.begin(), g.pub_adj_.end(),
                  [&](AuthorIndex a) { return a >= authors; })) {
    throw ParseError("inconsistent graph snapshot", reader.offset());
  }
  g.build_author_side();
  return g;
}

DistanceSearcher::DistanceSearcher(const CoauthorGraph& graph)
    : graph_(graph),
      pub_seen_(graph.pub_count(), 0),
      author_seen_(graph.author_count(), 0) {}

void DistanceSearcher::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(pub_seen_.begin(), pub_seen_.end(), 0);
    std::fill(author_seen_.begin(), author_seen_.end(), 0);
    epoch_ = 1;
  }
}

PubDistance DistanceSearcher::distance(PubIndex from, PubIndex to,
                                       int max_distance,
                                       std::optional<AuthorIndex> excluded) {
  if (max_distance < 1 || max_distance % 2 == 0) {
    throw ArgumentError("distance bound must be a positive odd number");
  }
  if (from == to) throw ArgumentError("distance query needs two publications");
  const int max_hops = (max_distance + 1) / 2;
  next_epoch();
  frontier_.assign(1, from);
  pub_seen_[from] = epoch_;
  for (int hop = 1; hop <= max_hops && !frontier_.empty(); ++hop) {
    next_frontier_.clear();
    for (PubIndex p : frontier_) {
      for (AuthorIndex a : graph_.authors_of(p)) {
        if (a == excluded || author_seen_[a] == epoch_) continue;
        author_seen_[a] = epoch_;
        for (PubIndex q : graph_.pubs_of(a)) {
          if (pub_seen_[q] == epoch_) continue;
          if (q == to) return PubDistance::from_hops(hop);
          pub_seen_[q] = epoch_;
          next_frontier_.push_back(q);
        }
      }
    }
    std::swap(frontier_, next_frontier_);
  }
  return PubDistance::infinite();
}

std::vector<std::pair<PubIndex, int>> DistanceSearcher::within(
    PubIndex from, int max_order, std::optional<AuthorIndex> excluded) {
  if (max_order < 1) throw ArgumentError("co-author order must be >= 1");
  std::vector<std::pair<PubIndex, int>> found;
  next_epoch();
  frontier_.assign(1, from);
  pub_seen_[from] = epoch_;
  for (int hop = 1; hop <= max_order && !frontier_.empty(); ++hop) {
    next_frontier_.clear();
    for (PubIndex p : frontier_) {
      for (AuthorIndex a : graph_.authors_of(p)) {
        if (a == excluded || author_seen_[a] == epoch_) continue;
        author_seen_[a] = epoch_;
        for (PubIndex q : graph_.pubs_of(a)) {
          if (pub_seen_[q] == epoch_) continue;
          pub_seen_[q] = epoch_;
          found.emplace_back(q, hop);
          // The last level never needs expanding.
          if (hop < max_order) next_frontier_.push_back(q);
        }
      }
    }
    std::swap(frontier_, next_frontier_);
  }
  std::sort(found.begin(), found.end());
  return found;
}

PubDistance pub_distance(const CoauthorGraph& graph, std::string_view p1,
                         std::string_view p2, int max_distance,
                         std::string_view excluded_author) {
  const PubIndex a = graph.pub_index(p1);
  const PubIndex b = graph.pub_index(p2);
  DistanceSearcher searcher(graph);
  return searcher.distance(a, b, max_distance,
                           graph.find_author(excluded_author));
}

std::map<std::string, int> pubs_within(const CoauthorGraph& graph,
                                       std::string_view record_id, int k,
                                       std::string_view excluded_author) {
  const PubIndex p = graph.pub_index(record_id);
  DistanceSearcher searcher(graph);
  std::map<std::string, int> out;
  for (const auto& [q, order] :
       searcher.within(p, k, graph.find_author(excluded_author))) {
    out.emplace(graph.pub_id(q), order);
  }
  return out;
}

}  // namespace disambig
