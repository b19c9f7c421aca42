#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace disambig {

/// One author string as printed on a publication. DBLP marks manually
/// disambiguated homonyms with a trailing four-digit suffix ("Wei Li 0002");
/// that suffix is split off into `gold_id` and never reaches the graph.
struct AuthorMention {
  std::string surface_name;
  std::optional<std::string> gold_id;
  std::string raw;

  /// Surface name plus suffix, e.g. "Wei Li 0002". Only meaningful when
  /// gold_id is present.
  std::string gold_key() const;

  // raw is provenance only and does not take part in equality.
  bool operator==(const AuthorMention& other) const {
    return surface_name == other.surface_name && gold_id == other.gold_id;
  }
};

enum class RecordKind {
  kArticle,
  kInproceedings,
  kProceedings,
  kBook,
  kIncollection,
  kPhdthesis,
  kMastersthesis,
  kWww,
  kOther,
};

std::string_view kind_name(RecordKind kind);
/// Maps an element name to its kind; unknown names give kOther.
RecordKind kind_from_name(std::string_view name);

struct RawRecord {
  std::string record_id;
  RecordKind kind = RecordKind::kOther;
  std::string title;
  std::optional<std::string> venue;
  std::optional<int> year;
  std::vector<AuthorMention> mentions;

  bool operator==(const RawRecord&) const = default;
};

/// Trims and collapses runs of ASCII whitespace to a single space.
std::string normalize_name(std::string_view text);

/// Throws MalformedMention on empty or whitespace-only input.
AuthorMention parse_mention(std::string_view raw);

}  // namespace disambig
