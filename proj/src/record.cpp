#include "disambig/record.hpp"

#include <array>
#include <utility>

#include "disambig/errors.hpp"

namespace disambig {
namespace {

constexpr std::array<std::pair<RecordKind, std::string_view>, 9> kKindNames{{
    {RecordKind::kArticle, "article"},
    {RecordKind::kInproceedings, "inproceedings"},
    {RecordKind::kProceedings, "proceedings"},
    {RecordKind::kBook, "book"},
    {RecordKind::kIncollection, "incollection"},
    {RecordKind::kPhdthesis, "phdthesis"},
    {RecordKind::kMastersthesis, "mastersthesis"},
    {RecordKind::kWww, "www"},
    {RecordKind::kOther, "other"},
}};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// " dddd" at the end, with a non-empty name in front of it.
bool has_gold_suffix(std::string_view name) {
  const std::size_t n = name.size();
  return n > 5 && name[n - 5] == ' ' && is_digit(name[n - 4]) &&
         is_digit(name[n - 3]) && is_digit(name[n - 2]) &&
         is_digit(name[n - 1]);
}

}  // namespace

std::string AuthorMention::gold_key() const {
  return gold_id ? surface_name + " " + *gold_id : surface_name;
}

std::string_view kind_name(RecordKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "other";
}

RecordKind kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return RecordKind::kOther;
}

std::string normalize_name(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

AuthorMention parse_mention(std::string_view raw) {
  std::string name = normalize_name(raw);
  if (name.empty()) {
    throw MalformedMention("author mention is empty");
  }
  AuthorMention mention;
  mention.raw = std::string(raw);
  if (has_gold_suffix(name)) {
    mention.gold_id = name.substr(name.size() - 4);
    name.resize(name.size() - 5);
    if (has_gold_suffix(name)) {
      throw MalformedMention("author mention carries two suffixes: " +
                             std::string(raw));
    }
  }
  mention.surface_name = std::move(name);
  return mention;
}

}  // namespace disambig
