#include "disambig/dblp_xml.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "disambig/errors.hpp"

namespace disambig {

std::size_t MemorySource::read(char* buf, std::size_t capacity) {
  const std::size_t n = std::min(capacity, data_.size() - pos_);
  std::memcpy(buf, data_.data() + pos_, n);
  pos_ += n;
  return n;
}

namespace {

class FileSource final : public ByteSource {
 public:
  FileSource(std::FILE* file, bool owned) : file_(file), owned_(owned) {
    prefix_len_ = std::fread(prefix_.data(), 1, prefix_.size(), file_);
    gzip_ = prefix_len_ == 2 && static_cast<unsigned char>(prefix_[0]) == 0x1f &&
            static_cast<unsigned char>(prefix_[1]) == 0x8b;
    if (gzip_) {
      stream_.zalloc = Z_NULL;
      stream_.zfree = Z_NULL;
      stream_.opaque = Z_NULL;
      // 16 + MAX_WBITS: expect a gzip wrapper.
      if (inflateInit2(&stream_, 16 + MAX_WBITS) != Z_OK) {
        throw ParseError("cannot initialise gzip decoder", 0);
      }
      std::memcpy(in_.data(), prefix_.data(), prefix_len_);
      stream_.next_in = reinterpret_cast<Bytef*>(in_.data());
      stream_.avail_in = static_cast<uInt>(prefix_len_);
      prefix_len_ = 0;
    }
  }

  ~FileSource() override {
    if (gzip_) inflateEnd(&stream_);
    if (owned_) std::fclose(file_);
  }

  std::size_t read(char* buf, std::size_t capacity) override {
    if (!gzip_) {
      std::size_t n = 0;
      if (prefix_pos_ < prefix_len_) {
        n = std::min(capacity, prefix_len_ - prefix_pos_);
        std::memcpy(buf, prefix_.data() + prefix_pos_, n);
        prefix_pos_ += n;
        if (n == capacity) return n;
      }
      return n + std::fread(buf + n, 1, capacity - n, file_);
    }
    if (done_) return 0;
    stream_.next_out = reinterpret_cast<Bytef*>(buf);
    stream_.avail_out = static_cast<uInt>(capacity);
    while (stream_.avail_out == capacity) {
      if (stream_.avail_in == 0) {
        const std::size_t got = std::fread(in_.data(), 1, in_.size(), file_);
        if (got == 0) {
          if (std::ferror(file_)) throw ParseError("read error", compressed_);
          // Truncated stream: report what was inflated so far.
          throw ParseError("truncated gzip stream", compressed_);
        }
        compressed_ += got;
        stream_.next_in = reinterpret_cast<Bytef*>(in_.data());
        stream_.avail_in = static_cast<uInt>(got);
      }
      const int rc = inflate(&stream_, Z_NO_FLUSH);
      if (rc == Z_STREAM_END) {
        // Concatenated gzip members are legal; keep going if more follow.
        if (stream_.avail_in == 0 && std::feof(file_)) {
          done_ = true;
          break;
        }
        inflateReset(&stream_);
        continue;
      }
      if (rc != Z_OK && rc != Z_BUF_ERROR) {
        throw ParseError("corrupt gzip stream", compressed_);
      }
    }
    return capacity - stream_.avail_out;
  }

 private:
  std::FILE* file_;
  bool owned_;
  bool gzip_ = false;
  bool done_ = false;
  std::array<char, 2> prefix_{};
  std::size_t prefix_len_ = 0;
  std::size_t prefix_pos_ = 0;
  z_stream stream_{};
  std::array<char, 1 << 16> in_{};
  std::uint64_t compressed_ = 0;
};

// Named entities of ISO 8859-1, code points 160..255, as declared by
// dblp.dtd.
constexpr std::array<std::string_view, 96> kLatin1Entities{
    "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar",
    "sect",   "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",
    "reg",    "macr",   "deg",    "plusmn", "sup2",   "sup3",   "acute",
    "micro",  "para",   "middot", "cedil",  "sup1",   "ordm",   "raquo",
    "frac14", "frac12", "frac34", "iquest", "Agrave", "Aacute", "Acirc",
    "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil", "Egrave", "Eacute",
    "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",   "ETH",
    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
    "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",
    "szlig",  "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",
    "aelig",  "ccedil", "egrave", "eacute", "ecirc",  "euml",   "igrave",
    "iacute", "icirc",  "iuml",   "eth",    "ntilde", "ograve", "oacute",
    "ocirc",  "otilde", "ouml",   "divide", "oslash", "ugrave", "uacute",
    "ucirc",  "uuml",   "yacute", "thorn",  "yuml",
};

const std::unordered_map<std::string_view, char32_t>& entity_table() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string_view, char32_t>{
        {"amp", U'&'}, {"lt", U'<'}, {"gt", U'>'}, {"quot", U'"'},
        {"apos", U'\''}};
    for (std::size_t i = 0; i < kLatin1Entities.size(); ++i) {
      t->emplace(kLatin1Entities[i], static_cast<char32_t>(160 + i));
    }
    return t;
  }();
  return *table;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_xml_space(int c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool is_name_char(int c) {
  return c >= 0 && !is_xml_space(c) && c != '/' && c != '>' && c != '=' &&
         c != '<' && c != '"' && c != '\'';
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

enum class Field { kNone, kAuthor, kTitle, kYear, kJournal, kBooktitle, kSchool };

Field field_from_name(std::string_view name) {
  if (name == "author") return Field::kAuthor;
  if (name == "title") return Field::kTitle;
  if (name == "year") return Field::kYear;
  if (name == "journal") return Field::kJournal;
  if (name == "booktitle") return Field::kBooktitle;
  if (name == "school") return Field::kSchool;
  return Field::kNone;
}

struct StartTag {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  bool self_closing = false;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

}  // namespace

struct DblpReader::Impl {
  enum class State { kProlog, kInRoot, kAfterRoot, kDone };

  explicit Impl(ByteSource& s) : source(s) {}

  ByteSource& source;
  std::unique_ptr<ByteSource> owned;
  std::vector<char> buf = std::vector<char>(1 << 16);
  std::size_t pos = 0;
  std::size_t len = 0;
  std::uint64_t consumed = 0;
  bool latin1 = false;
  State state = State::kProlog;
  std::string root_name;

  std::uint64_t offset() const { return consumed + pos; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, offset());
  }

  int peek() {
    if (pos == len) {
      consumed += len;
      pos = 0;
      len = source.read(buf.data(), buf.size());
    }
    return pos < len ? static_cast<unsigned char>(buf[pos]) : -1;
  }

  int get() {
    const int c = peek();
    if (c >= 0) ++pos;
    return c;
  }

  int get_or_fail() {
    const int c = get();
    if (c < 0) fail("unexpected end of input");
    return c;
  }

  void expect(std::string_view literal) {
    for (char want : literal) {
      if (get_or_fail() != static_cast<unsigned char>(want)) {
        fail("expected '" + std::string(literal) + "'");
      }
    }
  }

  void skip_space() {
    while (is_xml_space(peek())) get();
  }

  void append_byte(std::string& out, int c) {
    if (latin1 && c >= 0x80) {
      append_utf8(out, static_cast<char32_t>(c));
    } else {
      out.push_back(static_cast<char>(c));
    }
  }

  // Called after '&'.
  void read_entity(std::string& out) {
    std::string name;
    for (;;) {
      const int c = get_or_fail();
      if (c == ';') break;
      if (name.size() > 32 || is_xml_space(c) || c == '<' || c == '&') {
        fail("unterminated entity reference");
      }
      name.push_back(static_cast<char>(c));
    }
    if (name.empty()) fail("empty entity reference");
    if (name[0] == '#') {
      std::string_view digits(name);
      digits.remove_prefix(1);
      int base = 10;
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        base = 16;
        digits.remove_prefix(1);
      }
      std::uint32_t cp = 0;
      const auto [end, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
      if (digits.empty() || ec != std::errc() ||
          end != digits.data() + digits.size() || cp == 0 || cp > 0x10FFFF) {
        fail("invalid character reference &" + name + ";");
      }
      append_utf8(out, static_cast<char32_t>(cp));
      return;
    }
    const auto& table = entity_table();
    const auto it = table.find(name);
    if (it == table.end()) fail("unknown entity &" + name + ";");
    append_utf8(out, it->second);
  }

  std::string read_name() {
    std::string name;
    while (is_name_char(peek())) name.push_back(static_cast<char>(get()));
    if (name.empty()) fail("expected a name");
    return name;
  }

  // Called after '<' when the next byte starts a name.
  StartTag read_start_tag() {
    StartTag tag;
    tag.name = read_name();
    for (;;) {
      skip_space();
      const int c = get_or_fail();
      if (c == '>') return tag;
      if (c == '/') {
        if (get_or_fail() != '>') fail("expected '>' after '/'");
        tag.self_closing = true;
        return tag;
      }
      --pos;  // c was peeked data still in the buffer
      std::string key = read_name();
      skip_space();
      if (get_or_fail() != '=') fail("expected '=' after attribute name");
      skip_space();
      const int quote = get_or_fail();
      if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
      std::string value;
      for (;;) {
        const int v = get_or_fail();
        if (v == quote) break;
        if (v == '<') fail("'<' in attribute value");
        if (v == '&') {
          read_entity(value);
        } else {
          append_byte(value, v);
        }
      }
      tag.attributes.emplace_back(std::move(key), std::move(value));
    }
  }

  // Called after "</".
  std::string read_end_tag() {
    std::string name = read_name();
    skip_space();
    if (get_or_fail() != '>') fail("expected '>' in end tag");
    return name;
  }

  // Called after "<?". Returns the instruction body.
  std::string read_pi() {
    std::string body;
    for (;;) {
      const int c = get_or_fail();
      if (c == '?' && peek() == '>') {
        get();
        return body;
      }
      body.push_back(static_cast<char>(c));
    }
  }

  // Called after "<!--".
  void skip_comment() {
    int dashes = 0;
    for (;;) {
      const int c = get_or_fail();
      if (c == '>' && dashes >= 2) return;
      dashes = c == '-' ? dashes + 1 : 0;
    }
  }

  // Called after "<![CDATA[".
  void read_cdata(std::string* out) {
    int brackets = 0;
    for (;;) {
      const int c = get_or_fail();
      if (c == '>' && brackets >= 2) {
        if (out) out->resize(out->size() - 2);
        return;
      }
      brackets = c == ']' ? brackets + 1 : 0;
      if (out) append_byte(*out, c);
    }
  }

  // Called after "<!DOCTYPE".
  void skip_doctype() {
    int depth = 0;
    for (;;) {
      const int c = get_or_fail();
      if (c == '"' || c == '\'') {
        while (get_or_fail() != c) {
        }
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        --depth;
      } else if (c == '>' && depth <= 0) {
        return;
      }
    }
  }

  // Called after "<!". Handles comments and CDATA; `text` receives CDATA
  // content when non-null.
  void read_bang(std::string* text, bool allow_doctype) {
    const int c = get_or_fail();
    if (c == '-') {
      expect("-");
      skip_comment();
    } else if (c == '[') {
      expect("CDATA[");
      read_cdata(text);
    } else if (c == 'D' && allow_doctype) {
      expect("OCTYPE");
      skip_doctype();
    } else {
      fail("unexpected markup declaration");
    }
  }

  void handle_xml_declaration(std::string_view body) {
    const auto at = body.find("encoding");
    if (at == std::string_view::npos) return;
    auto rest = body.substr(at + 8);
    const auto open = rest.find_first_of("\"'");
    if (open == std::string_view::npos) return;
    const auto close = rest.find(rest[open], open + 1);
    if (close == std::string_view::npos) return;
    const std::string enc = lowercase(rest.substr(open + 1, close - open - 1));
    if (enc == "iso-8859-1" || enc == "latin1" || enc == "iso8859-1" ||
        enc == "latin-1") {
      latin1 = true;
    } else if (enc != "utf-8" && enc != "utf8" && enc != "us-ascii" &&
               enc != "ascii") {
      fail("unsupported encoding " + enc);
    }
  }

  // Skips everything before the root element and returns its start tag, or
  // nothing for an empty document.
  std::optional<StartTag> read_prolog() {
    bool first = true;
    for (;;) {
      skip_space();
      const int c = get();
      if (c < 0) return std::nullopt;
      if (c != '<') fail("text before root element");
      const int n = peek();
      if (n == '?') {
        get();
        const std::string body = read_pi();
        if (first && body.rfind("xml", 0) == 0) handle_xml_declaration(body);
      } else if (n == '!') {
        get();
        read_bang(nullptr, true);
      } else {
        return read_start_tag();
      }
      first = false;
    }
  }

  void read_epilog() {
    for (;;) {
      skip_space();
      const int c = get();
      if (c < 0) return;
      if (c != '<') fail("content after root element");
      const int n = get_or_fail();
      if (n == '?') {
        read_pi();
      } else if (n == '!') {
        read_bang(nullptr, false);
      } else {
        fail("second root element");
      }
    }
  }

  static void commit(RawRecord& record, Field field, std::string& text,
                     std::optional<std::string>& journal,
                     std::optional<std::string>& booktitle,
                     std::optional<std::string>& school) {
    switch (field) {
      case Field::kAuthor:
        record.mentions.push_back(parse_mention(text));
        break;
      case Field::kTitle:
        if (record.title.empty()) record.title = normalize_name(text);
        break;
      case Field::kYear: {
        const std::string year = normalize_name(text);
        int value = 0;
        const auto [end, ec] =
            std::from_chars(year.data(), year.data() + year.size(), value);
        if (!year.empty() && ec == std::errc() &&
            end == year.data() + year.size() && !record.year) {
          record.year = value;
        }
        break;
      }
      case Field::kJournal:
        if (!journal) journal = normalize_name(text);
        break;
      case Field::kBooktitle:
        if (!booktitle) booktitle = normalize_name(text);
        break;
      case Field::kSchool:
        if (!school) school = normalize_name(text);
        break;
      case Field::kNone:
        break;
    }
    text.clear();
  }

  RawRecord read_record(const StartTag& start) {
    RawRecord record;
    record.kind = kind_from_name(start.name);
    const std::string* key = start.attribute("key");
    if (!key || key->empty()) {
      fail("<" + start.name + "> has no key attribute");
    }
    record.record_id = *key;
    if (start.self_closing) return record;

    std::optional<std::string> journal, booktitle, school;
    std::vector<std::string> open{start.name};
    Field field = Field::kNone;
    std::string text;
    auto finish_field = [&] {
      try {
        commit(record, field, text, journal, booktitle, school);
      } catch (const MalformedMention& e) {
        fail(std::string(e.what()) + " in record " + record.record_id);
      }
      field = Field::kNone;
    };

    for (;;) {
      const int c = get_or_fail();
      if (c == '<') {
        const int n = peek();
        if (n == '/') {
          get();
          const std::string name = read_end_tag();
          if (name != open.back()) {
            fail("mismatched end tag </" + name + ">, expected </" +
                 open.back() + ">");
          }
          open.pop_back();
          if (open.size() == 1) finish_field();
          if (open.empty()) break;
        } else if (n == '!') {
          get();
          read_bang(field != Field::kNone ? &text : nullptr, false);
        } else if (n == '?') {
          get();
          read_pi();
        } else {
          StartTag tag = read_start_tag();
          if (open.size() == 1) field = field_from_name(tag.name);
          if (tag.self_closing) {
            if (open.size() == 1) finish_field();
          } else {
            open.push_back(std::move(tag.name));
          }
        }
      } else if (field != Field::kNone) {
        if (c == '&') {
          read_entity(text);
        } else {
          append_byte(text, c);
        }
      } else if (c == '&') {
        std::string discard;
        read_entity(discard);
      }
    }
    record.venue = journal ? journal : booktitle ? booktitle : school;
    return record;
  }

  std::optional<RawRecord> next() {
    if (state == State::kProlog) {
      std::optional<StartTag> root = read_prolog();
      if (!root) {
        state = State::kDone;
        return std::nullopt;
      }
      root_name = root->name;
      if (kind_from_name(root->name) != RecordKind::kOther) {
        RawRecord record = read_record(*root);
        state = State::kAfterRoot;
        return record;
      }
      state = root->self_closing ? State::kAfterRoot : State::kInRoot;
    }
    while (state == State::kInRoot) {
      const int c = get_or_fail();
      if (c == '&') {
        std::string discard;
        read_entity(discard);
        continue;
      }
      if (c != '<') continue;
      const int n = peek();
      if (n == '/') {
        get();
        const std::string name = read_end_tag();
        if (name != root_name) fail("mismatched end tag </" + name + ">");
        state = State::kAfterRoot;
      } else if (n == '!') {
        get();
        read_bang(nullptr, false);
      } else if (n == '?') {
        get();
        read_pi();
      } else {
        return read_record(read_start_tag());
      }
    }
    if (state == State::kAfterRoot) {
      read_epilog();
      state = State::kDone;
    }
    return std::nullopt;
  }
};

DblpReader::DblpReader(ByteSource& source)
    : impl_(std::make_unique<Impl>(source)) {}

DblpReader::DblpReader(std::unique_ptr<ByteSource> source)
    : impl_(std::make_unique<Impl>(*source)) {
  impl_->owned = std::move(source);
}

DblpReader::~DblpReader() = default;

std::optional<RawRecord> DblpReader::next() { return impl_->next(); }

std::uint64_t DblpReader::offset() const { return impl_->offset(); }

std::unique_ptr<ByteSource> open_input(const std::string& path) {
  if (path == "-") return std::make_unique<FileSource>(stdin, false);
  std::FILE* file = std::fopen(path.c_str(), "rb");
  if (!file) throw ParseError("cannot open " + path, 0);
  return std::make_unique<FileSource>(file, true);
}

std::vector<RawRecord> parse_dblp(ByteSource& source) {
  DblpReader reader(source);
  std::vector<RawRecord> records;
  while (auto record = reader.next()) records.push_back(std::move(*record));
  return records;
}

std::vector<RawRecord> parse_dblp(std::string_view xml) {
  MemorySource source(xml);
  return parse_dblp(source);
}

namespace {

void write_escaped(std::ostream& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out << "&amp;"; break;
      case '<': out << "&lt;"; break;
      case '>': out << "&gt;"; break;
      case '"': out << "&quot;"; break;
      default: out << c;
    }
  }
}

std::string_view venue_element(RecordKind kind) {
  switch (kind) {
    case RecordKind::kArticle: return "journal";
    case RecordKind::kPhdthesis:
    case RecordKind::kMastersthesis: return "school";
    default: return "booktitle";
  }
}

}  // namespace

DblpXmlWriter::DblpXmlWriter(std::ostream& out) : out_(out) {
  out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<dblp>\n";
}

DblpXmlWriter::~DblpXmlWriter() { finish(); }

void DblpXmlWriter::write(const RawRecord& record) {
  const std::string_view element = kind_name(record.kind);
  out_ << '<' << element << " key=\"";
  write_escaped(out_, record.record_id);
  out_ << "\">\n";
  for (const AuthorMention& m : record.mentions) {
    out_ << "<author>";
    write_escaped(out_, m.gold_key());
    out_ << "</author>\n";
  }
  out_ << "<title>";
  write_escaped(out_, record.title);
  out_ << "</title>\n";
  if (record.year) out_ << "<year>" << *record.year << "</year>\n";
  if (record.venue) {
    const std::string_view tag = venue_element(record.kind);
    out_ << '<' << tag << '>';
    write_escaped(out_, *record.venue);
    out_ << "</" << tag << ">\n";
  }
  out_ << "</" << element << ">\n";
}

void DblpXmlWriter::finish() {
  if (finished_) return;
  finished_ = true;
  out_ << "</dblp>\n";
}

std::string to_dblp_xml(const std::vector<RawRecord>& records) {
  std::ostringstream out;
  {
    DblpXmlWriter writer(out);
    for (const RawRecord& r : records) writer.write(r);
  }
  return out.str();
}

}  // namespace disambig
