#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/record.hpp"

namespace disambig {

class ByteSource {
 public:
  virtual ~ByteSource() = default;
  /// Returns the number of bytes written to `buf`; 0 means end of input.
  virtual std::size_t read(char* buf, std::size_t capacity) = 0;
};

class MemorySource final : public ByteSource {
 public:
  explicit MemorySource(std::string_view data) : data_(data) {}
  std::size_t read(char* buf, std::size_t capacity) override;

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

/// Opens a file ("-" for standard input). Gzip input is detected from the
/// 0x1f 0x8b magic bytes and inflated on the fly; anything else is passed
/// through unchanged.
std::unique_ptr<ByteSource> open_input(const std::string& path);

/// Pull parser over a DBLP XML dump. Each call to next() consumes exactly one
/// publication element, so memory stays proportional to the largest record.
///
/// Publication elements are the children of the document root. A document
/// whose root is itself a publication element yields that single record.
/// Children of unknown names are still yielded, with kind other. Character
/// references, the predefined entities, and the ISO-8859-1 named entities
/// declared by dblp.dtd are resolved. Input declared as ISO-8859-1 is
/// transcoded to UTF-8.
class DblpReader {
 public:
  explicit DblpReader(ByteSource& source);
  explicit DblpReader(std::unique_ptr<ByteSource> source);
  ~DblpReader();
  DblpReader(const DblpReader&) = delete;
  DblpReader& operator=(const DblpReader&) = delete;

  /// Throws ParseError carrying the byte offset on malformed input.
  std::optional<RawRecord> next();

  /// Bytes consumed from the underlying source so far.
  std::uint64_t offset() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<RawRecord> parse_dblp(std::string_view xml);
std::vector<RawRecord> parse_dblp(ByteSource& source);

/// Streams records back out as DBLP-shaped XML (UTF-8).
class DblpXmlWriter {
 public:
  explicit DblpXmlWriter(std::ostream& out);
  ~DblpXmlWriter();
  DblpXmlWriter(const DblpXmlWriter&) = delete;
  DblpXmlWriter& operator=(const DblpXmlWriter&) = delete;

  void write(const RawRecord& record);
  /// Closes the root element. Called by the destructor if omitted.
  void finish();

 private:
  std::ostream& out_;
  bool finished_ = false;
};

std::string to_dblp_xml(const std::vector<RawRecord>& records);

}  // namespace disambig
