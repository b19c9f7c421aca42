#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace disambig {

// Input bytes that are not well-formed (XML, canonical JSON, gold files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

class MalformedMention : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unknown publication or node identifier.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Caller supplied an argument outside the operation's domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data violates a structural invariant (e.g. one record carrying two
// gold identities of the same name).
class DataIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Modularity of a graph without edges.
class UndefinedModularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace disambig
