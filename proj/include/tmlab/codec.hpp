#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "tmlab/cnf.hpp"
#include "tmlab/errors.hpp"

namespace tmlab {

/// Layout: unary k then '0', then v in k bits (most significant first), then
/// each clause as (1 + k)-bit records, a sign bit followed by the variable
/// index, closed by the all-zero terminator record. k = ceil(lg(v + 1)).
struct EncodedFormula {
  std::string bits;
  std::size_t n() const { return bits.size(); }
};

enum class CodecError {
  TruncatedRecord,
  IndexOutOfRange,
  MissingTerminator,
  EmptyClause,
  EmptyFormula,
  ZeroWidth,
  NonCanonicalWidth,
  BadTerminator,
};

/// Stable kebab-case name, e.g. "truncated-record".
std::string_view to_string(CodecError e);

class DecodeError : public ParseError {
 public:
  DecodeError(CodecError code, std::size_t offset);
  CodecError code() const { return code_; }
  /// Bit offset where the offending record (or prefix field) starts.
  std::size_t offset() const { return offset_; }

 private:
  CodecError code_;
  std::size_t offset_;
};

/// ceil(lg(v + 1)): bits per variable index.
std::size_t index_width(std::size_t v);

EncodedFormula encode(const CnfFormula& f);
/// Throws DecodeError. Scans left to right and reports the first problem.
CnfFormula decode(std::string_view bits);
/// Same scan without throwing.
std::optional<CodecError> check_encoding(std::string_view bits);

/// One line for the prefix, then one line per clause listing its records.
std::string encoding_dump(const CnfFormula& f);

}  // namespace tmlab
