#include "tmlab/codec.hpp"

#include "tmlab/witness.hpp"

namespace tmlab {

namespace {

void put_bits(std::string& out, std::uint64_t value, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i)
    out.push_back(((value >> (width - 1 - i)) & 1u) ? '1' : '0');
}

std::uint64_t read_bits(std::string_view bits, std::size_t pos, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = 2 * v + (bits[pos + i] == '1');
  return v;
}

struct Scan {
  std::optional<CodecError> error;
  std::size_t offset = 0;
  CnfFormula formula;
};

Scan scan(std::string_view bits) {
  Scan s;
  auto fail = [&](CodecError e, std::size_t at) {
    s.error = e;
    s.offset = at;
    return s;
  };
  if (bits.empty()) return fail(CodecError::TruncatedRecord, 0);
  if (bits.find_first_not_of("01") != std::string_view::npos)
    throw std::invalid_argument("encoded formula is not a bit string");
  if (bits[0] == '0') return fail(CodecError::ZeroWidth, 0);
  std::size_t k = 0;
  while (k < bits.size() && bits[k] == '1') ++k;
  if (k == bits.size()) return fail(CodecError::TruncatedRecord, 0);
  std::size_t pos = k + 1;
  if (pos >= bits.size()) return fail(CodecError::TruncatedRecord, pos);
  if (bits[pos] == '0') return fail(CodecError::NonCanonicalWidth, pos);
  if (bits.size() - pos < k) return fail(CodecError::TruncatedRecord, pos);
  if (k > 32) throw std::invalid_argument("variable index width above 32 bits");
  const std::uint64_t v = read_bits(bits, pos, k);
  pos += k;
  s.formula.variable_count = static_cast<std::size_t>(v);

  Clause open;
  while (true) {
    if (pos == bits.size()) {
      if (!open.empty()) return fail(CodecError::MissingTerminator, pos);
      if (s.formula.clauses.empty()) return fail(CodecError::EmptyFormula, pos);
      return s;
    }
    if (bits.size() - pos < 1 + k) return fail(CodecError::TruncatedRecord, pos);
    const bool sign = bits[pos] == '1';
    const std::uint64_t index = read_bits(bits, pos + 1, k);
    if (index == 0) {
      if (sign) return fail(CodecError::BadTerminator, pos);
      if (open.empty()) return fail(CodecError::EmptyClause, pos);
      s.formula.clauses.push_back(std::move(open));
      open.clear();
    } else if (index > v) {
      return fail(CodecError::IndexOutOfRange, pos);
    } else {
      open.push_back({static_cast<std::uint32_t>(index), sign});
    }
    pos += 1 + k;
  }
}

}  // namespace

std::string_view to_string(CodecError e) {
  switch (e) {
    case CodecError::TruncatedRecord: return "truncated-record";
    case CodecError::IndexOutOfRange: return "index-out-of-range";
    case CodecError::MissingTerminator: return "missing-terminator";
    case CodecError::EmptyClause: return "empty-clause";
    case CodecError::EmptyFormula: return "empty-formula";
    case CodecError::ZeroWidth: return "zero-width";
    case CodecError::NonCanonicalWidth: return "non-canonical-width";
    case CodecError::BadTerminator: return "bad-terminator";
  }
  return "unknown";
}

DecodeError::DecodeError(CodecError code, std::size_t offset)
    : ParseError("encoded formula: " + std::string(to_string(code)) + " at bit " +
                 std::to_string(offset)),
      code_(code),
      offset_(offset) {}

std::size_t index_width(std::size_t v) { return ceil_log2(v + 1); }

EncodedFormula encode(const CnfFormula& f) {
  f.validate();
  const std::size_t k = index_width(f.variable_count);
  EncodedFormula e;
  e.bits.reserve(2 * k + 1 + (f.literal_count() + f.clauses.size()) * (1 + k));
  e.bits.append(k, '1');
  e.bits.push_back('0');
  put_bits(e.bits, f.variable_count, k);
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c) {
      e.bits.push_back(l.negated ? '1' : '0');
      put_bits(e.bits, l.variable, k);
    }
    e.bits.append(1 + k, '0');
  }
  return e;
}

CnfFormula decode(std::string_view bits) {
  Scan s = scan(bits);
  if (s.error) throw DecodeError(*s.error, s.offset);
  return std::move(s.formula);
}

std::optional<CodecError> check_encoding(std::string_view bits) { return scan(bits).error; }

std::string encoding_dump(const CnfFormula& f) {
  f.validate();
  const std::size_t k = index_width(f.variable_count);
  std::string out = "prefix v=" + std::to_string(f.variable_count) + " k=" + std::to_string(k) +
                    ": " + std::string(k, '1') + " 0 ";
  put_bits(out, f.variable_count, k);
  out += '\n';
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    out += "clause " + std::to_string(i + 1) + ":";
    for (const Literal& l : f.clauses[i]) {
      out += ' ';
      out += l.negated ? '-' : '+';
      out += std::to_string(l.variable) + "[" + (l.negated ? "1 " : "0 ");
      put_bits(out, l.variable, k);
      out += ']';
    }
    out += " end[0 " + std::string(k, '0') + "]\n";
  }
  return out;
}

}  // namespace tmlab
