#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "tmlab/cnf.hpp"
#include "tmlab/errors.hpp"

namespace tmlab {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("DIMACS line " + std::to_string(line) + ": " + what);
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  Clause current;
  std::string line;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == 'c') continue;
    if (line[start] == '%') break;
    std::istringstream fields(line.substr(start));
    if (line[start] == 'p') {
      if (have_header) fail(line_no, "second header");
      std::string p, kind;
      long long v = -1, c = -1;
      std::string extra;
      if (!(fields >> p >> kind >> v >> c) || p != "p" || kind != "cnf" || v < 0 || c < 0 ||
          (fields >> extra))
        fail(line_no, "malformed header, expected 'p cnf V C'");
      have_header = true;
      f.variable_count = static_cast<std::size_t>(v);
      declared_clauses = static_cast<std::size_t>(c);
      continue;
    }
    if (!have_header) fail(line_no, "clause before the 'p cnf' header");
    std::string token;
    while (fields >> token) {
      long long lit = 0;
      std::size_t used = 0;
      try {
        lit = std::stoll(token, &used);
      } catch (const std::exception&) {
        fail(line_no, "bad literal '" + token + "'");
      }
      if (used != token.size()) fail(line_no, "bad literal '" + token + "'");
      if (lit == 0) {
        if (current.empty()) fail(line_no, "empty clause");
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const unsigned long long var = lit < 0 ? -static_cast<unsigned long long>(lit) : lit;
      if (var > f.variable_count)
        fail(line_no, "variable " + std::to_string(var) + " exceeds the declared " +
                          std::to_string(f.variable_count));
      current.push_back({static_cast<std::uint32_t>(var), lit < 0});
    }
    last_line = line_no;
  }
  if (!have_header) fail(line_no, "missing 'p cnf' header");
  if (!current.empty()) fail(last_line, "unterminated clause");
  if (f.clauses.size() != declared_clauses)
    fail(line_no, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                      std::to_string(f.clauses.size()));
  if (f.clauses.empty()) fail(line_no, "formula has no clauses");
  return f;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string emit_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.variable_count) + " " +
                    std::to_string(f.clauses.size()) + "\n";
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c) {
      if (l.negated) out += '-';
      out += std::to_string(l.variable);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

}  // namespace tmlab
