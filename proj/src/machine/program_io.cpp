#include "tmlab/program_io.hpp"

#include <sstream>
#include <vector>

#include "tmlab/errors.hpp"

namespace tmlab {

namespace {

const char* role_name(TapeRole r) {
  switch (r) {
    case TapeRole::Input: return "input";
    case TapeRole::Guess: return "guess";
    case TapeRole::Work: return "work";
    case TapeRole::Output: return "output";
    case TapeRole::UnaryCounter: return "counter";
  }
  return "work";
}

TapeRole role_from(const std::string& s, std::size_t line) {
  if (s == "input") return TapeRole::Input;
  if (s == "guess") return TapeRole::Guess;
  if (s == "work") return TapeRole::Work;
  if (s == "output") return TapeRole::Output;
  if (s == "counter") return TapeRole::UnaryCounter;
  throw ParseError("line " + std::to_string(line) + ": unknown tape role '" + s + "'");
}

char match_char(Match m) { return m == Match::Any ? '*' : "01_"[static_cast<int>(m)]; }
char write_char(Write w) { return w == Write::Keep ? '*' : "01_"[static_cast<int>(w)]; }
char move_char(Move m) { return m == Move::Left ? 'L' : m == Move::Right ? 'R' : 'S'; }

std::size_t parse_number(const std::string& tok, std::size_t line, bool allow_q = false) {
  std::string digits = tok;
  if (allow_q && !digits.empty() && digits[0] == 'q') digits.erase(0, 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + tok + "'");
  return std::stoull(digits);
}

}  // namespace

std::string to_text(const Program& program) {
  const ProgramDesc& d = program.desc();
  std::ostringstream out;
  out << "states " << d.state_count << " tapes " << d.tape_count << " start " << d.start
      << " accept " << d.accept << " reject " << d.reject << '\n';
  out << "roles";
  for (std::size_t t = 0; t < d.tape_count; ++t) out << ' ' << role_name(program.role(t));
  out << '\n';
  for (const Preload& p : d.preloads) {
    if (!p.w.serialized())
      throw std::invalid_argument("preload witness size '" + p.w.description() +
                                  "' has no text form");
    out << "preload " << p.tape << ' '
        << (p.kind == PreloadKind::WitnessLength ? "witness " : "prefix ") << *p.w.serialized()
        << '\n';
  }
  if (d.preload_cap != static_cast<std::size_t>(-1)) out << "cap " << d.preload_cap << '\n';
  for (std::size_t s = 0; s < d.labels.size(); ++s)
    if (!d.labels[s].empty() && d.labels[s].find_first_of(" \t#") == std::string::npos)
      out << "label " << s << ' ' << d.labels[s] << '\n';
  for (StateId m : d.markers) out << "marker " << m << '\n';
  for (const Rule& r : d.rules) {
    out << r.from << ' ';
    for (Match m : r.read) out << match_char(m);
    out << " -> " << r.to << ' ';
    for (Write w : r.write) out << write_char(w);
    out << ' ';
    for (Move m : r.move) out << move_char(m);
    out << '\n';
  }
  return out.str();
}

Program parse_program(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  ProgramDesc d;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto fail = [&](const std::string& why) {
      throw ParseError("line " + std::to_string(line_no) + ": " + why);
    };

    if (!have_header) {
      if (tok.size() != 10 || tok[0] != "states" || tok[2] != "tapes" || tok[4] != "start" ||
          tok[6] != "accept" || tok[8] != "reject")
        fail("expected 'states S tapes K start Q accept Q reject Q'");
      d.state_count = parse_number(tok[1], line_no);
      d.tape_count = parse_number(tok[3], line_no);
      d.start = static_cast<StateId>(parse_number(tok[5], line_no, true));
      d.accept = static_cast<StateId>(parse_number(tok[7], line_no, true));
      d.reject = static_cast<StateId>(parse_number(tok[9], line_no, true));
      if (d.tape_count == 0 || d.tape_count > 255) fail("tape count must be in 1..255");
      have_header = true;
      continue;
    }

    if (tok[0] == "roles") {
      if (tok.size() != d.tape_count + 1) fail("roles line must name every tape");
      d.roles.clear();
      for (std::size_t i = 1; i < tok.size(); ++i) d.roles.push_back(role_from(tok[i], line_no));
    } else if (tok[0] == "preload") {
      if (tok.size() < 4) fail("preload needs TAPE KIND FN");
      Preload p;
      p.tape = parse_number(tok[1], line_no);
      if (tok[2] == "witness") {
        p.kind = PreloadKind::WitnessLength;
      } else if (tok[2] == "prefix") {
        p.kind = PreloadKind::PrefixLength;
      } else {
        fail("preload kind must be witness or prefix");
      }
      std::string fn;
      for (std::size_t i = 3; i < tok.size(); ++i) fn += (i > 3 ? " " : "") + tok[i];
      try {
        p.w = WitnessSizeFn::parse(fn);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      d.preloads.push_back(std::move(p));
    } else if (tok[0] == "cap") {
      if (tok.size() != 2) fail("cap takes one number");
      d.preload_cap = parse_number(tok[1], line_no);
    } else if (tok[0] == "label") {
      if (tok.size() != 3) fail("label takes a state and a name");
      std::size_t s = parse_number(tok[1], line_no, true);
      if (s >= d.state_count) fail("label state out of range");
      d.labels.resize(d.state_count);
      d.labels[s] = tok[2];
    } else if (tok[0] == "marker") {
      if (tok.size() != 2) fail("marker takes a state");
      d.markers.push_back(static_cast<StateId>(parse_number(tok[1], line_no, true)));
    } else {
      if (tok.size() != 6 || tok[2] != "->") fail("expected 'Q READ -> Q WRITE MOVES'");
      const std::size_t k = d.tape_count;
      if (tok[1].size() != k || tok[4].size() != k || tok[5].size() != k)
        fail("vector width differs from tape count " + std::to_string(k));
      Rule r;
      r.from = static_cast<StateId>(parse_number(tok[0], line_no, true));
      r.to = static_cast<StateId>(parse_number(tok[3], line_no, true));
      for (char c : tok[1]) {
        switch (c) {
          case '0': r.read.push_back(Match::Zero); break;
          case '1': r.read.push_back(Match::One); break;
          case '_': r.read.push_back(Match::Blank); break;
          case '*': r.read.push_back(Match::Any); break;
          default: fail(std::string("bad read symbol '") + c + "'");
        }
      }
      for (char c : tok[4]) {
        switch (c) {
          case '0': r.write.push_back(Write::Zero); break;
          case '1': r.write.push_back(Write::One); break;
          case '_': r.write.push_back(Write::Blank); break;
          case '*': r.write.push_back(Write::Keep); break;
          default: fail(std::string("bad write symbol '") + c + "'");
        }
      }
      for (char c : tok[5]) {
        switch (c) {
          case 'L': r.move.push_back(Move::Left); break;
          case 'R': r.move.push_back(Move::Right); break;
          case 'S': r.move.push_back(Move::Stay); break;
          default: fail(std::string("bad move '") + c + "'");
        }
      }
      d.rules.push_back(std::move(r));
    }
  }
  if (!have_header) throw ParseError("missing header line");
  return Program(std::move(d));
}

}  // namespace tmlab
