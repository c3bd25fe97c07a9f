#include "tmlab/program.hpp"

#include <algorithm>
#include <string>

#include "tmlab/errors.hpp"

namespace tmlab {

char to_char(Symbol s) {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::One: return '1';
    case Symbol::Blank: return '_';
  }
  return '?';
}

Symbol symbol_from_char(char c) {
  switch (c) {
    case '0': return Symbol::Zero;
    case '1': return Symbol::One;
    case '_': return Symbol::Blank;
    default: throw ParseError(std::string("not a tape symbol: '") + c + "'");
  }
}

Program::Program(ProgramDesc desc) : desc_(std::move(desc)) {
  roles_ = desc_.roles;
  if (roles_.empty() && desc_.tape_count > 0) {
    roles_.assign(desc_.tape_count, TapeRole::Work);
    roles_[0] = TapeRole::Input;
  }
  validate();
  for (std::size_t t = 0; t < roles_.size(); ++t) {
    if (roles_[t] == TapeRole::Input) input_tape_ = t;
    if (roles_[t] == TapeRole::Guess) {
      guess_tape_ = t;
      guess_index_ = static_cast<int>(t);
    }
  }
  compile();
}

std::string Program::label(StateId s) const {
  if (s < desc_.labels.size() && !desc_.labels[s].empty()) return desc_.labels[s];
  return "q" + std::to_string(s);
}

void Program::validate() const {
  const auto fail = [](const std::string& why) { throw MalformedProgram(why); };
  const std::size_t n = desc_.state_count;
  if (n == 0) fail("program has no states");
  if (desc_.tape_count == 0) fail("program has no tapes");
  if (desc_.tape_count > 255) fail("too many tapes");
  if (desc_.start >= n || desc_.accept >= n || desc_.reject >= n)
    fail("start/accept/reject outside the state range");
  if (desc_.accept == desc_.reject) fail("accept and reject must differ");
  if (roles_.size() != desc_.tape_count) fail("tape role count differs from tape count");

  std::size_t inputs = 0, guesses = 0;
  for (TapeRole r : roles_) {
    inputs += r == TapeRole::Input;
    guesses += r == TapeRole::Guess;
  }
  if (inputs != 1) fail("exactly one tape must have role input");
  if (guesses > 1) fail("at most one tape may have role guess");

  for (std::size_t i = 0; i < desc_.rules.size(); ++i) {
    const Rule& r = desc_.rules[i];
    const std::string where = "rule " + std::to_string(i) + ": ";
    if (r.from >= n || r.to >= n) fail(where + "state out of range");
    if (r.from == desc_.accept || r.from == desc_.reject)
      fail(where + "halting states have no outgoing transitions");
    if (r.read.size() != desc_.tape_count || r.write.size() != desc_.tape_count ||
        r.move.size() != desc_.tape_count)
      fail(where + "vector width differs from tape count");
    for (std::size_t t = 0; t < desc_.tape_count; ++t) {
      if (roles_[t] != TapeRole::Guess) continue;
      if (r.write[t] != Write::Keep &&
          static_cast<std::uint8_t>(r.write[t]) != static_cast<std::uint8_t>(r.read[t]))
        fail(where + "guess tape is read-only");
      if (r.move[t] == Move::Left) fail(where + "guess tape head never moves left");
    }
  }

  std::vector<bool> used(desc_.tape_count, false);
  for (const Preload& p : desc_.preloads) {
    if (p.tape >= desc_.tape_count) fail("preload tape out of range");
    if (used[p.tape]) fail("two preloads on one tape");
    used[p.tape] = true;
    if (roles_[p.tape] == TapeRole::Input || roles_[p.tape] == TapeRole::Guess)
      fail("preload must target a work or counter tape");
  }
  for (StateId m : desc_.markers)
    if (m >= n) fail("marker state out of range");
}

void Program::compile() {
  const std::size_t n = desc_.state_count;
  const std::size_t k = desc_.tape_count;
  compiled_.assign(n, {});
  marked_.assign(n, 0);
  for (StateId m : desc_.markers) marked_[m] = 1;
  flags_.assign(n, 0);
  for (StateId m : desc_.markers) flags_[m] |= kMarked;
  flags_[desc_.accept] |= kHalting;
  flags_[desc_.reject] |= kHalting;

  std::vector<std::vector<std::uint32_t>> by_state(n);
  for (std::uint32_t i = 0; i < desc_.rules.size(); ++i) by_state[desc_.rules[i].from].push_back(i);

  actions_.reserve(desc_.rules.size());
  for (const Rule& r : desc_.rules) {
    Action a{r.to, static_cast<std::uint32_t>(effects_.size()), 0};
    for (std::size_t t = 0; t < k; ++t) {
      if (r.write[t] == Write::Keep && r.move[t] == Move::Stay) continue;
      effects_.push_back({static_cast<std::uint8_t>(t), static_cast<std::uint8_t>(r.write[t]),
                          static_cast<std::int8_t>(r.move[t])});
      ++a.effect_count;
    }
    actions_.push_back(a);
  }

  for (StateId s = 0; s < n; ++s) {
    CompiledState& cs = compiled_[s];
    cs.rule_begin = static_cast<std::uint32_t>(rules_by_state_.size());
    cs.rule_count = static_cast<std::uint32_t>(by_state[s].size());
    rules_by_state_.insert(rules_by_state_.end(), by_state[s].begin(), by_state[s].end());

    std::vector<std::uint32_t> rel;
    for (std::size_t t = 0; t < k; ++t) {
      bool relevant = std::any_of(by_state[s].begin(), by_state[s].end(), [&](std::uint32_t r) {
        return desc_.rules[r].read[t] != Match::Any;
      });
      if (relevant) rel.push_back(static_cast<std::uint32_t>(t));
    }
    cs.reads_guess = guess_tape_ && std::find(rel.begin(), rel.end(), *guess_tape_) != rel.end();
    if (cs.reads_guess) flags_[s] |= kReadsGuess;
    cs.relevant_begin = static_cast<std::uint32_t>(relevant_.size());
    cs.relevant_count = static_cast<std::uint32_t>(rel.size());
    for (std::size_t j = 0; j < rel.size(); ++j)
      relevant_.push_back({static_cast<std::uint32_t>(rel[j]), j < kPow3.size() ? kPow3[j] : 0});
    if (rel.size() > kMaxDenseRelevant) {
      cs.dense = false;
      continue;
    }
    const std::uint32_t combos = kPow3[rel.size()];
    cs.table_begin = static_cast<std::uint32_t>(table_.size());
    table_.resize(table_.size() + combos, kNoRule);
    for (std::uint32_t idx = 0; idx < combos; ++idx) {
      std::uint32_t rest = idx;
      std::array<std::uint8_t, kMaxDenseRelevant> sym{};
      for (std::size_t j = 0; j < rel.size(); ++j) {
        sym[j] = static_cast<std::uint8_t>(rest % 3);
        rest /= 3;
      }
      for (std::uint32_t r : by_state[s]) {
        const Rule& rule = desc_.rules[r];
        bool ok = true;
        for (std::size_t j = 0; j < rel.size() && ok; ++j) {
          Match m = rule.read[rel[j]];
          ok = m == Match::Any || static_cast<std::uint8_t>(m) == sym[j];
        }
        if (ok) {
          table_[cs.table_begin + idx] = r;
          break;
        }
      }
    }
  }
}

}  // namespace tmlab
