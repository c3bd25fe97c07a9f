#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tmlab/witness.hpp"

namespace tmlab {

enum class Symbol : std::uint8_t { Zero = 0, One = 1, Blank = 2 };
enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };
enum class TapeRole : std::uint8_t { Input, Guess, Work, Output, UnaryCounter };

/// Per-tape read condition of a rule.
enum class Match : std::uint8_t { Zero = 0, One = 1, Blank = 2, Any = 3 };
/// Per-tape write of a rule; Keep leaves the cell unchanged.
enum class Write : std::uint8_t { Zero = 0, One = 1, Blank = 2, Keep = 3 };

using StateId = std::uint32_t;

char to_char(Symbol s);
Symbol symbol_from_char(char c);
inline Symbol bit_symbol(bool b) { return b ? Symbol::One : Symbol::Zero; }

/// One transition pattern. Within a state, the first rule whose read
/// conditions all hold fires.
struct Rule {
  StateId from = 0;
  std::vector<Match> read;
  StateId to = 0;
  std::vector<Write> write;
  std::vector<Move> move;
};

enum class PreloadKind : std::uint8_t {
  /// Tape receives 1^{w(|input|)}.
  WitnessLength,
  /// Input is <x,y> with |y| = w(|x|); tape receives 1^{|x|}.
  PrefixLength,
};

/// A unary quantity written onto a tape before the first step. This hoists
/// computing w(|x|) out of the machine, per the computability convention.
struct Preload {
  std::size_t tape = 0;
  PreloadKind kind = PreloadKind::WitnessLength;
  WitnessSizeFn w = WitnessSizeFn::constant(0);
};

/// Plain description of a machine; `Program` validates and compiles one.
struct ProgramDesc {
  std::size_t state_count = 0;
  std::size_t tape_count = 0;
  StateId start = 0;
  StateId accept = 1;
  StateId reject = 2;
  /// Empty means tape 0 is the input and every other tape is work.
  std::vector<TapeRole> roles;
  std::vector<Rule> rules;
  std::vector<Preload> preloads;
  /// Largest unary quantity a preload may write before the run is refused.
  std::size_t preload_cap = static_cast<std::size_t>(-1);
  /// Optional per-state labels; used for diagnostics.
  std::vector<std::string> labels;
  /// States whose entry is reported to a RunObserver.
  std::vector<StateId> markers;
};

/// Immutable, validated, compiled machine. Safe to share across threads.
class Program {
 public:
  struct Effect {
    std::uint8_t tape;
    std::uint8_t write;  // Symbol value, or 3 for keep
    std::int8_t move;
  };
  struct Action {
    StateId next;
    std::uint32_t first_effect;
    std::uint32_t effect_count;
  };

  /// Throws MalformedProgram when an invariant does not hold.
  explicit Program(ProgramDesc desc);

  const ProgramDesc& desc() const { return desc_; }
  std::size_t state_count() const { return desc_.state_count; }
  std::size_t tape_count() const { return desc_.tape_count; }
  StateId start() const { return desc_.start; }
  StateId accept() const { return desc_.accept; }
  StateId reject() const { return desc_.reject; }
  bool is_halting(StateId s) const { return s == desc_.accept || s == desc_.reject; }
  TapeRole role(std::size_t tape) const { return roles_[tape]; }
  std::size_t input_tape() const { return input_tape_; }
  std::optional<std::size_t> guess_tape() const { return guess_tape_; }
  bool is_deterministic() const { return !guess_tape_.has_value(); }
  /// Guess tape index, or -1.
  int guess_index() const { return guess_index_; }
  const std::vector<Preload>& preloads() const { return desc_.preloads; }
  bool marked(StateId s) const { return marked_[s] != 0; }
  std::string label(StateId s) const;

  /// True when the transition taken in `s` can depend on the guess tape.
  bool reads_guess(StateId s) const { return (flags_[s] & kReadsGuess) != 0; }

  static constexpr std::uint8_t kHalting = 1;
  static constexpr std::uint8_t kReadsGuess = 2;
  static constexpr std::uint8_t kMarked = 4;
  /// kHalting | kReadsGuess | kMarked bits for `s`.
  std::uint8_t flags(StateId s) const { return flags_[s]; }

  /// Finds the action for state `s`; `read(tape)` yields the symbol under a
  /// head as 0, 1 or 2. Returns nullptr when no rule matches.
  template <class ReadFn>
  const Action* find(StateId s, ReadFn&& read) const {
    const CompiledState& cs = compiled_[s];
    if (cs.dense) {
      std::uint32_t index = 0;
      const Relevant* r = relevant_.data() + cs.relevant_begin;
      for (const Relevant* end = r + cs.relevant_count; r != end; ++r)
        index += static_cast<std::uint32_t>(read(r->tape)) * r->stride;
      std::uint32_t rule = table_[cs.table_begin + index];
      return rule == kNoRule ? nullptr : &actions_[rule];
    }
    return find_slow(s, read);
  }

  const Effect* effects(const Action& a) const { return effects_.data() + a.first_effect; }

 private:
  struct Relevant {
    std::uint32_t tape;
    std::uint32_t stride;
  };
  struct CompiledState {
    std::uint32_t relevant_begin = 0;
    std::uint32_t relevant_count = 0;
    std::uint32_t table_begin = 0;
    std::uint32_t rule_begin = 0;  // into rules_by_state_
    std::uint32_t rule_count = 0;
    bool dense = true;
    bool reads_guess = false;
  };

  static constexpr std::uint32_t kNoRule = 0xffffffffu;
  static constexpr std::uint32_t kMaxDenseRelevant = 10;
  static constexpr std::array<std::uint32_t, 11> kPow3 = {1,    3,    9,     27,    81,   243,
                                                         729, 2187, 6561, 19683, 59049};

  template <class ReadFn>
  const Action* find_slow(StateId s, ReadFn& read) const {
    const CompiledState& cs = compiled_[s];
    for (std::uint32_t k = 0; k < cs.rule_count; ++k) {
      std::uint32_t r = rules_by_state_[cs.rule_begin + k];
      const Rule& rule = desc_.rules[r];
      bool ok = true;
      for (std::size_t t = 0; t < rule.read.size() && ok; ++t)
        ok = rule.read[t] == Match::Any ||
             static_cast<std::uint8_t>(rule.read[t]) == static_cast<std::uint8_t>(read(t));
      if (ok) return &actions_[r];
    }
    return nullptr;
  }

  void validate() const;
  void compile();

  ProgramDesc desc_;
  std::vector<TapeRole> roles_;
  std::size_t input_tape_ = 0;
  std::optional<std::size_t> guess_tape_;
  int guess_index_ = -1;
  std::vector<std::uint8_t> marked_;
  std::vector<std::uint8_t> flags_;
  std::vector<CompiledState> compiled_;
  std::vector<Relevant> relevant_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> rules_by_state_;
  std::vector<Action> actions_;
  std::vector<Effect> effects_;
};

}  // namespace tmlab
