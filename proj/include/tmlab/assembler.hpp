#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tmlab/program.hpp"

namespace tmlab {

struct Cond {
  std::size_t tape;
  Symbol sym;
};

struct Op {
  std::size_t tape;
  Write write = Write::Keep;
  Move move = Move::Stay;
};

inline Cond is(std::size_t t, Symbol s) { return {t, s}; }
inline Cond is_blank(std::size_t t) { return {t, Symbol::Blank}; }
inline Write as_write(Symbol s) { return static_cast<Write>(static_cast<std::uint8_t>(s)); }
inline Op put(std::size_t t, Symbol s, Move m = Move::Stay) { return {t, as_write(s), m}; }
inline Op right(std::size_t t) { return {t, Write::Keep, Move::Right}; }
inline Op left(std::size_t t) { return {t, Write::Keep, Move::Left}; }

/// Builds programs from rules over named states. Unlisted tapes in a rule
/// read Any, keep their cell and do not move. `finish` adds a fallback rule
/// to each state so that assembled programs have total transition tables.
class Assembler {
 public:
  explicit Assembler(std::vector<TapeRole> roles);

  std::size_t tape_count() const { return roles_.size(); }
  StateId state(std::string label = {});
  StateId accept() const { return accept_; }
  StateId reject() const { return reject_; }
  std::size_t state_count() const { return labels_.size(); }

  void on(StateId from, std::span<const Cond> when, std::span<const Op> ops, StateId to);
  void on(StateId from, std::initializer_list<Cond> when, std::initializer_list<Op> ops,
          StateId to) {
    on(from, std::span<const Cond>(when.begin(), when.size()),
       std::span<const Op>(ops.begin(), ops.size()), to);
  }

  /// Adds a fully specified rule (vectors sized to the tape count).
  void add_rule(Rule r);

  void mark(StateId s) { markers_.push_back(s); }
  void add_preload(Preload p) { preloads_.push_back(std::move(p)); }
  void set_preload_cap(std::size_t cap) { preload_cap_ = cap; }

  /// Fallback transitions go through a "diag:unexpected-symbol" state to reject.
  Program finish(StateId start);

 private:
  std::vector<TapeRole> roles_;
  std::vector<std::string> labels_;
  std::vector<Rule> rules_;
  std::vector<Preload> preloads_;
  std::vector<StateId> markers_;
  std::size_t preload_cap_ = static_cast<std::size_t>(-1);
  StateId accept_;
  StateId reject_;
};

// Common subroutines. Each takes an entry state and returns a fresh exit
// state. "Rewind" assumes the tape content is a blank-free run starting at
// cell 1 and the head is on or just past it; the head ends on cell 1.

StateId rewind(Assembler& a, StateId from, std::size_t tape);
StateId rewind_all(Assembler& a, StateId from, std::initializer_list<std::size_t> tapes);
/// Copies the run under `src` onto every tape in `dsts`, all heads moving
/// right, until `src` reads blank.
StateId copy_run(Assembler& a, StateId from, std::size_t src, std::span<const std::size_t> dsts);
inline StateId copy_run(Assembler& a, StateId from, std::size_t src,
                        std::initializer_list<std::size_t> dsts) {
  return copy_run(a, from, src, std::span<const std::size_t>(dsts.begin(), dsts.size()));
}
/// Moves right until the tape reads blank.
StateId skip_run(Assembler& a, StateId from, std::size_t tape);
/// Erases the whole run and leaves the head on cell 1.
StateId clear_run(Assembler& a, StateId from, std::size_t tape);
/// Erases from the head rightwards to the first blank, then rewinds over the
/// (non-empty) content left of the head.
StateId truncate_and_rewind(Assembler& a, StateId from, std::size_t tape);
/// Unconditional transition with the given operations.
StateId then(Assembler& a, StateId from, std::initializer_list<Op> ops, std::string label = {});

}  // namespace tmlab
