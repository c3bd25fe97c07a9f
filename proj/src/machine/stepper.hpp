#pragma once

#include <cstdint>
#include <string>

#include "tmlab/errors.hpp"
#include "tmlab/machine.hpp"

namespace tmlab::detail {

constexpr std::uint8_t kBlankCell = static_cast<std::uint8_t>(Symbol::Blank);
constexpr std::uint8_t kUnknownCell = 3;

enum class Pause : std::uint8_t { Halted, OutOfFuel, NeedsGuessBit, Marker };

[[noreturn]] void throw_no_transition(const Program& program, StateId s);
[[noreturn]] void throw_left_edge(const Program& program, StateId s, std::size_t tape);
[[noreturn]] void throw_guess_overrun(const Program& program, StateId s, std::size_t length);

/// Steps `c` until it halts, has taken `fuel` steps in total, needs an
/// undetermined guess bit, or (with kStopAtMarkers) enters a marked state.
template <bool kStopAtMarkers>
Pause advance(const Program& program, Configuration& c, std::uint64_t fuel) {
  const int guess = program.guess_index();
  Tape* tapes = c.tapes.data();
  std::int8_t* last = c.last_move.data();
  std::uint64_t* reversals = c.reversals.data();
  StateId s = c.state;
  StateId prev = c.previous_state;
  std::uint64_t steps = c.steps_taken;
  auto sync = [&] {
    c.state = s;
    c.previous_state = prev;
    c.steps_taken = steps;
  };
  auto read = [tapes](std::size_t t) {
    const Tape& tape = tapes[t];
    return tape.cells[tape.head];
  };

  Pause why = Pause::OutOfFuel;
  for (;;) {
    const std::uint8_t flags = program.flags(s);
    if (flags & Program::kHalting) {
      why = Pause::Halted;
      break;
    }
    if (steps >= fuel) break;
    if ((flags & Program::kReadsGuess) && read(guess) == kUnknownCell) {
      why = Pause::NeedsGuessBit;
      break;
    }
    const Program::Action* action = program.find(s, read);
    if (action == nullptr) {
      sync();
      throw_no_transition(program, s);
    }
    const Program::Effect* e = program.effects(*action);
    const Program::Effect* end = e + action->effect_count;
    for (; e != end; ++e) {
      Tape& tape = tapes[e->tape];
      if (e->write != 3) tape.cells[tape.head] = e->write;
      if (e->move < 0) {
        if (tape.head == 0) {
          sync();
          throw_left_edge(program, s, e->tape);
        }
        --tape.head;
        if (last[e->tape] > 0) ++reversals[e->tape];
        last[e->tape] = -1;
      } else if (e->move > 0) {
        if (++tape.head == tape.cells.size()) tape.cells.push_back(kBlankCell);
        last[e->tape] = 1;
        if (e->tape == guess) {
          if (c.guess_bits_consumed == c.guess_length) {
            sync();
            throw_guess_overrun(program, s, c.guess_length);
          }
          ++c.guess_bits_consumed;
        }
      }
    }
    prev = s;
    s = action->next;
    ++steps;
    if constexpr (kStopAtMarkers) {
      if (program.flags(s) & Program::kMarked) {
        why = Pause::Marker;
        break;
      }
    }
  }
  sync();
  return why;
}

}  // namespace tmlab::detail
