#include "tmlab/machine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tmlab/errors.hpp"
#include "stepper.hpp"

namespace tmlab {

namespace {

constexpr std::uint8_t kBlank = detail::kBlankCell;
constexpr std::uint8_t kUnknown = detail::kUnknownCell;

std::string diagnostic_for(const Program& program, StateId from) {
  std::string label = program.label(from);
  return label.rfind("diag:", 0) == 0 ? label : std::string{};
}

}  // namespace

namespace detail {

void throw_no_transition(const Program& program, StateId s) {
  throw MalformedProgram("no transition from state " + program.label(s));
}

void throw_left_edge(const Program& program, StateId s, std::size_t tape) {
  throw MalformedProgram("head of tape " + std::to_string(tape) + " moved left of cell 0 in state " +
                         program.label(s));
}

void throw_guess_overrun(const Program& program, StateId s, std::size_t length) {
  throw WitnessBudgetViolation("guess head moved past the end of the " + std::to_string(length) +
                               "-bit guess in state " + program.label(s));
}

}  // namespace detail

std::string Tape::contents() const {
  std::size_t end = cells.size();
  while (end > 1 && cells[end - 1] == kBlank) --end;
  std::string out;
  for (std::size_t i = 1; i < end; ++i) out.push_back(to_char(static_cast<Symbol>(cells[i])));
  return out;
}

std::string Tape::run_from(std::size_t from) const {
  std::string out;
  for (std::size_t i = from; i < cells.size() && cells[i] != kBlank; ++i)
    out.push_back(cells[i] == kUnknown ? '?' : to_char(static_cast<Symbol>(cells[i])));
  return out;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "accept";
    case Outcome::Reject: return "reject";
    case Outcome::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

bool is_bit_string(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

std::optional<std::size_t> solve_prefix_length(const WitnessSizeFn& w, std::size_t total) {
  for (std::size_t nx = 0; nx <= total; ++nx)
    if (nx + w(nx) == total) return nx;
  return std::nullopt;
}

std::optional<Configuration> initial_configuration(const Program& program, std::string_view input,
                                                   std::string_view guess,
                                                   std::optional<std::size_t> prefix_length) {
  if (!is_bit_string(input)) throw std::invalid_argument("input is not a bit string");
  if (!is_bit_string(guess)) throw std::invalid_argument("guess is not a bit string");
  if (!guess.empty() && program.is_deterministic())
    throw std::invalid_argument("guess supplied to a program without a guess tape");

  Configuration c;
  c.state = program.start();
  c.previous_state = program.start();
  c.tapes.resize(program.tape_count());
  for (Tape& t : c.tapes) t.cells.assign(2, kBlank);
  c.reversals.assign(program.tape_count(), 0);
  c.last_move.assign(program.tape_count(), 0);

  auto load = [](Tape& t, std::string_view bits) {
    t.cells.resize(bits.size() + 2, kBlank);
    for (std::size_t i = 0; i < bits.size(); ++i) t.cells[i + 1] = bits[i] == '1' ? 1 : 0;
  };
  load(c.tapes[program.input_tape()], input);
  if (auto g = program.guess_tape()) {
    load(c.tapes[*g], guess);
    c.guess_length = guess.size();
  }

  for (const Preload& p : program.preloads()) {
    std::size_t ones = 0;
    if (p.kind == PreloadKind::WitnessLength) {
      ones = p.w(input.size());
    } else {
      std::optional<std::size_t> nx = prefix_length;
      if (!nx) nx = solve_prefix_length(p.w, input.size());
      if (!nx) return std::nullopt;
      ones = *nx;
    }
    if (ones > program.desc().preload_cap)
      throw CapExceeded("preload of " + std::to_string(ones) + " exceeds cap " +
                        std::to_string(program.desc().preload_cap));
    load(c.tapes[p.tape], std::string(ones, '1'));
  }
  return c;
}

StepStatus step_in_place(const Program& program, Configuration& c) {
  if (program.is_halting(c.state)) throw std::logic_error("step on a halted configuration");
  return detail::advance<false>(program, c, c.steps_taken + 1) == detail::Pause::NeedsGuessBit
             ? StepStatus::NeedsGuessBit
             : StepStatus::Stepped;
}

Configuration step(const Program& program, Configuration config) {
  if (step_in_place(program, config) == StepStatus::NeedsGuessBit)
    throw std::logic_error("step on an undetermined guess cell");
  return config;
}

RunStats run_from(const Program& program, Configuration& c, std::uint64_t fuel,
                  RunObserver* observer) {
  if (fuel == 0) throw std::invalid_argument("fuel must be positive");
  detail::Pause why;
  if (observer == nullptr) {
    why = detail::advance<false>(program, c, fuel);
  } else {
    while ((why = detail::advance<true>(program, c, fuel)) == detail::Pause::Marker)
      observer->on_marker(program, c);
  }
  if (why == detail::Pause::NeedsGuessBit)
    throw std::logic_error("run reached an undetermined guess cell");
  RunStats stats;
  stats.steps = c.steps_taken;
  stats.guess_bits = c.guess_bits_consumed;
  stats.reversals = c.reversals;
  if (c.state == program.accept()) {
    stats.outcome = Outcome::Accept;
  } else if (c.state == program.reject()) {
    stats.outcome = Outcome::Reject;
  } else {
    stats.outcome = Outcome::FuelExhausted;
  }
  if (stats.outcome != Outcome::FuelExhausted && c.steps_taken > 0)
    stats.diagnostic = diagnostic_for(program, c.previous_state);
  return stats;
}

namespace {

RunStats run_impl(const Program& program, std::string_view input, std::string_view guess,
                  std::uint64_t fuel, RunObserver* observer, std::optional<std::size_t> prefix) {
  if (fuel == 0) throw std::invalid_argument("fuel must be positive");
  std::optional<Configuration> c = initial_configuration(program, input, guess, prefix);
  if (!c) {
    RunStats stats;
    stats.outcome = Outcome::Reject;
    stats.reversals.assign(program.tape_count(), 0);
    stats.diagnostic = "diag:no-witness-boundary";
    return stats;
  }
  if (observer != nullptr && program.marked(c->state)) observer->on_marker(program, *c);
  return run_from(program, *c, fuel, observer);
}

}  // namespace

RunStats run(const Program& program, std::string_view input, std::string_view guess,
             std::uint64_t fuel, RunObserver* observer) {
  return run_impl(program, input, guess, fuel, observer, std::nullopt);
}

RunStats run_with_witness(const Program& program, std::string_view x, std::string_view y,
                          std::uint64_t fuel, RunObserver* observer) {
  if (!program.is_deterministic())
    throw std::invalid_argument("run_with_witness needs a deterministic program");
  std::string joined;
  joined.reserve(x.size() + y.size());
  joined.append(x).append(y);
  return run_impl(program, joined, {}, fuel, observer, x.size());
}

}  // namespace tmlab
