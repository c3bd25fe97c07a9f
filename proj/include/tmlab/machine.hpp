#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmlab/program.hpp"

namespace tmlab {

/// One-sided tape. Cell 0 starts blank and sits left of every input; heads
/// start on cell 1. Cells past the end of `cells` read as blank.
struct Tape {
  std::vector<std::uint8_t> cells;
  std::size_t head = 1;

  Symbol at(std::size_t i) const {
    return i < cells.size() ? static_cast<Symbol>(cells[i]) : Symbol::Blank;
  }
  /// Cells 1.. up to the last non-blank cell, as '0'/'1'/'_' characters.
  std::string contents() const;
  /// Maximal run of non-blank cells starting at cell `from`.
  std::string run_from(std::size_t from = 1) const;
};

struct Configuration {
  StateId state = 0;
  std::vector<Tape> tapes;
  std::uint64_t steps_taken = 0;
  std::uint64_t guess_bits_consumed = 0;
  std::size_t guess_length = 0;
  /// Per tape: how often the head turned from rightward to leftward motion.
  std::vector<std::uint64_t> reversals;
  std::vector<std::int8_t> last_move;
  StateId previous_state = 0;
};

enum class Outcome : std::uint8_t { Accept, Reject, FuelExhausted };
std::string_view to_string(Outcome o);

struct RunStats {
  Outcome outcome = Outcome::Reject;
  std::uint64_t steps = 0;
  std::uint64_t guess_bits = 0;
  std::vector<std::uint64_t> reversals;
  /// Label of the state the machine halted from, when that label starts with
  /// "diag:"; empty otherwise.
  std::string diagnostic;
};

/// Receives the configuration each time the machine enters a marked state.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_marker(const Program& program, const Configuration& config) = 0;
};

/// Least nx with nx + w(nx) == total, if any.
std::optional<std::size_t> solve_prefix_length(const WitnessSizeFn& w, std::size_t total);

/// Builds the start configuration. `prefix_length` fixes |x| for
/// PrefixLength preloads; otherwise it is solved from the input length.
/// Returns nullopt when a PrefixLength preload has no consistent boundary.
/// Throws CapExceeded when a preload exceeds the program's preload cap.
std::optional<Configuration> initial_configuration(const Program& program, std::string_view input,
                                                   std::string_view guess,
                                                   std::optional<std::size_t> prefix_length = {});

/// Applies exactly one transition. Throws MalformedProgram on a missing
/// transition or a head moving left of cell 0, WitnessBudgetViolation when
/// the guess head moves past the end of the guess string, and
/// std::logic_error when `config` is already halted.
Configuration step(const Program& program, Configuration config);

enum class StepStatus : std::uint8_t { Stepped, NeedsGuessBit };

/// In-place step. Returns NeedsGuessBit, without stepping, when the
/// transition depends on a guess cell whose value is still undetermined
/// (see explore_guess_tree).
StepStatus step_in_place(const Program& program, Configuration& config);

/// Steps from `config` until it halts or `fuel` total steps have been taken.
RunStats run_from(const Program& program, Configuration& config, std::uint64_t fuel,
                  RunObserver* observer = nullptr);

/// Runs `program` on `input`. `guess` must be empty unless the program has
/// a guess tape. Fuel exhaustion is an outcome, not an error.
RunStats run(const Program& program, std::string_view input, std::string_view guess,
             std::uint64_t fuel, RunObserver* observer = nullptr);

/// Runs a deterministic program on the concatenation <x,y>.
RunStats run_with_witness(const Program& program, std::string_view x, std::string_view y,
                          std::uint64_t fuel, RunObserver* observer = nullptr);

bool is_bit_string(std::string_view s);

}  // namespace tmlab
