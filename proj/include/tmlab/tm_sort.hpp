#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmlab/assembler.hpp"
#include "tmlab/fit.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/program.hpp"

namespace tmlab {

struct KeyList {
  std::vector<std::uint64_t> keys;
  std::size_t width = 1;

  /// Throws std::invalid_argument unless 1 <= width <= 62 and every key fits.
  void validate() const;
};

/// Tapes used by the merge stages.
struct SortLayout {
  std::size_t result = 1;
  std::size_t source = 2;
  std::size_t target = 3;
  std::size_t aux1 = 4;
  std::size_t aux2 = 5;
  /// Unary sublist length; its head also counts Source records taken.
  std::size_t cs = 6;
  /// Copy of the sublist length; its head counts Target records taken.
  std::size_t ct = 7;
  /// Optional ruler-length mask moving with the buffers: only cells under a
  /// '1' take part in comparisons.
  std::optional<std::size_t> mask;

  /// Throws std::invalid_argument when two roles share a tape.
  void validate() const;
};

struct SortOptions {
  /// Fault injection: take the larger element first.
  bool flip_compare = false;
  /// When nonzero, records compare on the flag bit and the top
  /// `compare_bits` key bits only; the rest is payload.
  std::size_t compare_bits = 0;
};

/// Emits the merge stages into `a`, starting at `from`. On entry Result,
/// Source and Target hold the same list of R-bit records with all heads on
/// cell 1, the record count is a power of two (or zero), aux1 and aux2 each
/// hold exactly R non-blank cells, and CS = CT = "1". On exit Result and
/// Source hold the list sorted by record value, ties kept in list order;
/// every head except Target's is back on cell 1. The state entered at the
/// start of every stage is marked; the last marker precedes the final
/// termination check.
StateId emit_merge_stages(Assembler& a, StateId from, const SortLayout& t,
                          const SortOptions& options = {});

/// Widens keys to width + 1 bits and appends sentinels 1.0^width until the
/// length is a power of two.
KeyList pad_to_power_of_two(const KeyList& list);

/// Deterministic 8-tape mergesort for m records of width + 1 bits. Tape 0
/// holds the records, most significant bit first, back to back.
Program build_mergesort_program(std::size_t m, std::size_t width, const SortOptions& options = {});

struct StageReport {
  std::size_t stage_index = 0;
  std::uint64_t sublist_length = 0;
  std::uint64_t steps = 0;
  /// Reversal increments of Result, Source and Target during the stage.
  std::uint64_t result_reversals = 0;
  std::uint64_t source_reversals = 0;
  std::uint64_t target_reversals = 0;
  /// Result tape records at the end of the stage (kept only when requested).
  std::vector<std::uint64_t> result_after;
};

struct SortRun {
  KeyList sorted;
  RunStats stats;
  std::vector<StageReport> stages;
};

/// Fuel handed to tm_sort by default: four times the fitted step bound.
std::uint64_t default_sort_fuel(std::size_t m, std::size_t width);

/// Sorts on the machine. Throws FuelExhausted when the run does not halt
/// within `fuel` steps, and std::runtime_error if the machine rejects.
SortRun tm_sort(const KeyList& list, std::optional<std::uint64_t> fuel = {},
                const SortOptions& options = {}, bool keep_stage_contents = false);

/// Random keys below 2^width.
KeyList random_keys(std::uint64_t seed, std::size_t m, std::size_t width);

/// steps / (m lg m width) per grid point, over random keys derived from
/// `seed`. Points must have m a power of two, m >= 2.
FitResult verify_step_bound(const std::vector<std::pair<std::size_t, std::size_t>>& grid,
                            std::uint64_t seed = 1);
/// One point at a time, in grid order; same result as verify_step_bound.
FitResult verify_step_bound_serial(const std::vector<std::pair<std::size_t, std::size_t>>& grid,
                                   std::uint64_t seed = 1);

/// m in {8, ..., 1024} doubling, width in {8, 16, 32}.
std::vector<std::pair<std::size_t, std::size_t>> default_sort_grid();

}  // namespace tmlab
