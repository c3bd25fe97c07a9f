#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tmlab/program.hpp"

namespace tmlab {

enum class Verdict : std::uint8_t { Accept, Reject, Indeterminate };
std::string_view to_string(Verdict v);

inline constexpr std::size_t kDefaultWitnessCap = 24;

struct WitnessSearch {
  Verdict verdict = Verdict::Reject;
  /// Lexicographically least accepting witness, when one exists.
  std::optional<std::string> witness;
  std::uint64_t max_steps = 0;
};

/// Tries every y of length `w_len` on <x,y>, in lexicographic order, stopping
/// at the first accept. Throws CapExceeded when w_len > cap.
WitnessSearch search_witness_serial(const Program& decider, std::string_view x, std::size_t w_len,
                                    std::uint64_t fuel, std::size_t cap = kDefaultWitnessCap);
/// OpenMP version of search_witness_serial; same verdict and witness.
WitnessSearch search_witness_parallel(const Program& decider, std::string_view x,
                                      std::size_t w_len, std::uint64_t fuel,
                                      std::size_t cap = kDefaultWitnessCap);

/// True iff some y of length exactly `w_len` makes the deterministic
/// `decider` accept <x,y>. Indeterminate when no branch accepts and some
/// branch ran out of fuel.
Verdict accept_exists_witness(const Program& decider, std::string_view x, std::size_t w_len,
                              std::uint64_t fuel, std::size_t cap = kDefaultWitnessCap);

struct GuessSearch {
  Verdict verdict = Verdict::Reject;
  /// Maximum step count over the explored branches.
  std::uint64_t max_steps = 0;
  std::uint64_t max_guess_bits = 0;
  std::uint64_t branches = 0;
  /// A guess string that was accepted (bits never read filled with '0').
  std::optional<std::string> accepting_guess;
};

/// Reference: runs the guess-tape `program` on every guess string of length
/// `guess_length`, lexicographically. Throws CapExceeded when guess_length > cap.
GuessSearch enumerate_guesses_serial(const Program& program, std::string_view input,
                                     std::size_t guess_length, std::uint64_t fuel,
                                     bool stop_at_accept = true,
                                     std::size_t cap = kDefaultWitnessCap);

inline constexpr std::uint64_t kDefaultBranchCap = std::uint64_t{1} << 22;

/// Explores the computation tree of a guess-tape program, forking only when a
/// transition actually depends on a not-yet-read guess cell. Each leaf stands
/// for every full guess string agreeing with the bits it read, so the verdict
/// and the step maximum equal those of full enumeration (when run to
/// completion). Depth-first, 0 before 1.
GuessSearch explore_guess_tree(const Program& program, std::string_view input,
                               std::size_t guess_length, std::uint64_t fuel,
                               bool stop_at_accept = true,
                               std::uint64_t branch_cap = kDefaultBranchCap);
/// OpenMP version: expands a frontier serially, then explores subtrees in
/// parallel. Same verdict; with stop_at_accept the step maximum may cover a
/// different set of explored branches.
GuessSearch explore_guess_tree_parallel(const Program& program, std::string_view input,
                                        std::size_t guess_length, std::uint64_t fuel,
                                        bool stop_at_accept = true,
                                        std::uint64_t branch_cap = kDefaultBranchCap);

std::string bits_of(std::uint64_t value, std::size_t width);

}  // namespace tmlab
