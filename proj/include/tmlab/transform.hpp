#pragma once

#include <cstddef>

#include "tmlab/program.hpp"
#include "tmlab/witness.hpp"

namespace tmlab {

/// Guess-tape program that, on input x, appends w(|x|) guessed bits to a
/// copy of x and simulates `det` on <x,y>. It consumes exactly w(|x|) guess
/// bits and accepts x iff some y of that length makes `det` accept <x,y>.
///
/// `det` may carry a PrefixLength preload only if its witness size agrees
/// with `w`; the copy phase writes that boundary itself.
Program projectize(const Program& det, const WitnessSizeFn& w);

/// Deterministic program over <x,y>, |y| = w(|x|), that feeds y to `nondet`
/// as its guess string. The x/y boundary comes from a PrefixLength preload.
/// A guess overrun in `nondet` becomes a rejection labelled
/// "diag:guess-overrun".
///
/// `nondet` may carry a WitnessLength preload only if it agrees with `w`.
Program determinize_with_witness(const Program& nondet, const WitnessSizeFn& w);

inline constexpr std::size_t kDefaultBranchBits = 20;

/// Deterministic program that tries every guess string of length w(|x|) on
/// `nondet`, in lexicographic order, and accepts iff one leads to accept.
/// The simulated tapes are shadowed so each branch starts from clean tapes.
/// Runs refuse inputs with w(|x|) > branch_bits (2^20 branches by
/// default). The branch loop's head state is marked, so an observer sees
/// one marker per branch.
///
/// `nondet` must not move any head left of its cell 0.
Program brute_force_determinize(const Program& nondet, const WitnessSizeFn& w,
                                std::size_t branch_bits = kDefaultBranchBits);

}  // namespace tmlab
