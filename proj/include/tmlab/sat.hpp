#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmlab/cnf.hpp"
#include "tmlab/codec.hpp"
#include "tmlab/enumerate.hpp"
#include "tmlab/fit.hpp"
#include "tmlab/machine.hpp"

namespace tmlab {

inline constexpr std::size_t kReferenceVariableCap = 22;

/// Truth-table search over all 2^v assignments. Throws CapExceeded above
/// kReferenceVariableCap variables.
bool decide_sat_reference(const CnfFormula& f);

struct AnnotatedLiteral {
  Literal literal;
  /// 1-based position of the literal's clause.
  std::size_t clause_index = 1;
  bool operator==(const AnnotatedLiteral&) const = default;
};

struct ValuedLiteral {
  AnnotatedLiteral annotated;
  bool value = false;
  bool operator==(const ValuedLiteral&) const = default;
};

struct VerificationTrace {
  std::vector<AnnotatedLiteral> annotated;
  std::vector<AnnotatedLiteral> sorted_by_var;
  std::vector<ValuedLiteral> valued;
  std::vector<ValuedLiteral> sorted_by_clause;
  bool verdict = false;
};

/// Annotate, sort by variable, substitute by one co-scan against the
/// assignment in variable order, sort by clause, scan clause groups.
/// Throws std::invalid_argument when |a| != v.
VerificationTrace verify_assignment_pipeline(const CnfFormula& f, const std::vector<bool>& a);

/// Tape indices of the verifier machine.
namespace sat_tapes {
inline constexpr std::size_t input = 0, result = 1, source = 2, target = 3, aux1 = 4, aux2 = 5,
                             cs = 6, ct = 7, guess = 8, width = 9, bound = 10, clause = 11,
                             count = 12, power = 13, index = 14, scratch = 15;
inline constexpr std::size_t tape_count = 16;
}  // namespace sat_tapes

/// Bits of the verifier's annotated literal list before padding: one
/// record of flag, variable index, clause tag and sign per literal.
std::size_t annotated_bits(const CnfFormula& f);

/// Smallest encoded formula, (x1).
inline constexpr std::size_t kMinEncodedLength = 7;

/// Guess-tape verifier for encoded formulas. Reads guess bit j as the value
/// of variable j, consumes exactly v guess bits, and accepts iff they
/// satisfy the formula. Malformed encodings reject from a
/// "diag:<codec error>" state before any guess bit is read. The machine does
/// not depend on n; n only has to reach kMinEncodedLength.
Program build_sat_verifier_program(std::size_t n);
/// Shared instance of the verifier.
const Program& sat_verifier_program();

/// Fuel that covers any single branch of the verifier on an n-bit input.
std::uint64_t default_sat_fuel(std::size_t n);

/// One branch: the verifier on encode(f) with the assignment as guess.
RunStats run_sat_verifier(const CnfFormula& f, const std::vector<bool>& assignment,
                          std::optional<std::uint64_t> fuel = {});

struct SatDecision {
  Verdict verdict = Verdict::Reject;
  std::size_t n = 0;
  std::size_t v = 0;
  /// Steps: maximum over explored branches; guess_bits: v.
  RunStats stats;
  std::uint64_t branches = 0;
  std::optional<std::vector<bool>> assignment;
};

/// Explores the verifier's guess tree on encode(f), accepting at the first
/// accepting branch. Indeterminate when no branch accepts and some branch
/// ran out of fuel.
SatDecision decide_sat_tm(const CnfFormula& f, std::optional<std::uint64_t> fuel = {});

/// Random instances for oracle comparison: v uniform in 1..12, clause count
/// uniform in 1..max(1, 3v/2), clause widths uniform in 1..min(3, v).
std::vector<CnfFormula> oracle_instances(std::uint64_t seed, std::size_t count);

struct WitnessBudget {
  std::size_t v = 0;
  std::size_t n = 0;
  std::size_t bound = 0;
  /// v <= floor(4n / lg n).
  bool ok = false;
  /// Whether n reaches the threshold n1, so that `ok` is claimed.
  bool asserted = false;
};

/// n1 from verify_bound_threshold(2^20), computed once.
std::size_t bound_threshold();

WitnessBudget witness_budget_check(const CnfFormula& f);

struct SatSweepOptions {
  std::uint64_t seed = 1;
  std::size_t n_lo = std::size_t{1} << 8;
  std::size_t n_hi = std::size_t{1} << 15;
  /// Planted instances per target length.
  std::size_t instances = 2;
  /// Random guesses tried per instance besides the planted assignment.
  std::size_t extra_guesses = 2;
};

struct SatSweepPoint {
  std::size_t target_n = 0;
  std::size_t n = 0;
  std::size_t v = 0;
  std::size_t clauses = 0;
  std::uint64_t max_steps = 0;
  std::uint64_t guess_bits = 0;
  WitnessBudget budget;
};

struct SatSweep {
  FitResult fit;
  std::vector<SatSweepPoint> points;
};

/// Planted 3-CNF instances at clause density 4.26, sized so that n is just
/// above each power of two in [n_lo, n_hi]. Each point's steps are the
/// maximum over the branches run (planted plus random guesses); the model
/// is n lg n.
SatSweep sat_step_sweep(const SatSweepOptions& options = {});
SatSweep sat_step_sweep_serial(const SatSweepOptions& options = {});

}  // namespace tmlab
