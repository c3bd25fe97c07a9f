#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace tmlab {

struct Literal {
  std::uint32_t variable = 1;
  bool negated = false;

  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

/// Clauses over variables 1..variable_count. Not every variable in that
/// range has to occur (DIMACS allows slack in the header).
struct CnfFormula {
  std::vector<Clause> clauses;
  std::size_t variable_count = 0;

  /// Throws std::invalid_argument on an empty formula, an empty clause, a
  /// zero variable count or a variable outside 1..variable_count.
  void validate() const;
  std::size_t literal_count() const;
  std::size_t distinct_variables() const;

  bool operator==(const CnfFormula&) const = default;
};

/// `assignment[j - 1]` is the value of variable j.
bool evaluate(const CnfFormula& f, const std::vector<bool>& assignment);

/// Renames variable j to perm[j - 1]; `perm` must be a permutation of 1..v.
CnfFormula rename_variables(const CnfFormula& f, const std::vector<std::uint32_t>& perm);

/// Comments, a "p cnf V C" header, zero-terminated clauses that may span
/// lines. Throws ParseError with a line number.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);
std::string emit_dimacs(const CnfFormula& f);

/// Clause widths uniform in 1..max_width over distinct variables, signs fair.
CnfFormula random_formula(std::mt19937_64& rng, std::size_t variables, std::size_t clauses,
                          std::size_t max_width);

struct PlantedFormula {
  CnfFormula formula;
  std::vector<bool> assignment;
};

/// Random 3-CNF (variables >= 3) satisfied by a random planted assignment.
PlantedFormula planted_3cnf(std::mt19937_64& rng, std::size_t variables, std::size_t clauses);

/// One clause (x1 v ... v xv): the shortest way to use all v variables.
CnfFormula all_variables_formula(std::size_t variables);

/// Every formula of 1..3 clauses drawn, as a multiset, from the 26 clauses
/// over x1..x3 that use each variable at most once. Literals within a clause
/// are ordered by variable; the variable count is the largest index used.
std::vector<CnfFormula> small_formula_corpus();

}  // namespace tmlab
