#include <algorithm>
#include <stdexcept>
#include <string>

#include "tmlab/cnf.hpp"

namespace tmlab {

void CnfFormula::validate() const {
  if (variable_count == 0) throw std::invalid_argument("formula has no variables");
  if (clauses.empty()) throw std::invalid_argument("formula has no clauses");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].empty())
      throw std::invalid_argument("clause " + std::to_string(i + 1) + " is empty");
    for (const Literal& l : clauses[i])
      if (l.variable == 0 || l.variable > variable_count)
        throw std::invalid_argument("variable " + std::to_string(l.variable) +
                                    " outside 1.." + std::to_string(variable_count));
  }
}

std::size_t CnfFormula::literal_count() const {
  std::size_t n = 0;
  for (const Clause& c : clauses) n += c.size();
  return n;
}

std::size_t CnfFormula::distinct_variables() const {
  std::vector<bool> seen(variable_count + 1, false);
  std::size_t n = 0;
  for (const Clause& c : clauses)
    for (const Literal& l : c)
      if (l.variable < seen.size() && !seen[l.variable]) {
        seen[l.variable] = true;
        ++n;
      }
  return n;
}

bool evaluate(const CnfFormula& f, const std::vector<bool>& assignment) {
  if (assignment.size() != f.variable_count)
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                " values for " + std::to_string(f.variable_count) + " variables");
  return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](const Literal& l) {
      return assignment[l.variable - 1] != l.negated;
    });
  });
}

CnfFormula rename_variables(const CnfFormula& f, const std::vector<std::uint32_t>& perm) {
  if (perm.size() != f.variable_count) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> hit(perm.size() + 1, false);
  for (std::uint32_t p : perm) {
    if (p == 0 || p > perm.size() || hit[p]) throw std::invalid_argument("not a permutation");
    hit[p] = true;
  }
  CnfFormula out = f;
  for (Clause& c : out.clauses)
    for (Literal& l : c) l.variable = perm[l.variable - 1];
  return out;
}

}  // namespace tmlab
