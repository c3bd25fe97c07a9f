#include <algorithm>
#include <stdexcept>

#include "tmlab/sat.hpp"

namespace tmlab {

VerificationTrace verify_assignment_pipeline(const CnfFormula& f, const std::vector<bool>& a) {
  f.validate();
  if (a.size() != f.variable_count)
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) + " values for " +
                                std::to_string(f.variable_count) + " variables");
  VerificationTrace t;
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    for (const Literal& l : f.clauses[i]) t.annotated.push_back({l, i + 1});

  t.sorted_by_var = t.annotated;
  std::stable_sort(t.sorted_by_var.begin(), t.sorted_by_var.end(),
                   [](const AnnotatedLiteral& x, const AnnotatedLiteral& y) {
                     return x.literal.variable < y.literal.variable;
                   });

  // One forward pass: the assignment cursor only moves up.
  std::size_t var = 1;
  for (const AnnotatedLiteral& al : t.sorted_by_var) {
    while (var < al.literal.variable) ++var;
    t.valued.push_back({al, a[var - 1] != al.literal.negated});
  }

  t.sorted_by_clause = t.valued;
  std::stable_sort(t.sorted_by_clause.begin(), t.sorted_by_clause.end(),
                   [](const ValuedLiteral& x, const ValuedLiteral& y) {
                     return x.annotated.clause_index < y.annotated.clause_index;
                   });

  t.verdict = true;
  for (std::size_t i = 0; i < t.sorted_by_clause.size() && t.verdict;) {
    std::size_t j = i;
    bool sat = false;
    while (j < t.sorted_by_clause.size() &&
           t.sorted_by_clause[j].annotated.clause_index ==
               t.sorted_by_clause[i].annotated.clause_index)
      sat = t.sorted_by_clause[j++].value || sat;
    t.verdict = sat;
    i = j;
  }
  return t;
}

}  // namespace tmlab
