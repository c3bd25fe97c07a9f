#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tmlab/cnf.hpp"

namespace tmlab {

namespace {

Clause random_clause(std::mt19937_64& rng, std::size_t variables, std::size_t width) {
  std::vector<std::uint32_t> pool(variables);
  std::iota(pool.begin(), pool.end(), 1u);
  Clause c;
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t j = i + rng() % (variables - i);
    std::swap(pool[i], pool[j]);
    c.push_back({pool[i], (rng() & 1u) != 0});
  }
  return c;
}

}  // namespace

CnfFormula random_formula(std::mt19937_64& rng, std::size_t variables, std::size_t clauses,
                          std::size_t max_width) {
  if (variables == 0 || clauses == 0 || max_width == 0)
    throw std::invalid_argument("random formula needs variables, clauses and a width");
  CnfFormula f;
  f.variable_count = variables;
  const std::size_t top = std::min(max_width, variables);
  for (std::size_t i = 0; i < clauses; ++i)
    f.clauses.push_back(random_clause(rng, variables, 1 + rng() % top));
  return f;
}

PlantedFormula planted_3cnf(std::mt19937_64& rng, std::size_t variables, std::size_t clauses) {
  if (variables < 3 || clauses == 0) throw std::invalid_argument("planted 3-CNF needs v >= 3");
  PlantedFormula p;
  p.formula.variable_count = variables;
  for (std::size_t j = 0; j < variables; ++j) p.assignment.push_back((rng() & 1u) != 0);
  while (p.formula.clauses.size() < clauses) {
    Clause c = random_clause(rng, variables, 3);
    const bool sat = std::any_of(c.begin(), c.end(), [&](const Literal& l) {
      return p.assignment[l.variable - 1] != l.negated;
    });
    if (sat) p.formula.clauses.push_back(std::move(c));
  }
  return p;
}

CnfFormula all_variables_formula(std::size_t variables) {
  if (variables == 0) throw std::invalid_argument("formula needs a variable");
  CnfFormula f;
  f.variable_count = variables;
  f.clauses.emplace_back();
  for (std::size_t j = 1; j <= variables; ++j)
    f.clauses.back().push_back({static_cast<std::uint32_t>(j), false});
  return f;
}

std::vector<CnfFormula> small_formula_corpus() {
  std::vector<Clause> pool;
  // Each variable is absent, positive or negative: 3^3 - 1 nonempty choices.
  for (int code = 1; code < 27; ++code) {
    Clause c;
    for (int var = 0, rest = code; var < 3; ++var, rest /= 3)
      if (rest % 3 != 0) c.push_back({static_cast<std::uint32_t>(var + 1), rest % 3 == 2});
    pool.push_back(std::move(c));
  }
  std::vector<CnfFormula> out;
  auto push = [&](std::initializer_list<std::size_t> picks) {
    CnfFormula f;
    for (std::size_t i : picks) f.clauses.push_back(pool[i]);
    for (const Clause& c : f.clauses)
      for (const Literal& l : c) f.variable_count = std::max<std::size_t>(f.variable_count, l.variable);
    out.push_back(std::move(f));
  };
  const std::size_t m = pool.size();
  for (std::size_t a = 0; a < m; ++a) {
    push({a});
    for (std::size_t b = a; b < m; ++b) {
      push({a, b});
      for (std::size_t c = b; c < m; ++c) push({a, b, c});
    }
  }
  return out;
}

}  // namespace tmlab
