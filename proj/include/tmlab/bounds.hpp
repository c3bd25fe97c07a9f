#pragma once

#include <cstddef>
#include <vector>

namespace tmlab {

/// floor(4n / lg n). Throws std::invalid_argument when n < 2.
std::size_t variable_bound(std::size_t n);

struct LogFactorialBounds {
  long double lower = 0;
  long double upper = 0;
};

/// Base-2 Stirling bounds with Robbins remainders: lower < lg(v!) < upper.
LogFactorialBounds robbins_log_factorial(std::size_t v);

/// v*(n) for n = 0..n_max: the largest v whose lower bound on lg(v!) is at
/// most n.
std::vector<std::size_t> robbins_max_variables(std::size_t n_max);

/// Least n1 >= 2 with v*(n) < 4n / lg n for every n1 <= n <= n_max, or
/// n_max + 1 if the inequality fails at n_max. Requires n_max >= 16.
std::size_t verify_bound_threshold(std::size_t n_max);

/// Largest v such that a formula using every variable 1..v fits in n bits
/// (all of them in one clause); 0 if none fits.
std::size_t maximal_variable_count(std::size_t n);

}  // namespace tmlab
