#include "tmlab/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tmlab/codec.hpp"

namespace tmlab {

std::size_t variable_bound(std::size_t n) {
  if (n < 2) throw std::invalid_argument("variable bound needs n >= 2");
  return static_cast<std::size_t>(std::floor(4.0L * n / std::log2(static_cast<long double>(n))));
}

LogFactorialBounds robbins_log_factorial(std::size_t v) {
  if (v == 0) throw std::invalid_argument("Robbins bounds need v >= 1");
  const long double x = static_cast<long double>(v);
  const long double lg_e = std::numbers::log2e_v<long double>;
  const long double base = x * std::log2(x) - x * lg_e +
                           0.5L * std::log2(2 * std::numbers::pi_v<long double>) +
                           0.5L * std::log2(x);
  return {base + lg_e / (12 * x + 1), base + lg_e / (12 * x)};
}

std::vector<std::size_t> robbins_max_variables(std::size_t n_max) {
  std::vector<std::size_t> out(n_max + 1, 0);
  std::size_t v = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    while (robbins_log_factorial(v + 1).lower <= static_cast<long double>(n)) ++v;
    out[n] = v;
  }
  return out;
}

std::size_t verify_bound_threshold(std::size_t n_max) {
  if (n_max < 16) throw std::invalid_argument("threshold sweep needs n_max >= 16");
  const std::vector<std::size_t> vstar = robbins_max_variables(n_max);
  std::size_t n1 = 2;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const long double cap = 4.0L * n / std::log2(static_cast<long double>(n));
    if (!(static_cast<long double>(vstar[n]) < cap)) n1 = n + 1;
  }
  return n1;
}

std::size_t maximal_variable_count(std::size_t n) {
  auto length = [](std::size_t v) {
    const std::size_t k = index_width(v);
    return 2 * k + 1 + (v + 1) * (1 + k);
  };
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (length(mid) <= n) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

}  // namespace tmlab
