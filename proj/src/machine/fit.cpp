#include "tmlab/fit.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmlab {

FitResult make_fit(std::string model_label, std::vector<FitPoint> points) {
  if (points.empty()) throw std::invalid_argument("fit needs at least one point");
  FitResult f;
  f.model_label = std::move(model_label);
  f.min_ratio = 0;
  f.max_ratio = 0;
  for (FitPoint& p : points) {
    if (!(p.model > 0)) throw std::invalid_argument("fit model value must be positive");
    p.ratio = static_cast<double>(p.steps) / p.model;
  }
  auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                      [](const FitPoint& a, const FitPoint& b) {
                                        return a.ratio < b.ratio;
                                      });
  f.min_ratio = lo->ratio;
  f.max_ratio = hi->ratio;
  f.points = std::move(points);
  return f;
}

}  // namespace tmlab
