#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tmlab {

/// One measured point of an empirical bound: steps against the model value.
struct FitPoint {
  std::vector<std::pair<std::string, std::uint64_t>> params;
  std::uint64_t steps = 0;
  double model = 0;
  double ratio = 0;
};

struct FitResult {
  std::string model_label;
  double max_ratio = 0;
  double min_ratio = 0;
  std::vector<FitPoint> points;

  /// max_ratio / min_ratio; 1 for a single point.
  double spread() const { return min_ratio > 0 ? max_ratio / min_ratio : 0; }
};

/// Fills in each point's ratio and the extremes. Throws std::invalid_argument
/// on an empty point list or a non-positive model value.
FitResult make_fit(std::string model_label, std::vector<FitPoint> points);

}  // namespace tmlab
