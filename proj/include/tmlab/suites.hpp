#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tmlab/report.hpp"
#include "tmlab/tm_sort.hpp"

namespace tmlab {

inline constexpr std::uint64_t kDefaultSeed = 1;

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Passed to every sort the suites run; flip_compare injects a fault.
  SortOptions sort;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string summary;
  /// How to rerun the first failure: seed, suite and case parameters.
  std::string reproducer;
  double seconds = 0;
  Json metrics = Json::object();
};

struct Suite {
  std::string name;
  std::string title;
  /// Wall-clock budget the acceptance run holds the suite to.
  double time_limit_seconds;
  std::function<SuiteResult(const SuiteOptions&)> body;
};

/// The verification suites, in acceptance-criterion order.
const std::vector<Suite>& verification_suites();

/// Throws std::out_of_range for an unknown name.
const Suite& find_suite(std::string_view name);

/// Runs `suite`, timing it. An exception from the body fails the suite.
SuiteResult run_suite(const Suite& suite, const SuiteOptions& options);

}  // namespace tmlab
