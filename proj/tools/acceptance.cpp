// Prints one line per acceptance criterion; exits nonzero if any fails.
#include <cstdio>
#include <cstdlib>

#include "tmlab/suites.hpp"

int main(int argc, char** argv) {
  tmlab::SuiteOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  int index = 0;
  for (const tmlab::Suite& suite : tmlab::verification_suites()) {
    ++index;
    tmlab::SuiteResult r = tmlab::run_suite(suite, options);
    const bool in_time = r.seconds < suite.time_limit_seconds;
    const bool pass = r.passed && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %2d %-10s %s  %.1f s (limit %.0f s)  %s\n", index, r.name.c_str(),
                pass ? "PASS" : "FAIL", r.seconds, suite.time_limit_seconds, r.summary.c_str());
    if (!r.passed) std::printf("             reproduce: %s\n", r.reproducer.c_str());
    if (r.passed && !in_time) std::printf("             over the time limit\n");
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
