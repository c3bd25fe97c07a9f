#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tmlab/assembler.hpp"
#include "tmlab/corpus.hpp"
#include "tmlab/enumerate.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/language.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/transform.hpp"

using namespace tmlab;

namespace {

constexpr std::uint64_t kFuel = 2'000'000;

struct MarkerCount : RunObserver {
  std::uint64_t count = 0;
  void on_marker(const Program&, const Configuration&) override { ++count; }
};

// Reads two guess bits regardless of the declared witness size.
Program greedy_guesser() {
  Assembler a({TapeRole::Input, TapeRole::Guess});
  StateId s0 = a.state("first");
  StateId s1 = a.state("second");
  a.on(s0, {}, {right(1)}, s1);
  a.on(s1, {}, {right(1)}, a.accept());
  return a.finish(s0);
}

// Has a guess tape but never reads it; accepts inputs starting with 1.
Program ignores_guess() {
  Assembler a({TapeRole::Input, TapeRole::Guess});
  StateId s = a.state("look");
  a.on(s, {is(0, Symbol::One)}, {}, a.accept());
  a.on(s, {}, {}, a.reject());
  return a.finish(s);
}

}  // namespace

TEST_CASE("projectize with a zero witness keeps the language") {
  CorpusMachine m = corpus_machine("even-length");
  Program p = projectize(m.decider, WitnessSizeFn::constant(0));
  CHECK_FALSE(p.is_deterministic());
  for (std::size_t n = 0; n <= 8; ++n)
    for (const std::string& x : all_words(n)) {
      RunStats s = run(p, x, "", kFuel);
      CHECK(s.guess_bits == 0);
      CHECK((s.outcome == Outcome::Accept) == (n % 2 == 0));
    }
}

TEST_CASE("projectized complement accepts every x") {
  CorpusMachine m = corpus_machine("complement");
  Program p = projectize(m.decider, m.w);
  for (std::size_t n = 0; n <= 6; ++n)
    for (const std::string& x : all_words(n)) {
      GuessSearch g = explore_guess_tree(p, x, n, kFuel);
      CHECK(g.verdict == Verdict::Accept);
      CHECK(g.accepting_guess.has_value());
    }
  RunStats s = run(p, "010", "101", kFuel);
  CHECK(s.outcome == Outcome::Accept);
  CHECK(s.guess_bits == 3);
}

TEST_CASE("projectized programs consume exactly w(|x|) guess bits") {
  for (const CorpusMachine& m : decider_corpus()) {
    CAPTURE(m.name);
    Program p = projectize(m.decider, m.w);
    for (std::size_t n = 0; n <= 5; ++n)
      for (const std::string& x : all_words(n))
        for (const std::string& y : all_words(m.w(n))) {
          RunStats s = run(p, x, y, kFuel);
          CHECK(s.guess_bits == m.w(n));
          CHECK((s.outcome == Outcome::Accept) == m.predicate(x, y));
        }
  }
}

TEST_CASE("determinize(projectize(det)) decides the same <x,y> language") {
  for (const CorpusMachine& m : decider_corpus()) {
    CAPTURE(m.name);
    Program d = determinize_with_witness(projectize(m.decider, m.w), m.w);
    CHECK(d.is_deterministic());
    for (std::size_t nx = 0; nx + m.w(nx) <= 8; ++nx)
      for (const std::string& x : all_words(nx))
        for (const std::string& y : all_words(m.w(nx))) {
          RunStats a = run_with_witness(m.decider, x, y, kFuel);
          RunStats b = run_with_witness(d, x, y, kFuel);
          CHECK(a.outcome == b.outcome);
          CHECK(b.guess_bits == 0);
        }
  }
}

TEST_CASE("determinized guess-equals-input checker") {
  Program d = determinize_with_witness(guess_equals_input_checker(), WitnessSizeFn::identity());
  CHECK(run_with_witness(d, "11", "11", kFuel).outcome == Outcome::Accept);
  CHECK(run_with_witness(d, "11", "10", kFuel).outcome == Outcome::Reject);
  for (std::size_t n = 0; n <= 4; ++n)
    for (const std::string& x : all_words(n))
      for (const std::string& y : all_words(n))
        CHECK((run_with_witness(d, x, y, kFuel).outcome == Outcome::Accept) == (x == y));
}

TEST_CASE("guess overrun becomes a diagnosed rejection") {
  Program d = determinize_with_witness(greedy_guesser(), WitnessSizeFn::constant(1));
  RunStats s = run_with_witness(d, "0", "1", kFuel);
  CHECK(s.outcome == Outcome::Reject);
  CHECK(s.diagnostic == "diag:guess-overrun");
  CHECK_THROWS_AS(run(greedy_guesser(), "0", "1", 10), WitnessBudgetViolation);
}

TEST_CASE("determinize with a zero witness equals the original") {
  Program g = ignores_guess();
  Program d = determinize_with_witness(g, WitnessSizeFn::constant(0));
  for (std::size_t n = 0; n <= 6; ++n)
    for (const std::string& x : all_words(n))
      CHECK(run_with_witness(d, x, "", kFuel).outcome == run(g, x, "", kFuel).outcome);
}

TEST_CASE("determinized program agrees with exhaustive guess enumeration") {
  for (const CorpusMachine& m : decider_corpus()) {
    CAPTURE(m.name);
    Program p = projectize(m.decider, m.w);
    Program d = determinize_with_witness(p, m.w);
    for (std::size_t n = 0; n <= 6; ++n)
      for (const std::string& x : all_words(n)) {
        Verdict a = accept_exists_witness(d, x, m.w(n), kFuel);
        Verdict b = enumerate_guesses_serial(p, x, m.w(n), kFuel).verdict;
        CHECK(a == b);
      }
  }
}

TEST_CASE("guess-tree exploration matches full enumeration") {
  for (const CorpusMachine& m : decider_corpus()) {
    CAPTURE(m.name);
    Program p = projectize(m.decider, m.w);
    for (std::size_t n = 0; n <= 6; ++n)
      for (const std::string& x : all_words(n)) {
        GuessSearch full = enumerate_guesses_serial(p, x, m.w(n), kFuel, false);
        GuessSearch tree = explore_guess_tree(p, x, m.w(n), kFuel, false);
        GuessSearch par = explore_guess_tree_parallel(p, x, m.w(n), kFuel, false);
        CHECK(full.verdict == tree.verdict);
        CHECK(full.max_steps == tree.max_steps);
        CHECK(full.max_guess_bits == tree.max_guess_bits);
        CHECK(par.verdict == tree.verdict);
        CHECK(par.max_steps == tree.max_steps);
        CHECK(tree.branches <= full.branches);
      }
  }
}

TEST_CASE("brute-force determinization agrees with guess enumeration") {
  for (const CorpusMachine& m : decider_corpus()) {
    CAPTURE(m.name);
    Program p = projectize(m.decider, m.w);
    Program b = brute_force_determinize(p, m.w);
    CHECK(b.is_deterministic());
    for (std::size_t n = 0; n <= 8; ++n)
      for (const std::string& x : all_words(n)) {
        RunStats s = run(b, x, "", 50 * kFuel);
        REQUIRE(s.outcome != Outcome::FuelExhausted);
        Verdict v = explore_guess_tree(p, x, m.w(n), kFuel).verdict;
        CHECK((s.outcome == Outcome::Accept) == (v == Verdict::Accept));
      }
  }
}

TEST_CASE("brute force with zero witness runs one branch") {
  Program g = ignores_guess();
  Program b = brute_force_determinize(g, WitnessSizeFn::constant(0));
  for (std::size_t n = 0; n <= 5; ++n)
    for (const std::string& x : all_words(n)) {
      MarkerCount branches;
      RunStats s = run(b, x, "", kFuel, &branches);
      CHECK(branches.count == 1);
      CHECK(s.outcome == run(g, x, "", kFuel).outcome);
    }
}

TEST_CASE("position-of-one guesser is found within four branches") {
  CorpusMachine m = corpus_machine("index-of-one");
  Program b = brute_force_determinize(projectize(m.decider, m.w), m.w);
  MarkerCount branches;
  RunStats s = run(b, "0010", "", kFuel, &branches);
  CHECK(s.outcome == Outcome::Accept);
  CHECK(branches.count <= 4);
  CHECK(branches.count == 3);  // guesses 00, 01, 10
}

TEST_CASE("brute force refuses witness sizes above its cap") {
  Program g = ignores_guess();
  Program b = brute_force_determinize(g, WitnessSizeFn::constant(21));
  CHECK_THROWS_AS(run(b, "1", "", kFuel), CapExceeded);
  Program small = brute_force_determinize(g, WitnessSizeFn::constant(3), 2);
  CHECK_THROWS_AS(run(small, "1", "", kFuel), CapExceeded);
}

TEST_CASE("brute-force steps grow like n^2 for logarithmic witnesses") {
  CorpusMachine m = corpus_machine("index-of-one");
  Program b = brute_force_determinize(projectize(m.decider, m.w), m.w);
  double lo = 1e300, hi = 0;
  for (std::size_t n = 8; n <= 256; n *= 2) {
    std::string x(n, '0');  // no accepting branch: every branch runs
    RunStats s = run(b, x, "", 1'000'000'000);
    REQUIRE(s.outcome == Outcome::Reject);
    double ratio = static_cast<double>(s.steps) / (static_cast<double>(n) * n);
    MESSAGE("n=" << n << " steps=" << s.steps << " ratio=" << ratio);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo <= 4.0);
}
