#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "tmlab/assembler.hpp"
#include "tmlab/corpus.hpp"
#include "tmlab/enumerate.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/language.hpp"
#include "tmlab/machine.hpp"
#include "tmlab/program_io.hpp"

using namespace tmlab;

namespace {

Program immediate_accept() {
  return parse_program(
      "states 3 tapes 1 start 0 accept 1 reject 2\n"
      "0 * -> 1 * S\n");
}

Program forever() {
  return parse_program(
      "states 3 tapes 1 start 0 accept 1 reject 2\n"
      "0 * -> 0 * S\n");
}

// Moves to the end of the input, then copies it backwards onto tape 1.
Program reverser() {
  Assembler a({TapeRole::Input, TapeRole::Output});
  StateId start = a.state("seek-end");
  StateId back = a.state("copy-back");
  a.on(start, {is_blank(0)}, {left(0)}, back);
  a.on(start, {}, {right(0)}, start);
  a.on(back, {is_blank(0)}, {}, a.accept());
  for (Symbol s : {Symbol::Zero, Symbol::One})
    a.on(back, {is(0, s)}, {left(0), put(1, s, Move::Right)}, back);
  return a.finish(start);
}

// Reads one guess bit and accepts iff it is 1.
Program one_guess_bit() {
  return parse_program(
      "states 4 tapes 2 start 0 accept 1 reject 2\n"
      "roles input guess\n"
      "0 *1 -> 1 ** SR\n"
      "0 *0 -> 2 ** SR\n"
      "0 *_ -> 2 ** SR\n");
}

std::string final_output(const Program& p, const std::string& input) {
  auto c = initial_configuration(p, input, "");
  REQUIRE(c.has_value());
  RunStats s = run_from(p, *c, 10000);
  REQUIRE(s.outcome == Outcome::Accept);
  return c->tapes[1].contents();
}

}  // namespace

TEST_CASE("one transition to accept takes one step") {
  Program p = immediate_accept();
  auto c = initial_configuration(p, "0110", "");
  REQUIRE(c);
  Configuration next = step(p, *c);
  CHECK(next.state == p.accept());
  CHECK(next.steps_taken == 1);
  CHECK_THROWS_AS(step(p, next), std::logic_error);
}

TEST_CASE("run semantics for trivial machines") {
  RunStats acc = run(immediate_accept(), "0", "", 10);
  CHECK(acc.outcome == Outcome::Accept);
  CHECK(acc.steps <= 2);
  CHECK(acc.guess_bits == 0);

  RunStats loop = run(forever(), "0", "", 100);
  CHECK(loop.outcome == Outcome::FuelExhausted);
  CHECK(loop.steps == 100);
  CHECK_THROWS_AS(run(forever(), "0", "", 0), std::invalid_argument);
}

TEST_CASE("reverser output matches string reversal on every short input") {
  Program p = reverser();
  for (std::size_t n = 0; n <= 8; ++n)
    for (const std::string& x : all_words(n)) {
      std::string expect(x.rbegin(), x.rend());
      CHECK(final_output(p, x) == expect);
      CHECK(run(p, x, "", 1000).steps == 2 * n + 2);
    }
}

TEST_CASE("reading past an empty guess string is a budget violation") {
  Program p = one_guess_bit();
  auto c = initial_configuration(p, "", "");
  REQUIRE(c);
  CHECK_THROWS_AS(step(p, *c), WitnessBudgetViolation);
  CHECK_THROWS_AS(run(p, "", "", 10), WitnessBudgetViolation);
  CHECK(run(p, "", "1", 10).outcome == Outcome::Accept);
  CHECK(run(p, "", "1", 10).guess_bits == 1);
}

TEST_CASE("step postconditions hold on every step of corpus runs") {
  Program p = guess_equals_input_checker();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = rng() % 9;
    std::string x = all_words(n)[rng() % (std::size_t{1} << n)];
    std::string g = rng() % 2 ? x : all_words(n)[rng() % (std::size_t{1} << n)];
    auto c = initial_configuration(p, x, g);
    REQUIRE(c);
    while (!p.is_halting(c->state)) {
      Configuration next = step(p, *c);
      CHECK(next.steps_taken == c->steps_taken + 1);
      for (std::size_t t = 0; t < p.tape_count(); ++t) {
        long d = static_cast<long>(next.tapes[t].head) - static_cast<long>(c->tapes[t].head);
        CHECK(std::abs(d) <= 1);
      }
      bool guess_moved = next.tapes[1].head == c->tapes[1].head + 1;
      CHECK(next.guess_bits_consumed == c->guess_bits_consumed + (guess_moved ? 1 : 0));
      CHECK(next.guess_bits_consumed <= g.size());
      *c = next;
    }
    CHECK((c->state == p.accept()) == (x == g));
  }
}

TEST_CASE("equality decider accepts matching witness") {
  CorpusMachine eq = corpus_machine("equal");
  CHECK(run_with_witness(eq.decider, "101", "101", 1000).outcome == Outcome::Accept);
  CHECK(run_with_witness(eq.decider, "101", "100", 1000).outcome == Outcome::Reject);
}

TEST_CASE("run_with_witness concatenates") {
  Program r = reverser();
  RunStats a = run_with_witness(r, "", "", 100);
  RunStats b = run(r, "", "", 100);
  CHECK(a.outcome == b.outcome);
  CHECK(a.steps == b.steps);

  // The reverser takes 2|input| + 2 steps, which exposes the joined length.
  CHECK(run_with_witness(r, "10", "011", 100).steps == 2 * 5 + 2);

  for (Program p : {reverser(), corpus_machine("even-length").decider}) {
    RunStats left = run_with_witness(p, "1", "01", 100);   // <x,<y,z>>
    RunStats right = run_with_witness(p, "10", "1", 100);  // <<x,y>,z>
    CHECK(left.outcome == right.outcome);
    CHECK(left.steps == right.steps);
    CHECK(left.reversals == right.reversals);
  }
}

TEST_CASE("accept_exists_witness examples") {
  CorpusMachine one = corpus_machine("witness-is-one");
  CHECK(accept_exists_witness(one.decider, "0", 1, 1000) == Verdict::Accept);
  CHECK(accept_exists_witness(one.decider, "0", 0, 1000) == Verdict::Reject);

  CorpusMachine idx = corpus_machine("index-of-one");
  bool oracle = false;
  for (const std::string& y : all_words(2)) oracle |= idx.predicate("0010", y);
  CHECK(oracle);
  CHECK(accept_exists_witness(idx.decider, "0010", 2, 10000) == Verdict::Accept);
  CHECK(accept_exists_witness(idx.decider, "0000", 2, 10000) == Verdict::Reject);

  CHECK_THROWS_AS(accept_exists_witness(idx.decider, "0", 25, 100), CapExceeded);
  CHECK(accept_exists_witness(forever(), "0", 2, 50) == Verdict::Indeterminate);
}

TEST_CASE("every corpus decider matches its predicate on all short <x,y>") {
  for (const CorpusMachine& m : decider_corpus()) {
    CAPTURE(m.name);
    for (std::size_t nx = 0; nx + m.w(nx) <= 8; ++nx)
      for (const std::string& x : all_words(nx))
        for (const std::string& y : all_words(m.w(nx))) {
          RunStats s = run_with_witness(m.decider, x, y, 100000);
          REQUIRE(s.outcome != Outcome::FuelExhausted);
          CHECK((s.outcome == Outcome::Accept) == m.predicate(x, y));
        }
  }
}

TEST_CASE("serial and parallel witness search agree") {
  for (const CorpusMachine& m : decider_corpus()) {
    for (std::size_t nx = 0; nx <= 5; ++nx)
      for (const std::string& x : all_words(nx)) {
        WitnessSearch a = search_witness_serial(m.decider, x, m.w(nx), 100000);
        WitnessSearch b = search_witness_parallel(m.decider, x, m.w(nx), 100000);
        CHECK(a.verdict == b.verdict);
        CHECK(a.witness == b.witness);
      }
  }
}

TEST_CASE("determinism and fuel monotonicity") {
  CorpusMachine m = corpus_machine("index-of-one");
  for (const std::string& x : all_words(5))
    for (const std::string& y : all_words(3)) {
      RunStats a = run_with_witness(m.decider, x, y, 100000);
      RunStats b = run_with_witness(m.decider, x, y, 100000);
      CHECK(a.steps == b.steps);
      CHECK(a.reversals == b.reversals);
      CHECK(a.outcome == b.outcome);
      for (std::uint64_t fuel : {std::uint64_t{1}, a.steps / 2 + 1, a.steps, a.steps + 10}) {
        RunStats c = run_with_witness(m.decider, x, y, fuel);
        if (c.outcome != Outcome::FuelExhausted) {
          CHECK(c.outcome == a.outcome);
          CHECK(c.steps == a.steps);
        } else {
          CHECK(c.steps == fuel);
          CHECK(fuel < a.steps);
        }
      }
    }
}

TEST_CASE("reversals count right-to-left turns") {
  Program p = parse_program(
      "states 8 tapes 1 start 0 accept 1 reject 2\n"
      "0 * -> 3 * R\n"
      "3 * -> 4 * R\n"
      "4 * -> 5 * L\n"
      "5 * -> 6 * R\n"
      "6 * -> 7 * L\n"
      "7 * -> 1 * S\n");
  RunStats s = run(p, "0000", "", 100);
  REQUIRE(s.outcome == Outcome::Accept);
  CHECK(s.reversals[0] == 2);
}

TEST_CASE("program validation") {
  CHECK_THROWS_AS(parse_program("states 3 tapes 2 start 0 accept 1 reject 2\n"
                                "roles input input\n"),
                  MalformedProgram);
  CHECK_THROWS_AS(parse_program("states 3 tapes 2 start 0 accept 1 reject 2\n"
                                "roles input guess\n"
                                "0 ** -> 1 *1 SS\n"),
                  MalformedProgram);
  CHECK_THROWS_AS(parse_program("states 3 tapes 2 start 0 accept 1 reject 2\n"
                                "roles input guess\n"
                                "0 ** -> 1 ** SL\n"),
                  MalformedProgram);
  CHECK_THROWS_AS(parse_program("states 3 tapes 1 start 0 accept 1 reject 2\n"
                                "1 * -> 0 * S\n"),
                  MalformedProgram);
  CHECK_THROWS_AS(parse_program("states 3 tapes 1 start 0 accept 1 reject 2\n"
                                "0 * -> 1 * L\n"
                                "bogus\n"),
                  ParseError);
  // A head moving left of cell 0 is a run error.
  Program off = parse_program("states 3 tapes 1 start 0 accept 1 reject 2\n"
                              "0 * -> 0 * L\n");
  CHECK_THROWS_AS(run(off, "1", "", 10), MalformedProgram);
  Program partial = parse_program("states 3 tapes 1 start 0 accept 1 reject 2\n"
                                  "0 1 -> 1 * S\n");
  CHECK_THROWS_AS(run(partial, "0", "", 10), MalformedProgram);
}

TEST_CASE("assembled programs are total and report the fallback") {
  Assembler a({TapeRole::Input});
  StateId s = a.state("start");
  a.on(s, {is(0, Symbol::One)}, {}, a.accept());
  Program p = a.finish(s);
  RunStats r = run(p, "0", "", 10);
  CHECK(r.outcome == Outcome::Reject);
  CHECK(r.diagnostic == "diag:unexpected-symbol");
}

TEST_CASE("program text round trip preserves behaviour") {
  for (const CorpusMachine& m : decider_corpus()) {
    CAPTURE(m.name);
    std::string text = to_text(m.decider);
    Program back = parse_program(text);
    CHECK(to_text(back) == text);
    for (std::size_t nx = 0; nx + m.w(nx) <= 6; ++nx)
      for (const std::string& x : all_words(nx))
        for (const std::string& y : all_words(m.w(nx))) {
          RunStats a = run_with_witness(m.decider, x, y, 100000);
          RunStats b = run_with_witness(back, x, y, 100000);
          CHECK(a.outcome == b.outcome);
          CHECK(a.steps == b.steps);
        }
  }
}

TEST_CASE("PrefixLength preload with no consistent boundary rejects") {
  CorpusMachine eq = corpus_machine("equal");
  RunStats s = run(eq.decider, "101", "", 100);
  CHECK(s.outcome == Outcome::Reject);
  CHECK(s.diagnostic == "diag:no-witness-boundary");
  CHECK(run(eq.decider, "1011", "", 100).outcome == Outcome::Reject);
  CHECK(run(eq.decider, "1011", "", 100).diagnostic.empty());
  CHECK(run(eq.decider, "1010", "", 100).outcome == Outcome::Accept);
}
