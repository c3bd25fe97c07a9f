#include <doctest.h>

#include <algorithm>
#include <random>

#include "tmlab/bounds.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/sat.hpp"

using namespace tmlab;

namespace {

CnfFormula formula(std::size_t v, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.variable_count = v;
  for (const auto& c : clauses) {
    f.clauses.emplace_back();
    for (int l : c) f.clauses.back().push_back({static_cast<std::uint32_t>(std::abs(l)), l < 0});
  }
  return f;
}

std::vector<bool> assignment_of(std::uint32_t mask, std::size_t v) {
  std::vector<bool> a(v);
  for (std::size_t j = 0; j < v; ++j) a[j] = (mask >> j) & 1u;
  return a;
}

bool truth_table_sat(const CnfFormula& f) {
  for (std::uint32_t m = 0; m < (1u << f.variable_count); ++m)
    if (evaluate(f, assignment_of(m, f.variable_count))) return true;
  return false;
}

std::string machine_diagnostic(const std::string& bits) {
  return run(sat_verifier_program(), bits, "", 1'000'000).diagnostic;
}

}  // namespace

TEST_CASE("reference decider") {
  CHECK(decide_sat_reference(formula(1, {{1}})));
  CHECK_FALSE(decide_sat_reference(formula(1, {{1}, {-1}})));
  // Every CNF over two variables with at most two clauses.
  std::vector<std::vector<int>> pool{{1}, {-1}, {2}, {-2}, {1, 2}, {1, -2}, {-1, 2}, {-1, -2}};
  for (std::size_t a = 0; a < pool.size(); ++a)
    for (std::size_t b = a; b <= pool.size(); ++b) {
      std::vector<std::vector<int>> cl{pool[a]};
      if (b < pool.size()) cl.push_back(pool[b]);
      CnfFormula f = formula(2, cl);
      CHECK(decide_sat_reference(f) == truth_table_sat(f));
    }
  CnfFormula big = formula(23, {{23}});
  CHECK_THROWS_AS(decide_sat_reference(big), CapExceeded);
}

TEST_CASE("pipeline examples") {
  CHECK(verify_assignment_pipeline(formula(2, {{1, -2}, {2}}), {true, true}).verdict);
  CHECK_FALSE(verify_assignment_pipeline(formula(1, {{1}}), {false}).verdict);
  CHECK_THROWS_AS(verify_assignment_pipeline(formula(2, {{1}}), {true}), std::invalid_argument);
}

TEST_CASE("pipeline stages on the small corpus") {
  for (const CnfFormula& f : small_formula_corpus())
    for (std::uint32_t m = 0; m < (1u << f.variable_count); ++m) {
      std::vector<bool> a = assignment_of(m, f.variable_count);
      VerificationTrace t = verify_assignment_pipeline(f, a);
      REQUIRE(t.verdict == evaluate(f, a));
      const std::size_t len = f.literal_count();
      CHECK(t.annotated.size() == len);
      CHECK(t.sorted_by_var.size() == len);
      CHECK(t.valued.size() == len);
      CHECK(t.sorted_by_clause.size() == len);
      CHECK(std::is_sorted(t.sorted_by_var.begin(), t.sorted_by_var.end(),
                           [](const auto& x, const auto& y) {
                             return x.literal.variable < y.literal.variable;
                           }));
      for (const ValuedLiteral& vl : t.valued)
        CHECK(vl.value == (a[vl.annotated.literal.variable - 1] != vl.annotated.literal.negated));
      CHECK(std::is_sorted(t.sorted_by_clause.begin(), t.sorted_by_clause.end(),
                           [](const auto& x, const auto& y) {
                             return x.annotated.clause_index < y.annotated.clause_index;
                           }));
    }
}

TEST_CASE("verifier program basics") {
  CHECK_THROWS_AS(build_sat_verifier_program(6), std::invalid_argument);
  const Program& p = sat_verifier_program();
  CHECK(p.tape_count() == sat_tapes::tape_count);
  CHECK(p.guess_tape() == sat_tapes::guess);

  RunStats yes = run_sat_verifier(formula(1, {{1}}), {true});
  CHECK(yes.outcome == Outcome::Accept);
  CHECK(yes.guess_bits == 1);
  for (bool g : {false, true}) {
    RunStats r = run_sat_verifier(formula(1, {{1}, {-1}}), {g});
    CHECK(r.outcome == Outcome::Reject);
    CHECK(r.diagnostic.empty());
  }
  // Variables that never occur are still consumed.
  RunStats sparse = run_sat_verifier(formula(9, {{4, -7}}), std::vector<bool>(9, false));
  CHECK(sparse.outcome == Outcome::Accept);
  CHECK(sparse.guess_bits == 9);
}

TEST_CASE("verifier agrees with direct evaluation branch by branch") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    CnfFormula f = random_formula(rng, 1 + rng() % 40, 1 + rng() % 30, 1 + rng() % 4);
    std::vector<bool> a(f.variable_count);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = rng() & 1u;
    RunStats r = run_sat_verifier(f, a);
    REQUIRE(r.outcome != Outcome::FuelExhausted);
    CHECK((r.outcome == Outcome::Accept) == evaluate(f, a));
    CHECK(r.guess_bits == f.variable_count);
  }
}

TEST_CASE("verifier diagnostics match the decoder") {
  for (std::string bits : {"0", "", "111", "10", "1100", "1101", "101", "10100", "10110", "101010",
                           "01010100", "1010100" "0", "10101", "11010011000", "11010001"})
    CHECK(machine_diagnostic(bits) == "diag:" + std::string(to_string(*check_encoding(bits))));

  std::mt19937_64 rng(22);
  int malformed = 0;
  for (int trial = 0; trial < 600; ++trial) {
    std::string bits = encode(random_formula(rng, 1 + rng() % 20, 1 + rng() % 6, 3)).bits;
    switch (rng() % 3) {
      case 0: bits[rng() % bits.size()] ^= 1; break;
      case 1: bits.resize(rng() % bits.size()); break;
      default: bits.insert(rng() % (bits.size() + 1), 1 + rng() % 4, (rng() & 1u) ? '1' : '0');
    }
    std::optional<CodecError> e = check_encoding(bits);
    if (!e) continue;
    ++malformed;
    CHECK(machine_diagnostic(bits) == "diag:" + std::string(to_string(*e)));
  }
  CHECK(malformed > 300);
}

TEST_CASE("decide_sat_tm examples") {
  SatDecision two = decide_sat_tm(formula(2, {{1, 2}}));
  CHECK(two.verdict == Verdict::Accept);
  CHECK(two.stats.guess_bits == 2);
  REQUIRE(two.assignment);
  CHECK(evaluate(formula(2, {{1, 2}}), *two.assignment));

  CnfFormula all_eight;
  all_eight.variable_count = 3;
  for (int m = 0; m < 8; ++m)
    all_eight.clauses.push_back({{1, (m & 1) != 0}, {2, (m & 2) != 0}, {3, (m & 4) != 0}});
  SatDecision none = decide_sat_tm(all_eight);
  CHECK(none.verdict == Verdict::Reject);
  CHECK(none.branches == 8);
  CHECK(none.stats.guess_bits == 3);
  CHECK(none.n > 3);

  CHECK(decide_sat_tm(formula(1, {{1}}), 50).verdict == Verdict::Indeterminate);
}

TEST_CASE("decide_sat_tm agrees with the reference on random instances") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t v = 1 + rng() % 8;
    CnfFormula f = random_formula(rng, v, 1 + rng() % (3 * v), 3);
    SatDecision d = decide_sat_tm(f);
    REQUIRE(d.verdict != Verdict::Indeterminate);
    CHECK((d.verdict == Verdict::Accept) == decide_sat_reference(f));
    CHECK(d.stats.guess_bits == v);
  }
}

TEST_CASE("witness budget") {
  WitnessBudget one = witness_budget_check(formula(1, {{1}}));
  CHECK(one.v == 1);
  CHECK(one.n == 7);
  CHECK(one.ok);
  const std::size_t n1 = bound_threshold();
  CHECK(n1 <= 64);
  // Formulas using as many variables as an n-bit encoding allows.
  for (std::size_t n = 8; n <= (std::size_t{1} << 16); ++n) {
    const std::size_t v = maximal_variable_count(n);
    if (n >= n1) REQUIRE(v <= variable_bound(n));
  }
  for (std::size_t n = 64; n <= (std::size_t{1} << 16); n *= 2) {
    WitnessBudget b = witness_budget_check(all_variables_formula(maximal_variable_count(n)));
    CHECK(b.n <= n);
    CHECK(b.asserted);
    CHECK(b.ok);
  }
}

TEST_CASE("annotated list stays within twice the input") {
  std::mt19937_64 rng(24);
  for (std::size_t v = 3; v <= 400; v += 1 + v / 8) {
    PlantedFormula p = planted_3cnf(rng, v, static_cast<std::size_t>(4.26 * v + 0.5));
    CHECK(annotated_bits(p.formula) <= 2 * encode(p.formula).n());
  }
}

TEST_CASE("SAT step sweep") {
  SatSweepOptions o;
  o.n_lo = 256;
  o.n_hi = 2048;
  SatSweep par = sat_step_sweep(o);
  SatSweep ser = sat_step_sweep_serial(o);
  REQUIRE(par.points.size() == 8);
  REQUIRE(ser.points.size() == par.points.size());
  for (std::size_t i = 0; i < par.points.size(); ++i) {
    const SatSweepPoint& p = par.points[i];
    CHECK(p.max_steps == ser.points[i].max_steps);
    CHECK(p.n >= p.target_n);
    CHECK(p.guess_bits == p.v);
    if (p.budget.asserted) CHECK(p.budget.ok);
  }
  CHECK(par.fit.spread() <= 4.0);
}
