#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "tmlab/bounds.hpp"
#include "tmlab/codec.hpp"

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

std::optional<CodecError> error_of(const std::string& bits) { return check_encoding(bits); }

}  // namespace

TEST_CASE("DIMACS reading") {
  CHECK(parse_dimacs("p cnf 1 1\n1 0\n") == formula(1, {{1}}));
  CHECK(parse_dimacs("c two clauses\np cnf 2 2\n1 -2 0\n2 0\n") == formula(2, {{1, -2}, {2}}));
  CHECK(parse_dimacs("p cnf 3 2\n1 -2\n 3 0 -1 0\n") == formula(3, {{1, -2, 3}, {-1}}));
  CHECK(parse_dimacs("p cnf 5 1\n2 0\n").variable_count == 5);
  CHECK(parse_dimacs("p cnf 1 1\n1 0\n%\n0\n") == formula(1, {{1}}));

  CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p dnf 1 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1a 0\n"), ParseError);
}

TEST_CASE("DIMACS round trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    CnfFormula f = random_formula(rng, 1 + rng() % 30, 1 + rng() % 40, 1 + rng() % 5);
    CHECK(parse_dimacs(emit_dimacs(f)) == f);
  }
}

TEST_CASE("formula helpers") {
  CnfFormula f = formula(3, {{1, -2}, {2}});
  CHECK(f.literal_count() == 3);
  CHECK(f.distinct_variables() == 2);
  CHECK(evaluate(f, {true, true, false}));
  CHECK_FALSE(evaluate(f, {false, true, false}));
  CHECK_THROWS_AS(evaluate(f, {true}), std::invalid_argument);
  CHECK_THROWS_AS(formula(2, {{1}, {}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(formula(1, {{2}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(formula(1, {}).validate(), std::invalid_argument);
  CHECK(rename_variables(f, {3, 1, 2}) == formula(3, {{3, -1}, {1}}));
  CHECK_THROWS_AS(rename_variables(f, {1, 1, 2}), std::invalid_argument);
}

TEST_CASE("index width") {
  CHECK(index_width(1) == 1);
  CHECK(index_width(2) == 2);
  CHECK(index_width(3) == 2);
  CHECK(index_width(4) == 3);
  CHECK(index_width(255) == 8);
  CHECK(index_width(256) == 9);
}

TEST_CASE("smallest formula layout") {
  // prefix "1" "0" "1", literal "0 1", terminator "0 0"
  EncodedFormula e = encode(formula(1, {{1}}));
  CHECK(e.bits == "1010100");
  CHECK(e.n() == 7);
  CHECK(decode(e.bits) == formula(1, {{1}}));
  CHECK(encode(formula(2, {{1, -2}, {2}})).bits == "110" "10" "001" "110" "000" "010" "000");
}

TEST_CASE("swapping two names changes the encoding") {
  CnfFormula f = formula(2, {{1, -2}});
  CHECK(encode(f).bits != encode(rename_variables(f, {2, 1})).bits);
}

TEST_CASE("encoding length covers one record per variable") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    CnfFormula f = random_formula(rng, 1 + rng() % 40, 1 + rng() % 60, 1 + rng() % 4);
    if (f.distinct_variables() != f.variable_count) continue;
    const std::size_t v = f.variable_count;
    CHECK(encode(f).n() >= v * (1 + index_width(v)));
  }
}

TEST_CASE("codec round trips on the small corpus") {
  std::vector<CnfFormula> corpus = small_formula_corpus();
  CHECK(corpus.size() == 26 + 26 * 27 / 2 + 26 * 27 * 28 / 6);
  std::set<std::string> distinct;
  for (const CnfFormula& f : corpus) {
    EncodedFormula e = encode(f);
    CHECK(decode(e.bits) == f);
    CHECK(encode(decode(e.bits)).bits == e.bits);
    distinct.insert(e.bits);
  }
  CHECK(distinct.size() == corpus.size());
}

TEST_CASE("codec round trips on random formulas") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    CnfFormula f = random_formula(rng, 1 + rng() % 300, 1 + rng() % 50, 1 + rng() % 6);
    EncodedFormula e = encode(f);
    REQUIRE(decode(e.bits) == f);
    CHECK(encode(decode(e.bits)).bits == e.bits);
  }
}

TEST_CASE("canonical strings re-encode to themselves") {
  // Single-bit mutations of valid encodings: whatever still decodes must be canonical.
  std::mt19937_64 rng(13);
  int decoded = 0;
  for (int i = 0; i < 400; ++i) {
    std::string bits = encode(random_formula(rng, 1 + rng() % 12, 1 + rng() % 6, 3)).bits;
    bits[rng() % bits.size()] ^= 1;
    if (check_encoding(bits)) continue;
    ++decoded;
    CHECK(encode(decode(bits)).bits == bits);
  }
  CHECK(decoded > 0);
}

TEST_CASE("renaming produces distinct encodings") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t v = 2 + rng() % 20;
    CnfFormula f = random_formula(rng, v, 1 + rng() % 10, 4);
    std::vector<std::uint32_t> perm(v);
    std::iota(perm.begin(), perm.end(), 1u);
    // Redraw until some occurring variable moves.
    bool moves = false;
    while (!moves) {
      std::shuffle(perm.begin(), perm.end(), rng);
      for (const Clause& c : f.clauses)
        for (const Literal& l : c) moves = moves || perm[l.variable - 1] != l.variable;
    }
    CHECK(encode(rename_variables(f, perm)).bits != encode(f).bits);
  }
}

TEST_CASE("decode diagnostics") {
  using E = CodecError;
  CHECK(error_of("") == E::TruncatedRecord);
  CHECK(error_of("0") == E::ZeroWidth);
  CHECK(error_of("0101") == E::ZeroWidth);
  CHECK(error_of("111") == E::TruncatedRecord);
  CHECK(error_of("10") == E::TruncatedRecord);
  CHECK(error_of("1100") == E::NonCanonicalWidth);
  CHECK(error_of("1101") == E::TruncatedRecord);
  CHECK(error_of("101") == E::EmptyFormula);
  CHECK(error_of("10100") == E::EmptyClause);
  CHECK(error_of("10110") == E::BadTerminator);
  CHECK(error_of("101010") == E::TruncatedRecord);
  CHECK(error_of("1010100" "0") == E::TruncatedRecord);
  CHECK(error_of("101" "01") == E::MissingTerminator);
  CHECK(error_of("101" "01" "01") == E::MissingTerminator);
  CHECK(error_of("101" "01" "01" "1") == E::TruncatedRecord);
  CHECK(error_of("101" "01" "01" "00") == std::nullopt);
  // v = 2 needs k = 2; index 3 is out of range; a clause left open.
  CHECK(error_of("110" "10" "011" "000") == E::IndexOutOfRange);
  CHECK(error_of("110" "10" "001") == E::MissingTerminator);
  CHECK(error_of("110" "10" "001" "00") == E::TruncatedRecord);
  CHECK(error_of("110" "11" "011" "000") == std::nullopt);

  try {
    decode("110" "10" "001" "011");
    FAIL("expected a decode error");
  } catch (const DecodeError& e) {
    CHECK(e.code() == E::IndexOutOfRange);
    CHECK(e.offset() == 8);
  }
  std::set<std::string_view> names;
  for (E e : {E::TruncatedRecord, E::IndexOutOfRange, E::MissingTerminator, E::EmptyClause,
              E::EmptyFormula, E::ZeroWidth, E::NonCanonicalWidth, E::BadTerminator})
    names.insert(to_string(e));
  CHECK(names.size() == 8);
}

TEST_CASE("encoding dump") {
  std::string d = encoding_dump(formula(2, {{1, -2}, {2}}));
  CHECK(d == "prefix v=2 k=2: 11 0 10\n"
             "clause 1: +1[0 01] -2[1 10] end[0 00]\n"
             "clause 2: +2[0 10] end[0 00]\n");
}

TEST_CASE("variable bound arithmetic") {
  CHECK(variable_bound(1024) == 409);
  CHECK(variable_bound(2) == 8);
  CHECK(variable_bound(65536) == 16384);
  CHECK_THROWS_AS(variable_bound(1), std::invalid_argument);
}

TEST_CASE("Robbins bounds sandwich lg v!") {
  const long double lg_e = std::numbers::log2e_v<long double>;
  LogFactorialBounds ten = robbins_log_factorial(10);
  long double lg10 = 0;
  for (int k = 1; k <= 10; ++k) lg10 += std::log2(static_cast<long double>(k));
  CHECK(std::abs(static_cast<double>(lg10) - 21.791) < 1e-3);
  CHECK(ten.lower < lg10);
  CHECK(lg10 < ten.upper);

  LogFactorialBounds one = robbins_log_factorial(1);
  CHECK(one.lower < 0);
  CHECK(0 < one.upper);

  long double sum = 0;
  const long double tol = 1e-9L;
  for (std::size_t v = 1; v <= 100000; ++v) {
    sum += std::log2(static_cast<long double>(v));
    LogFactorialBounds b = robbins_log_factorial(v);
    const long double slack = tol * std::max<long double>(1, sum);
    if (!(b.lower < sum + slack && sum < b.upper + slack)) {
      FAIL_CHECK("sandwich fails at v = " << v);
      break;
    }
    const long double x = static_cast<long double>(v);
    const long double width = lg_e * (1 / (12 * x) - 1 / (12 * x + 1));
    // Rounding of the shared leading terms is the only extra slack.
    const long double ulp = 4 * std::numeric_limits<long double>::epsilon() * std::abs(b.upper);
    if (!(b.upper - b.lower <= width + ulp)) {
      FAIL_CHECK("interval too wide at v = " << v);
      break;
    }
  }
  CHECK_THROWS_AS(robbins_log_factorial(0), std::invalid_argument);
}

TEST_CASE("variable-count threshold") {
  const std::size_t n_max = std::size_t{1} << 20;
  const std::size_t n1 = verify_bound_threshold(n_max);
  CHECK(n1 <= 64);
  std::vector<std::size_t> vstar = robbins_max_variables(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) REQUIRE(vstar[n] >= vstar[n - 1]);
  // With C = 4, d(1 - d) = 1/4 gives d = 1/2: v lg v <= 2n.
  for (std::size_t n = n1; n <= n_max; n += 97) {
    const double v = static_cast<double>(vstar[n]);
    CHECK(v * std::log2(v) <= 2.0 * static_cast<double>(n));
    CHECK(v < 4.0 * n / std::log2(static_cast<double>(n)));
  }
  CHECK_THROWS_AS(verify_bound_threshold(8), std::invalid_argument);
}

TEST_CASE("maximal variable count matches the layout") {
  CHECK(maximal_variable_count(6) == 0);
  CHECK(maximal_variable_count(7) == 1);
  for (std::size_t n : {7, 20, 100, 1000, 5000}) {
    const std::size_t v = maximal_variable_count(n);
    CHECK(encode(all_variables_formula(v)).n() <= n);
    CHECK(encode(all_variables_formula(v + 1)).n() > n);
  }
}
