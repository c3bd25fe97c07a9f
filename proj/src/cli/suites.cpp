#include "tmlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tmlab/bounds.hpp"
#include "tmlab/cnf.hpp"
#include "tmlab/codec.hpp"
#include "tmlab/corpus.hpp"
#include "tmlab/enumerate.hpp"
#include "tmlab/language.hpp"
#include "tmlab/sat.hpp"
#include "tmlab/transform.hpp"

namespace tmlab {

namespace {

constexpr std::uint64_t kModeFuel = 2'000'000;

std::string list_text(const std::vector<std::uint64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string rerun(const std::string& suite, const SuiteOptions& o) {
  std::string r = "tmlab verify --only " + suite + " --seed " + std::to_string(o.seed);
  if (o.sort.flip_compare) r += " --inject flip-compare";
  return r;
}

// Records the first failure only.
struct FirstFailure {
  SuiteResult& r;
  const SuiteOptions& o;
  bool fail(const std::string& what, const std::string& detail = {}) {
    if (!r.passed && !r.summary.empty()) return false;
    r.passed = false;
    r.summary = what;
    r.reproducer = rerun(r.name, o) + (detail.empty() ? "" : "; " + detail);
    return false;
  }
};

SuiteResult start(const std::string& name) {
  SuiteResult r;
  r.name = name;
  r.passed = true;
  return r;
}

WitnessSizeFn random_witness_fn(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return WitnessSizeFn::constant(rng() % 4);
    case 1: return WitnessSizeFn::affine(1 + rng() % 2, 1 + rng() % 2, rng() % 2);
    case 2: return WitnessSizeFn::floor_lg(rng() % 2);
    default: return WitnessSizeFn::ceil_lg(rng() % 2);
  }
}

SuiteResult sort_suite(const SuiteOptions& o) {
  SuiteResult r = start("sort");
  FirstFailure out{r, o};
  std::mt19937_64 rng(o.seed);
  std::size_t tie_trials = 0;
  for (int trial = 0; trial < 1000 && r.passed; ++trial) {
    const std::size_t m = 1 + rng() % 128;
    const std::size_t width = 4 + rng() % 13;
    const std::uint64_t key_seed = rng();
    KeyList l = random_keys(key_seed, m, width);
    SortOptions opt = o.sort;
    std::vector<std::uint64_t> expect = l.keys;
    // Every fourth list compares on a key prefix only, so equal prefixes
    // must come out in input order.
    if (trial % 4 == 3) {
      opt.compare_bits = 1 + rng() % 3;
      const std::size_t shift = width - opt.compare_bits;
      std::stable_sort(expect.begin(), expect.end(),
                       [shift](std::uint64_t a, std::uint64_t b) { return (a >> shift) < (b >> shift); });
      ++tie_trials;
    } else {
      std::sort(expect.begin(), expect.end());
    }
    const std::string params = "trial " + std::to_string(trial) + ": m=" + std::to_string(m) +
                               " width=" + std::to_string(width) +
                               " compare_bits=" + std::to_string(opt.compare_bits) +
                               " keys=" + list_text(l.keys);
    try {
      SortRun run = tm_sort(l, std::nullopt, opt);
      if (run.sorted.keys != expect)
        out.fail("output differs from the oracle on trial " + std::to_string(trial),
                 params + " got=" + list_text(run.sorted.keys) + " expected=" + list_text(expect));
    } catch (const std::exception& e) {
      out.fail(std::string("sort failed: ") + e.what(), params);
    }
  }
  if (r.passed) r.summary = "1000 lists match the oracle, " + std::to_string(tie_trials) + " with ties";
  return r;
}

SuiteResult stages_suite(const SuiteOptions& o) {
  SuiteResult r = start("stages");
  FirstFailure out{r, o};
  for (std::size_t m = 2; m <= 1024 && r.passed; m *= 2) {
    KeyList l = random_keys(o.seed ^ m, m, 4);
    SortRun run = tm_sort(l, std::nullopt, o.sort);
    const std::size_t expect = floor_log2(m);
    if (run.stages.size() != expect)
      out.fail("m=" + std::to_string(m) + " took " + std::to_string(run.stages.size()) +
                   " stages, expected " + std::to_string(expect),
               "m=" + std::to_string(m) + " width=4");
  }
  if (r.passed) r.summary = "lg m stages for every m = 2..1024";
  return r;
}

SuiteResult sort_bound_suite(const SuiteOptions& o) {
  SuiteResult r = start("sort-bound");
  FirstFailure out{r, o};
  FitResult fit = verify_step_bound(default_sort_grid(), o.seed);
  r.metrics["C"] = fit.max_ratio;
  r.metrics["spread"] = fit.spread();
  std::ostringstream s;
  s << "C=" << fit.max_ratio << " spread=" << fit.spread() << " over " << fit.points.size()
    << " points";
  r.summary = s.str();
  if (fit.spread() > 4.0) out.fail("ratio spread above 4: " + s.str());
  return r;
}

SuiteResult reversals_suite(const SuiteOptions& o) {
  SuiteResult r = start("reversals");
  FirstFailure out{r, o};
  std::size_t stages = 0;
  for (std::size_t m = 2; m <= 64 && r.passed; m *= 2)
    for (std::uint64_t i = 0; i < 4 && r.passed; ++i) {
      KeyList l = random_keys(o.seed + 31 * m + i, m, 6);
      SortRun run = tm_sort(l, std::nullopt, o.sort);
      for (const StageReport& s : run.stages) {
        ++stages;
        if (s.result_reversals != 1 || s.source_reversals != 1 || s.target_reversals != 1) {
          out.fail("stage " + std::to_string(s.stage_index) + " at m=" + std::to_string(m) +
                       " reversed " + std::to_string(s.result_reversals) + "/" +
                       std::to_string(s.source_reversals) + "/" +
                       std::to_string(s.target_reversals) + " times",
                   "keys=" + list_text(l.keys));
          break;
        }
      }
    }
  if (r.passed) r.summary = std::to_string(stages) + " stages, one reversal each";
  return r;
}

SuiteResult sat_suite(const SuiteOptions& o) {
  SuiteResult r = start("sat");
  FirstFailure out{r, o};
  std::vector<CnfFormula> cases = small_formula_corpus();
  const std::size_t corpus = cases.size();
  for (CnfFormula& f : oracle_instances(o.seed, 500)) cases.push_back(std::move(f));

  std::vector<std::string> errors(cases.size());
  std::vector<char> sat(cases.size(), 0);
  std::vector<std::uint64_t> branches(cases.size(), 0);
  const long n = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      const bool expect = decide_sat_reference(cases[i]);
      SatDecision d = decide_sat_tm(cases[i]);
      sat[i] = expect;
      branches[i] = d.branches;
      if (d.verdict == Verdict::Indeterminate)
        errors[i] = "indeterminate";
      else if ((d.verdict == Verdict::Accept) != expect)
        errors[i] = std::string("machine says ") + std::string(to_string(d.verdict)) +
                    ", reference says " + (expect ? "sat" : "unsat");
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (!errors[i].empty()) {
      const std::string where = i < corpus ? "corpus formula " + std::to_string(i)
                                           : "random instance " + std::to_string(i - corpus);
      out.fail(where + ": " + errors[i], "dimacs: " + one_line(emit_dimacs(cases[i])));
      break;
    }
  const std::size_t n_sat = std::count(sat.begin(), sat.end(), 1);
  r.metrics["corpus"] = corpus;
  r.metrics["random"] = cases.size() - corpus;
  r.metrics["satisfiable"] = n_sat;
  r.metrics["branches"] = std::accumulate(branches.begin(), branches.end(), std::uint64_t{0});
  if (r.passed)
    r.summary = std::to_string(corpus) + " corpus formulas and " +
                std::to_string(cases.size() - corpus) + " random instances agree (" +
                std::to_string(n_sat) + " satisfiable)";
  return r;
}

SuiteResult sat_sweep_suite(const SuiteOptions& o) {
  SuiteResult r = start("sat-sweep");
  FirstFailure out{r, o};
  SatSweepOptions opt;
  opt.seed = o.seed;
  SatSweep sweep = sat_step_sweep(opt);
  r.metrics["C"] = sweep.fit.max_ratio;
  r.metrics["spread"] = sweep.fit.spread();
  r.metrics["threshold"] = bound_threshold();
  std::ostringstream s;
  s << "C=" << sweep.fit.max_ratio << " spread=" << sweep.fit.spread() << " over "
    << sweep.points.size() << " instances, n up to " << sweep.points.back().n;
  r.summary = s.str();
  if (sweep.fit.spread() > 4.0) out.fail("ratio spread above 4: " + s.str());
  for (const SatSweepPoint& p : sweep.points) {
    const std::string at = "n=" + std::to_string(p.n) + " v=" + std::to_string(p.v);
    if (p.guess_bits != p.v)
      out.fail("guess bits " + std::to_string(p.guess_bits) + " differ from v at " + at, at);
    if (p.budget.asserted && !p.budget.ok)
      out.fail("v exceeds 4n/lg n at " + at, at);
  }
  return r;
}

SuiteResult bound_suite(const SuiteOptions& o) {
  SuiteResult r = start("bound");
  FirstFailure out{r, o};
  const std::size_t n_max = std::size_t{1} << 20;
  const std::size_t n1 = verify_bound_threshold(n_max);
  r.metrics["n1"] = n1;
  if (n1 > n_max) return (out.fail("no threshold up to 2^20"), r);
  std::vector<std::size_t> vstar = robbins_max_variables(n_max);
  for (std::size_t n = n1; n <= n_max; ++n) {
    const double cap = 4.0 * static_cast<double>(n) / std::log2(static_cast<double>(n));
    if (!(static_cast<double>(vstar[n]) < cap)) {
      out.fail("v*(" + std::to_string(n) + ") = " + std::to_string(vstar[n]) + " is not below 4n/lg n",
               "n=" + std::to_string(n));
      break;
    }
  }
  long double sum = 0;
  const long double tol = 1e-9L;
  for (std::size_t v = 1; v <= 100000; ++v) {
    sum += std::log2(static_cast<long double>(v));
    LogFactorialBounds b = robbins_log_factorial(v);
    const long double slack = tol * std::max<long double>(1, sum);
    if (!(b.lower < sum + slack && sum < b.upper + slack)) {
      out.fail("Robbins sandwich fails at v = " + std::to_string(v), "v=" + std::to_string(v));
      break;
    }
  }
  if (r.passed) r.summary = "n1 = " + std::to_string(n1) + ", sandwich holds for v <= 100000";
  return r;
}

SuiteResult projection_suite(const SuiteOptions& o) {
  SuiteResult r = start("projection");
  FirstFailure out{r, o};
  std::mt19937_64 rng(o.seed);
  for (int trial = 0; trial < 20 && r.passed; ++trial) {
    const std::uint64_t lang_seed = rng();
    std::mt19937_64 lang_rng(lang_seed);
    FiniteLanguage l = random_language(lang_rng, 10, 0.05 + 0.1 * (rng() % 6));
    WitnessSizeFn f = random_witness_fn(rng), g = random_witness_fn(rng);
    if (!composition_identity_check(l, f, g))
      out.fail("identity fails on triple " + std::to_string(trial),
               "language seed " + std::to_string(lang_seed) + " f=" + f.description() +
                   " g=" + g.description());
  }
  const WitnessSizeFn n = WitnessSizeFn::identity();
  const WitnessSizeFn three = WitnessSizeFn::affine(3, 1, 0);
  if (!WitnessSizeFn::composed(n, n).agrees_with(three, 1000))
    out.fail("n + (n + n) differs from 3n");
  for (FiniteLanguage l : {all_words_language(4), all_words_language(9)}) {
    std::mt19937_64 lang_rng(o.seed);
    for (const FiniteLanguage& m : {l, random_language(lang_rng, 10, 0.5)})
      if (!(project_composed(m, n, n) == project(m, three)))
        out.fail("L[n,n] differs from L[3n]", "max_len " + std::to_string(m.max_len()));
  }
  if (r.passed) r.summary = "20 random triples and L[n,n] = L[3n]";
  return r;
}

SuiteResult modes_suite(const SuiteOptions& o) {
  SuiteResult r = start("modes");
  FirstFailure out{r, o};
  std::size_t inputs = 0;
  for (const CorpusMachine& m : decider_corpus()) {
    Program p = projectize(m.decider, m.w);
    Program d = determinize_with_witness(p, m.w);
    Program b = brute_force_determinize(p, m.w);
    for (std::size_t nx = 0; nx + m.w(nx) <= 8; ++nx)
      for (const std::string& x : all_words(nx))
        for (const std::string& y : all_words(m.w(nx))) {
          ++inputs;
          if (run_with_witness(m.decider, x, y, kModeFuel).outcome !=
              run_with_witness(d, x, y, kModeFuel).outcome)
            out.fail("round trip changes " + m.name, "x=" + x + " y=" + y);
        }
    for (std::size_t n = 0; n <= 8; ++n)
      for (const std::string& x : all_words(n)) {
        RunStats s = run(b, x, "", 50 * kModeFuel);
        Verdict v = explore_guess_tree(p, x, m.w(n), kModeFuel).verdict;
        if (s.outcome == Outcome::FuelExhausted || (s.outcome == Outcome::Accept) != (v == Verdict::Accept))
          out.fail("brute force disagrees with guess enumeration on " + m.name, "x=" + x);
      }
  }
  CorpusMachine m = corpus_machine("index-of-one");
  Program b = brute_force_determinize(projectize(m.decider, m.w), m.w);
  std::vector<FitPoint> points;
  for (std::size_t n = 8; n <= 256; n *= 2) {
    RunStats s = run(b, std::string(n, '0'), "", 1'000'000'000);
    if (s.outcome != Outcome::Reject) out.fail("brute force did not reject 0^" + std::to_string(n));
    points.push_back({{{"n", n}}, s.steps, static_cast<double>(n) * static_cast<double>(n), 0});
  }
  FitResult fit = make_fit("n^2", std::move(points));
  r.metrics["C"] = fit.max_ratio;
  r.metrics["spread"] = fit.spread();
  if (fit.spread() > 4.0) out.fail("brute-force steps/n^2 spread above 4");
  if (r.passed) {
    std::ostringstream s;
    s << "10 machines, " << inputs << " <x,y> pairs; brute force steps/n^2 C=" << fit.max_ratio
      << " spread=" << fit.spread();
    r.summary = s.str();
  }
  return r;
}

SuiteResult codec_suite(const SuiteOptions& o) {
  SuiteResult r = start("codec");
  FirstFailure out{r, o};
  std::vector<CnfFormula> corpus = small_formula_corpus();
  std::set<std::string> distinct;
  for (const CnfFormula& f : corpus) {
    EncodedFormula e = encode(f);
    if (!(decode(e.bits) == f)) out.fail("corpus round trip fails", "dimacs: " + one_line(emit_dimacs(f)));
    distinct.insert(e.bits);
  }
  if (distinct.size() != corpus.size()) out.fail("corpus encodings collide");
  std::mt19937_64 rng(o.seed);
  for (int i = 0; i < 1000; ++i) {
    CnfFormula f = random_formula(rng, 1 + rng() % 300, 1 + rng() % 50, 1 + rng() % 6);
    if (!(decode(encode(f).bits) == f))
      out.fail("random round trip fails", "dimacs: " + one_line(emit_dimacs(f)));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t v = 2 + rng() % 20;
    CnfFormula f = random_formula(rng, v, 1 + rng() % 10, 4);
    std::vector<std::uint32_t> perm(v);
    std::iota(perm.begin(), perm.end(), 1u);
    bool moves = false;
    while (!moves) {
      std::shuffle(perm.begin(), perm.end(), rng);
      for (const Clause& c : f.clauses)
        for (const Literal& l : c) moves = moves || perm[l.variable - 1] != l.variable;
    }
    if (encode(rename_variables(f, perm)).bits == encode(f).bits)
      out.fail("renaming keeps the encoding", "dimacs: " + one_line(emit_dimacs(f)));
  }
  if (r.passed)
    r.summary = std::to_string(corpus.size()) + " corpus formulas, 1000 random, 200 renamings";
  return r;
}

}  // namespace

const std::vector<Suite>& verification_suites() {
  static const std::vector<Suite> suites{
      {"sort", "sort output matches a comparison sort", 30, sort_suite},
      {"stages", "lg m merge stages", 10, stages_suite},
      {"sort-bound", "sort steps / (m lg m width) spread", 60, sort_bound_suite},
      {"reversals", "one reversal per stage on Result, Source, Target", 60, reversals_suite},
      {"sat", "SAT machine agrees with the truth-table decider", 60, sat_suite},
      {"sat-sweep", "verifier steps / (n lg n) spread and guess budget", 120, sat_sweep_suite},
      {"bound", "variable-count threshold and Robbins sandwich", 30, bound_suite},
      {"projection", "composed projection identity", 30, projection_suite},
      {"modes", "projectize / determinize / brute force equivalence", 60, modes_suite},
      {"codec", "encoding round trips and renaming", 30, codec_suite},
  };
  return suites;
}

const Suite& find_suite(std::string_view name) {
  for (const Suite& s : verification_suites())
    if (s.name == name) return s;
  throw std::out_of_range("unknown suite '" + std::string(name) + "'");
}

SuiteResult run_suite(const Suite& suite, const SuiteOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  try {
    r = suite.body(options);
  } catch (const std::exception& e) {
    r = SuiteResult{};
    r.passed = false;
    r.summary = std::string("error: ") + e.what();
    r.reproducer = rerun(suite.name, options);
  }
  r.name = suite.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace tmlab
