#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tmlab/bounds.hpp"
#include "tmlab/sat.hpp"
#include "tmlab/tm_sort.hpp"
#include "tmlab/witness.hpp"

namespace tmlab {

namespace {

std::string guess_string(const std::vector<bool>& a) {
  std::string g;
  for (bool b : a) g.push_back(b ? '1' : '0');
  return g;
}

constexpr double kClauseDensity = 4.26;

std::size_t clauses_for(std::size_t v) {
  return static_cast<std::size_t>(std::lround(kClauseDensity * static_cast<double>(v)));
}

std::size_t planted_length(std::size_t v) {
  const std::size_t k = index_width(v);
  return 2 * k + 1 + clauses_for(v) * 4 * (1 + k);
}

struct SweepInstance {
  std::size_t target_n;
  PlantedFormula planted;
  std::vector<std::vector<bool>> guesses;
};

std::vector<SweepInstance> sweep_instances(const SatSweepOptions& o) {
  if (o.n_lo < 64 || o.n_hi < o.n_lo || o.instances == 0)
    throw std::invalid_argument("SAT sweep needs 64 <= n_lo <= n_hi and at least one instance");
  std::vector<SweepInstance> out;
  for (std::size_t target = o.n_lo; target <= o.n_hi; target *= 2) {
    std::size_t v = 3;
    while (planted_length(v) < target) ++v;
    for (std::size_t i = 0; i < o.instances; ++i) {
      std::mt19937_64 rng(o.seed ^ (target * 0x9e3779b97f4a7c15ull) ^ (i + 1));
      SweepInstance s{target, planted_3cnf(rng, v, clauses_for(v)), {}};
      s.guesses.push_back(s.planted.assignment);
      for (std::size_t g = 0; g < o.extra_guesses; ++g) {
        std::vector<bool> a(v);
        for (std::size_t j = 0; j < v; ++j) a[j] = (rng() & 1u) != 0;
        s.guesses.push_back(std::move(a));
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

SatSweepPoint measure(const SweepInstance& s) {
  const CnfFormula& f = s.planted.formula;
  SatSweepPoint p;
  p.target_n = s.target_n;
  p.n = encode(f).n();
  p.v = f.variable_count;
  p.clauses = f.clauses.size();
  p.budget = witness_budget_check(f);
  for (std::size_t i = 0; i < s.guesses.size(); ++i) {
    RunStats r = run_sat_verifier(f, s.guesses[i]);
    if (r.outcome == Outcome::FuelExhausted)
      throw FuelExhausted("SAT verifier ran out of fuel at n = " + std::to_string(p.n));
    if (i == 0 && r.outcome != Outcome::Accept)
      throw std::runtime_error("SAT verifier rejected a planted assignment at n = " +
                               std::to_string(p.n) + ": " + r.diagnostic);
    p.max_steps = std::max(p.max_steps, r.steps);
    p.guess_bits = std::max(p.guess_bits, r.guess_bits);
  }
  return p;
}

SatSweep finish_sweep(std::vector<SatSweepPoint> points) {
  std::vector<FitPoint> fit;
  for (const SatSweepPoint& p : points) {
    FitPoint f;
    f.params = {{"n", p.n}, {"v", p.v}, {"clauses", p.clauses}};
    f.steps = p.max_steps;
    f.model = static_cast<double>(p.n) * std::log2(static_cast<double>(p.n));
    fit.push_back(std::move(f));
  }
  return {make_fit("n*lg(n)", std::move(fit)), std::move(points)};
}

}  // namespace

std::uint64_t default_sat_fuel(std::size_t n) {
  const std::size_t lg = std::max<std::size_t>(1, ceil_log2(n));
  return 2 * default_sort_fuel(n, 2 * lg + 1) + 64 * static_cast<std::uint64_t>(n) * (lg + 1);
}

RunStats run_sat_verifier(const CnfFormula& f, const std::vector<bool>& assignment,
                          std::optional<std::uint64_t> fuel) {
  if (assignment.size() != f.variable_count)
    throw std::invalid_argument("assignment length differs from the variable count");
  const EncodedFormula e = encode(f);
  return run(sat_verifier_program(), e.bits, guess_string(assignment),
             fuel.value_or(default_sat_fuel(e.n())));
}

SatDecision decide_sat_tm(const CnfFormula& f, std::optional<std::uint64_t> fuel) {
  const EncodedFormula e = encode(f);
  SatDecision d;
  d.n = e.n();
  d.v = f.variable_count;
  GuessSearch g = explore_guess_tree(sat_verifier_program(), e.bits, d.v,
                                     fuel.value_or(default_sat_fuel(d.n)), true);
  d.verdict = g.verdict;
  d.branches = g.branches;
  d.stats.outcome = g.verdict == Verdict::Accept   ? Outcome::Accept
                    : g.verdict == Verdict::Reject ? Outcome::Reject
                                                   : Outcome::FuelExhausted;
  d.stats.steps = g.max_steps;
  d.stats.guess_bits = g.max_guess_bits;
  if (g.accepting_guess) {
    std::vector<bool> a;
    for (char c : *g.accepting_guess) a.push_back(c == '1');
    d.assignment = std::move(a);
  }
  return d;
}

std::size_t bound_threshold() {
  static const std::size_t n1 = verify_bound_threshold(std::size_t{1} << 20);
  return n1;
}

WitnessBudget witness_budget_check(const CnfFormula& f) {
  WitnessBudget b;
  b.v = f.variable_count;
  b.n = encode(f).n();
  b.bound = variable_bound(b.n);
  b.ok = b.v <= b.bound;
  b.asserted = b.n >= bound_threshold();
  return b;
}

SatSweep sat_step_sweep_serial(const SatSweepOptions& options) {
  std::vector<SatSweepPoint> points;
  for (const SweepInstance& s : sweep_instances(options)) points.push_back(measure(s));
  return finish_sweep(std::move(points));
}

SatSweep sat_step_sweep(const SatSweepOptions& options) {
  const std::vector<SweepInstance> inst = sweep_instances(options);
  std::vector<SatSweepPoint> points(inst.size());
  std::vector<std::string> errors(inst.size());
  const long n = static_cast<long>(inst.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      points[i] = measure(inst[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const std::string& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  return finish_sweep(std::move(points));
}

std::vector<CnfFormula> oracle_instances(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<CnfFormula> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t v = 1 + rng() % 12;
    const std::size_t clauses = 1 + rng() % std::max<std::size_t>(1, 3 * v / 2);
    out.push_back(random_formula(rng, v, clauses, 3));
  }
  return out;
}

}  // namespace tmlab
