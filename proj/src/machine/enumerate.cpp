#include "tmlab/enumerate.hpp"

#include <atomic>
#include <deque>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "tmlab/errors.hpp"
#include "tmlab/machine.hpp"
#include "stepper.hpp"

namespace tmlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string bits_of(std::uint64_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if ((value >> (width - 1 - i)) & 1u) s[i] = '1';
  return s;
}

namespace {

void check_witness_cap(std::size_t w_len, std::size_t cap) {
  if (w_len > cap || w_len >= 63)
    throw CapExceeded("witness length " + std::to_string(w_len) + " exceeds enumeration cap " +
                      std::to_string(cap));
}

}  // namespace

WitnessSearch search_witness_serial(const Program& decider, std::string_view x, std::size_t w_len,
                                    std::uint64_t fuel, std::size_t cap) {
  if (!decider.is_deterministic()) throw std::invalid_argument("decider must be deterministic");
  check_witness_cap(w_len, cap);
  WitnessSearch result;
  bool exhausted = false;
  const std::uint64_t total = std::uint64_t{1} << w_len;
  for (std::uint64_t i = 0; i < total; ++i) {
    std::string y = bits_of(i, w_len);
    RunStats s = run_with_witness(decider, x, y, fuel);
    result.max_steps = std::max(result.max_steps, s.steps);
    if (s.outcome == Outcome::Accept) {
      result.verdict = Verdict::Accept;
      result.witness = std::move(y);
      return result;
    }
    exhausted |= s.outcome == Outcome::FuelExhausted;
  }
  result.verdict = exhausted ? Verdict::Indeterminate : Verdict::Reject;
  return result;
}

WitnessSearch search_witness_parallel(const Program& decider, std::string_view x,
                                      std::size_t w_len, std::uint64_t fuel, std::size_t cap) {
  if (!decider.is_deterministic()) throw std::invalid_argument("decider must be deterministic");
  check_witness_cap(w_len, cap);
  const std::int64_t total = std::int64_t{1} << w_len;
  std::atomic<std::int64_t> best{total};
  std::atomic<bool> exhausted{false};
  std::uint64_t max_steps = 0;
  std::exception_ptr error;
  std::mutex error_mutex;

#pragma omp parallel for schedule(dynamic, 16) reduction(max : max_steps)
  for (std::int64_t i = 0; i < total; ++i) {
    if (i > best.load(std::memory_order_relaxed)) continue;
    try {
      RunStats s = run_with_witness(decider, x, bits_of(static_cast<std::uint64_t>(i), w_len), fuel);
      max_steps = std::max(max_steps, s.steps);
      if (s.outcome == Outcome::Accept) {
        std::int64_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      } else if (s.outcome == Outcome::FuelExhausted) {
        exhausted = true;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  WitnessSearch result;
  result.max_steps = max_steps;
  if (best.load() < total) {
    result.verdict = Verdict::Accept;
    result.witness = bits_of(static_cast<std::uint64_t>(best.load()), w_len);
  } else {
    result.verdict = exhausted ? Verdict::Indeterminate : Verdict::Reject;
  }
  return result;
}

Verdict accept_exists_witness(const Program& decider, std::string_view x, std::size_t w_len,
                              std::uint64_t fuel, std::size_t cap) {
  return search_witness_parallel(decider, x, w_len, fuel, cap).verdict;
}

GuessSearch enumerate_guesses_serial(const Program& program, std::string_view input,
                                     std::size_t guess_length, std::uint64_t fuel,
                                     bool stop_at_accept, std::size_t cap) {
  if (program.is_deterministic()) throw std::invalid_argument("program has no guess tape");
  check_witness_cap(guess_length, cap);
  GuessSearch result;
  bool exhausted = false;
  const std::uint64_t total = std::uint64_t{1} << guess_length;
  for (std::uint64_t i = 0; i < total; ++i) {
    std::string g = bits_of(i, guess_length);
    RunStats s = run(program, input, g, fuel);
    ++result.branches;
    result.max_steps = std::max(result.max_steps, s.steps);
    result.max_guess_bits = std::max(result.max_guess_bits, s.guess_bits);
    if (s.outcome == Outcome::Accept) {
      if (!result.accepting_guess) result.accepting_guess = g;
      result.verdict = Verdict::Accept;
      if (stop_at_accept) return result;
    }
    exhausted |= s.outcome == Outcome::FuelExhausted;
  }
  if (result.verdict != Verdict::Accept)
    result.verdict = exhausted ? Verdict::Indeterminate : Verdict::Reject;
  return result;
}

namespace {

constexpr std::uint8_t kUnknown = 3;

Configuration undetermined_start(const Program& program, std::string_view input,
                                 std::size_t guess_length) {
  if (program.is_deterministic()) throw std::invalid_argument("program has no guess tape");
  std::optional<Configuration> c =
      initial_configuration(program, input, std::string(guess_length, '0'));
  if (!c) throw std::invalid_argument("input admits no witness boundary");
  Tape& g = c->tapes[*program.guess_tape()];
  for (std::size_t i = 1; i <= guess_length; ++i) g.cells[i] = kUnknown;
  return std::move(*c);
}

std::string determined_guess(const Program& program, const Configuration& c) {
  const Tape& g = c.tapes[*program.guess_tape()];
  std::string bits(c.guess_length, '0');
  for (std::size_t i = 0; i < c.guess_length; ++i)
    if (g.cells[i + 1] == 1) bits[i] = '1';
  return bits;
}

struct Explorer {
  const Program& program;
  std::uint64_t fuel;
  bool stop_at_accept;
  std::uint64_t branch_cap;
  std::atomic<std::uint64_t>& branches_started;
  std::atomic<bool>& stop;

  // Runs `c` until it halts, exhausts fuel, or needs a guess bit. Returns
  // true when it needs a guess bit.
  bool advance(Configuration& c) const {
    return detail::advance<false>(program, c, fuel) == detail::Pause::NeedsGuessBit;
  }

  void fork(Configuration& c, Configuration& other) const {
    if (branches_started.fetch_add(1) + 1 > branch_cap)
      throw CapExceeded("guess tree exceeds " + std::to_string(branch_cap) + " branches");
    Tape& g = c.tapes[*program.guess_tape()];
    other = c;
    g.cells[g.head] = 0;
    Tape& og = other.tapes[*program.guess_tape()];
    og.cells[og.head] = 1;
  }

  void leaf(const Configuration& c, GuessSearch& r, bool& exhausted) const {
    ++r.branches;
    r.max_steps = std::max(r.max_steps, c.steps_taken);
    r.max_guess_bits = std::max(r.max_guess_bits, c.guess_bits_consumed);
    if (c.state == program.accept()) {
      r.verdict = Verdict::Accept;
      if (!r.accepting_guess) r.accepting_guess = determined_guess(program, c);
      if (stop_at_accept) stop = true;
    } else if (!program.is_halting(c.state)) {
      exhausted = true;
    }
  }

  // Depth-first from `root`.
  void explore(Configuration root, GuessSearch& r, bool& exhausted) const {
    std::vector<Configuration> pending;
    pending.push_back(std::move(root));
    while (!pending.empty()) {
      if (stop.load(std::memory_order_relaxed)) return;
      Configuration c = std::move(pending.back());
      pending.pop_back();
      while (advance(c)) {
        Configuration other;
        fork(c, other);
        pending.push_back(std::move(other));
      }
      leaf(c, r, exhausted);
    }
  }
};

GuessSearch finish(GuessSearch r, bool exhausted) {
  if (r.verdict != Verdict::Accept) r.verdict = exhausted ? Verdict::Indeterminate : Verdict::Reject;
  return r;
}

}  // namespace

GuessSearch explore_guess_tree(const Program& program, std::string_view input,
                               std::size_t guess_length, std::uint64_t fuel, bool stop_at_accept,
                               std::uint64_t branch_cap) {
  if (fuel == 0) throw std::invalid_argument("fuel must be positive");
  std::atomic<std::uint64_t> started{1};
  std::atomic<bool> stop{false};
  Explorer ex{program, fuel, stop_at_accept, branch_cap, started, stop};
  GuessSearch r;
  bool exhausted = false;
  ex.explore(undetermined_start(program, input, guess_length), r, exhausted);
  return finish(std::move(r), exhausted);
}

GuessSearch explore_guess_tree_parallel(const Program& program, std::string_view input,
                                        std::size_t guess_length, std::uint64_t fuel,
                                        bool stop_at_accept, std::uint64_t branch_cap) {
  if (fuel == 0) throw std::invalid_argument("fuel must be positive");
  std::atomic<std::uint64_t> started{1};
  std::atomic<bool> stop{false};
  Explorer ex{program, fuel, stop_at_accept, branch_cap, started, stop};
  GuessSearch r;
  bool exhausted = false;

  // Breadth-first until the frontier is wide enough to share out.
  constexpr std::size_t kFrontier = 64;
  std::deque<Configuration> frontier;
  frontier.push_back(undetermined_start(program, input, guess_length));
  while (!frontier.empty() && frontier.size() < kFrontier && !stop) {
    Configuration c = std::move(frontier.front());
    frontier.pop_front();
    if (ex.advance(c)) {
      Configuration other;
      ex.fork(c, other);
      frontier.push_back(std::move(c));
      frontier.push_back(std::move(other));
    } else {
      ex.leaf(c, r, exhausted);
    }
  }
  if (stop) return finish(std::move(r), exhausted);

  std::vector<Configuration> roots(std::make_move_iterator(frontier.begin()),
                                   std::make_move_iterator(frontier.end()));
  std::vector<GuessSearch> partial(roots.size());
  std::vector<std::uint8_t> partial_exhausted(roots.size(), 0);
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::int64_t count = static_cast<std::int64_t>(roots.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      bool ex_flag = false;
      ex.explore(std::move(roots[i]), partial[i], ex_flag);
      partial_exhausted[i] = ex_flag;
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      stop = true;
    }
  }
  if (error) std::rethrow_exception(error);

  for (std::size_t i = 0; i < partial.size(); ++i) {
    const GuessSearch& p = partial[i];
    r.branches += p.branches;
    r.max_steps = std::max(r.max_steps, p.max_steps);
    r.max_guess_bits = std::max(r.max_guess_bits, p.max_guess_bits);
    if (p.verdict == Verdict::Accept) {
      r.verdict = Verdict::Accept;
      if (!r.accepting_guess) r.accepting_guess = p.accepting_guess;
    }
    exhausted |= partial_exhausted[i] != 0;
  }
  return finish(std::move(r), exhausted);
}

}  // namespace tmlab
