#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "tmlab/errors.hpp"
#include "tmlab/tm_sort.hpp"
#include "tmlab/witness.hpp"

namespace tmlab {

namespace {

std::string encode_records(const KeyList& list) {
  std::string bits;
  bits.reserve(list.keys.size() * list.width);
  for (std::uint64_t k : list.keys)
    for (std::size_t i = 0; i < list.width; ++i)
      bits.push_back(((k >> (list.width - 1 - i)) & 1u) ? '1' : '0');
  return bits;
}

std::vector<std::uint64_t> decode_records(const Tape& t, std::size_t count, std::size_t width) {
  std::vector<std::uint64_t> out(count, 0);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t i = 0; i < width; ++i)
      out[r] = 2 * out[r] + (t.at(1 + r * width + i) == Symbol::One ? 1 : 0);
  return out;
}

class StageRecorder : public RunObserver {
 public:
  StageRecorder(const SortLayout& layout, std::size_t count, std::size_t width, bool keep)
      : layout_(layout), count_(count), width_(width), keep_(keep) {}

  void on_marker(const Program&, const Configuration& c) override {
    Snapshot s{c.steps_taken, c.reversals[layout_.result], c.reversals[layout_.source],
               c.reversals[layout_.target], {}};
    if (keep_) s.result = decode_records(c.tapes[layout_.result], count_, width_);
    snapshots_.push_back(std::move(s));
  }

  std::vector<StageReport> stages() const {
    std::vector<StageReport> out;
    for (std::size_t i = 0; i + 1 < snapshots_.size(); ++i) {
      const Snapshot& a = snapshots_[i];
      const Snapshot& b = snapshots_[i + 1];
      StageReport r;
      r.stage_index = i;
      r.sublist_length = std::uint64_t{1} << i;
      r.steps = b.steps - a.steps;
      r.result_reversals = b.res - a.res;
      r.source_reversals = b.src - a.src;
      r.target_reversals = b.tgt - a.tgt;
      r.result_after = b.result;
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  struct Snapshot {
    std::uint64_t steps, res, src, tgt;
    std::vector<std::uint64_t> result;
  };
  SortLayout layout_;
  std::size_t count_, width_;
  bool keep_;
  std::vector<Snapshot> snapshots_;
};

}  // namespace

void KeyList::validate() const {
  if (width == 0 || width > 62) throw std::invalid_argument("key width must be in 1..62");
  for (std::uint64_t k : keys)
    if (k >> width) throw std::invalid_argument("key " + std::to_string(k) + " exceeds width");
}

KeyList pad_to_power_of_two(const KeyList& list) {
  list.validate();
  if (list.keys.empty()) throw std::invalid_argument("cannot pad an empty key list");
  KeyList out{list.keys, list.width + 1};
  std::size_t m = 1;
  while (m < list.keys.size()) m *= 2;
  out.keys.resize(m, std::uint64_t{1} << list.width);
  return out;
}

std::uint64_t default_sort_fuel(std::size_t m, std::size_t width) {
  std::size_t padded = 1;
  while (padded < m) padded *= 2;
  const std::uint64_t records = padded;
  const std::uint64_t r = width + 1;
  const std::uint64_t stages = floor_log2(padded);
  return 4 * (8 * records * r * (stages + 1) + 4 * r * r + 64);
}

SortRun tm_sort(const KeyList& list, std::optional<std::uint64_t> fuel, const SortOptions& options,
                bool keep_stage_contents) {
  KeyList padded = pad_to_power_of_two(list);
  const std::size_t m = padded.keys.size();
  Program p = build_mergesort_program(m, list.width, options);
  const std::uint64_t budget = fuel.value_or(default_sort_fuel(list.keys.size(), list.width));

  SortLayout layout;
  StageRecorder recorder(layout, m, padded.width, keep_stage_contents);
  auto c = initial_configuration(p, encode_records(padded), "");
  RunStats stats = run_from(p, *c, budget, &recorder);
  if (stats.outcome == Outcome::FuelExhausted)
    throw FuelExhausted("mergesort of " + std::to_string(list.keys.size()) +
                        " keys exceeded its fuel of " + std::to_string(budget) + " steps");
  if (stats.outcome != Outcome::Accept)
    throw std::runtime_error("mergesort program rejected: " + stats.diagnostic);

  SortRun out;
  out.stats = std::move(stats);
  out.stages = recorder.stages();
  out.sorted.width = list.width;
  const std::uint64_t sentinel = std::uint64_t{1} << list.width;
  for (std::uint64_t k : decode_records(c->tapes[layout.result], m, padded.width))
    if (k != sentinel) out.sorted.keys.push_back(k);
  return out;
}

KeyList random_keys(std::uint64_t seed, std::size_t m, std::size_t width) {
  std::mt19937_64 rng(seed);
  KeyList l{{}, width};
  const std::uint64_t mask = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  for (std::size_t i = 0; i < m; ++i) l.keys.push_back(rng() & mask);
  return l;
}

namespace {

FitPoint measure_point(std::size_t m, std::size_t width, std::uint64_t seed) {
  KeyList keys = random_keys(seed ^ (m * 0x9e3779b97f4a7c15ull) ^ width, m, width);
  SortRun r = tm_sort(keys);
  FitPoint p;
  p.params = {{"m", m}, {"width", width}};
  p.steps = r.stats.steps;
  p.model = static_cast<double>(m) * static_cast<double>(floor_log2(m)) * static_cast<double>(width);
  return p;
}

void check_grid(const std::vector<std::pair<std::size_t, std::size_t>>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty sort grid");
  for (auto [m, width] : grid)
    if (m < 2 || (m & (m - 1)) != 0 || width == 0)
      throw std::invalid_argument("grid point m=" + std::to_string(m) + " width=" +
                                  std::to_string(width) + " is not a power of two m >= 2");
}

}  // namespace

FitResult verify_step_bound_serial(const std::vector<std::pair<std::size_t, std::size_t>>& grid,
                                   std::uint64_t seed) {
  check_grid(grid);
  std::vector<FitPoint> points;
  for (auto [m, width] : grid) points.push_back(measure_point(m, width, seed));
  return make_fit("m*lg(m)*width", std::move(points));
}

FitResult verify_step_bound(const std::vector<std::pair<std::size_t, std::size_t>>& grid,
                            std::uint64_t seed) {
  check_grid(grid);
  std::vector<FitPoint> points(grid.size());
  std::vector<std::string> errors(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      points[i] = measure_point(grid[i].first, grid[i].second, seed);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("grid point m=" + std::to_string(grid[i].first) +
                               " width=" + std::to_string(grid[i].second) + ": " + errors[i]);
  return make_fit("m*lg(m)*width", std::move(points));
}

std::vector<std::pair<std::size_t, std::size_t>> default_sort_grid() {
  std::vector<std::pair<std::size_t, std::size_t>> g;
  for (std::size_t m = 8; m <= 1024; m *= 2)
    for (std::size_t w : {8, 16, 32}) g.emplace_back(m, w);
  return g;
}

}  // namespace tmlab
