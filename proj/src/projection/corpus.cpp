#include "tmlab/corpus.hpp"

#include <stdexcept>

#include "tmlab/assembler.hpp"

namespace tmlab {

namespace {

constexpr std::size_t kIn = 0, kB = 1, kX = 2, kU = 2, kT = 3;

const std::vector<TapeRole> kSplitRoles{TapeRole::Input, TapeRole::UnaryCounter, TapeRole::Work};

Assembler split_assembler(const WitnessSizeFn& w, std::vector<TapeRole> roles = kSplitRoles) {
  Assembler a(std::move(roles));
  a.add_preload({kB, PreloadKind::PrefixLength, w});
  return a;
}

/// Moves the input head over x; optionally copies x onto `copy`.
StateId over_x(Assembler& a, StateId from, int copy = -1) {
  StateId out = a.state("x-done");
  a.on(from, {is_blank(kB)}, {}, out);
  for (Symbol s : {Symbol::Zero, Symbol::One}) {
    if (copy < 0)
      a.on(from, {is(kIn, s)}, {right(kIn), right(kB)}, from);
    else
      a.on(from, {is(kIn, s)},
           {right(kIn), right(kB), put(static_cast<std::size_t>(copy), s, Move::Right)}, from);
  }
  return out;
}

/// Walks y on the input against tape X (moving `xmove`), rejecting on the
/// first pair where `ok` fails; accepts when y ends.
void compare_y(Assembler& a, StateId from, Move xmove, bool (*ok)(Symbol y, Symbol x)) {
  a.on(from, {is_blank(kIn)}, {}, a.accept());
  for (Symbol y : {Symbol::Zero, Symbol::One})
    for (Symbol x : {Symbol::Zero, Symbol::One, Symbol::Blank})
      if (ok(y, x)) a.on(from, {is(kIn, y), is(kX, x)}, {right(kIn), {kX, Write::Keep, xmove}}, from);
  a.on(from, {}, {}, a.reject());
}

Program equal_decider() {
  Assembler a = split_assembler(WitnessSizeFn::identity());
  StateId start = a.state("copy-x");
  StateId s = rewind(a, over_x(a, start, kX), kX);
  compare_y(a, s, Move::Right, [](Symbol y, Symbol x) { return y == x; });
  return a.finish(start);
}

Program complement_decider() {
  Assembler a = split_assembler(WitnessSizeFn::identity());
  StateId start = a.state("copy-x");
  StateId s = rewind(a, over_x(a, start, kX), kX);
  compare_y(a, s, Move::Right,
            [](Symbol y, Symbol x) { return x != Symbol::Blank && y != x; });
  return a.finish(start);
}

Program reverse_decider() {
  Assembler a = split_assembler(WitnessSizeFn::identity());
  StateId start = a.state("copy-x");
  StateId s = then(a, over_x(a, start, kX), {left(kX)});
  compare_y(a, s, Move::Left, [](Symbol y, Symbol x) { return y == x; });
  return a.finish(start);
}

Program prefix_half_decider() {
  Assembler a = split_assembler(WitnessSizeFn::affine(1, 2, 0));
  StateId start = a.state("copy-x");
  StateId s = rewind(a, over_x(a, start, kX), kX);
  compare_y(a, s, Move::Right, [](Symbol y, Symbol x) { return y == x; });
  return a.finish(start);
}

Program submask_decider() {
  Assembler a = split_assembler(WitnessSizeFn::identity());
  StateId start = a.state("copy-x");
  StateId none = rewind(a, over_x(a, start, kX), kX);
  StateId seen = a.state("seen-one");
  for (StateId s : {none, seen}) {
    a.on(s, {is_blank(kIn)}, {}, s == seen ? a.accept() : a.reject());
    a.on(s, {is(kIn, Symbol::One), is(kX, Symbol::One)}, {right(kIn), right(kX)}, seen);
    a.on(s, {is(kIn, Symbol::Zero)}, {right(kIn), right(kX)}, s);
    a.on(s, {}, {}, a.reject());
  }
  return a.finish(start);
}

Program single_one_decider() {
  Assembler a = split_assembler(WitnessSizeFn::constant(1));
  StateId start = a.state("skip-x");
  StateId s = over_x(a, start);
  StateId check_end = a.state();
  a.on(s, {is(kIn, Symbol::One)}, {right(kIn)}, check_end);
  a.on(s, {}, {}, a.reject());
  a.on(check_end, {is_blank(kIn)}, {}, a.accept());
  a.on(check_end, {}, {}, a.reject());
  return a.finish(start);
}

Program parity_decider() {
  Assembler a = split_assembler(WitnessSizeFn::constant(1));
  StateId even = a.state("even");
  StateId odd = a.state("odd");
  for (StateId s : {even, odd}) {
    StateId other = s == even ? odd : even;
    StateId at_y = a.state();
    a.on(s, {is_blank(kB)}, {}, at_y);
    a.on(s, {is(kIn, Symbol::Zero)}, {right(kIn), right(kB)}, s);
    a.on(s, {is(kIn, Symbol::One)}, {right(kIn), right(kB)}, other);
    a.on(at_y, {is(kIn, s == even ? Symbol::Zero : Symbol::One)}, {}, a.accept());
    a.on(at_y, {}, {}, a.reject());
  }
  return a.finish(even);
}

Program even_length_decider() {
  Assembler a({TapeRole::Input});
  StateId even = a.state("even");
  StateId odd = a.state("odd");
  a.on(even, {is_blank(kIn)}, {}, a.accept());
  a.on(even, {}, {right(kIn)}, odd);
  a.on(odd, {is_blank(kIn)}, {}, a.reject());
  a.on(odd, {}, {right(kIn)}, even);
  return a.finish(even);
}

Program reject_all_decider() {
  Assembler a({TapeRole::Input});
  StateId start = a.state("start");
  a.on(start, {}, {}, a.reject());
  return a.finish(start);
}

/// Reads y as a binary index i (most significant bit first) and accepts iff
/// i < |x| and bit i of x is 1. U holds i in unary; T is doubling scratch.
Program index_of_one_decider() {
  Assembler a = split_assembler(
      WitnessSizeFn::ceil_lg(0),
      {TapeRole::Input, TapeRole::UnaryCounter, TapeRole::UnaryCounter, TapeRole::Work});
  StateId start = a.state("skip-x");
  StateId bit = over_x(a, start);
  StateId walk_start = a.state();
  a.on(bit, {is_blank(kIn)}, {}, walk_start);
  for (Symbol b : {Symbol::Zero, Symbol::One}) {
    StateId dbl = a.state(b == Symbol::One ? "double-plus-one" : "double");
    a.on(bit, {is(kIn, b)}, {right(kIn)}, dbl);
    StateId s = copy_run(a, dbl, kU, {kT});
    s = rewind(a, s, kT);
    s = copy_run(a, s, kT, {kU});
    if (b == Symbol::One) s = then(a, s, {put(kU, Symbol::One, Move::Right)});
    s = rewind(a, s, kU);
    s = clear_run(a, s, kT);
    a.on(s, {}, {}, bit);
  }
  StateId walk = rewind_all(a, walk_start, {kIn, kB});
  a.on(walk, {is_blank(kU), is(kB, Symbol::One), is(kIn, Symbol::One)}, {}, a.accept());
  a.on(walk, {is_blank(kU)}, {}, a.reject());
  a.on(walk, {is_blank(kB)}, {}, a.reject());
  a.on(walk, {}, {right(kIn), right(kB), right(kU)}, walk);
  return a.finish(start);
}

std::size_t binary_value(const std::string& y) {
  std::size_t v = 0;
  for (char c : y) v = 2 * v + (c == '1');
  return v;
}

}  // namespace

std::vector<CorpusMachine> decider_corpus() {
  std::vector<CorpusMachine> c;
  c.push_back({"equal", WitnessSizeFn::identity(), equal_decider(),
               [](const std::string& x, const std::string& y) { return x == y; }});
  c.push_back({"complement", WitnessSizeFn::identity(), complement_decider(),
               [](const std::string& x, const std::string& y) {
                 if (x.size() != y.size()) return false;
                 for (std::size_t i = 0; i < x.size(); ++i)
                   if (x[i] == y[i]) return false;
                 return true;
               }});
  c.push_back({"reverse", WitnessSizeFn::identity(), reverse_decider(),
               [](const std::string& x, const std::string& y) {
                 return std::string(x.rbegin(), x.rend()) == y;
               }});
  c.push_back({"index-of-one", WitnessSizeFn::ceil_lg(0), index_of_one_decider(),
               [](const std::string& x, const std::string& y) {
                 std::size_t i = binary_value(y);
                 return i < x.size() && x[i] == '1';
               }});
  c.push_back({"witness-is-one", WitnessSizeFn::constant(1), single_one_decider(),
               [](const std::string&, const std::string& y) { return y == "1"; }});
  c.push_back({"parity", WitnessSizeFn::constant(1), parity_decider(),
               [](const std::string& x, const std::string& y) {
                 std::size_t ones = 0;
                 for (char ch : x) ones += ch == '1';
                 return y == std::string(1, ones % 2 ? '1' : '0');
               }});
  c.push_back({"even-length", WitnessSizeFn::constant(0), even_length_decider(),
               [](const std::string& x, const std::string& y) {
                 return (x.size() + y.size()) % 2 == 0;
               }});
  c.push_back({"reject-all", WitnessSizeFn::constant(2), reject_all_decider(),
               [](const std::string&, const std::string&) { return false; }});
  c.push_back({"prefix-half", WitnessSizeFn::affine(1, 2, 0), prefix_half_decider(),
               [](const std::string& x, const std::string& y) {
                 return x.substr(0, x.size() / 2) == y;
               }});
  c.push_back({"submask", WitnessSizeFn::identity(), submask_decider(),
               [](const std::string& x, const std::string& y) {
                 if (x.size() != y.size()) return false;
                 bool any = false;
                 for (std::size_t i = 0; i < x.size(); ++i) {
                   if (y[i] == '1' && x[i] != '1') return false;
                   any |= y[i] == '1';
                 }
                 return any;
               }});
  return c;
}

CorpusMachine corpus_machine(std::string_view name) {
  for (CorpusMachine& m : decider_corpus())
    if (m.name == name) return m;
  throw std::out_of_range("no corpus machine named '" + std::string(name) + "'");
}

Program guess_equals_input_checker() {
  Assembler a({TapeRole::Input, TapeRole::Guess});
  StateId start = a.state("compare");
  a.on(start, {is_blank(0)}, {}, a.accept());
  for (Symbol s : {Symbol::Zero, Symbol::One})
    a.on(start, {is(0, s), is(1, s)}, {right(0), right(1)}, start);
  a.on(start, {}, {}, a.reject());
  return a.finish(start);
}

Verdict tiwi_member_desk(const Program& decider, const WitnessSizeFn& w, std::string_view x,
                         std::uint64_t fuel) {
  return accept_exists_witness(decider, x, w(x.size()), fuel);
}

}  // namespace tmlab
