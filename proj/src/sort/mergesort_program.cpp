#include <set>
#include <utility>
#include <stdexcept>

#include "tmlab/tm_sort.hpp"

namespace tmlab {

namespace {

enum class Cmp { Equal, SourceLess, TargetLess };

Cmp next_cmp(Cmp c, Symbol s, Symbol t) {
  if (c != Cmp::Equal || s == t) return c;
  return s == Symbol::Zero ? Cmp::SourceLess : Cmp::TargetLess;
}

/// Advances `tapes` by count(counter) records, measured with `ruler`, then
/// rewinds the counter. The ruler ends rewound.
StateId skip_records(Assembler& a, StateId from, std::initializer_list<std::size_t> tapes,
                     std::size_t counter, std::size_t ruler) {
  StateId loop = a.state();
  StateId inner = a.state();
  StateId done = a.state();
  a.on(from, {}, {}, loop);
  a.on(loop, {is_blank(counter)}, {}, done);
  a.on(loop, {}, {}, inner);
  StateId measured = a.state();
  a.on(inner, {is_blank(ruler)}, {}, measured);
  std::vector<Op> ops{right(ruler)};
  for (std::size_t t : tapes) ops.push_back(right(t));
  a.on(inner, {}, ops, inner);
  StateId rewound = rewind(a, measured, ruler);
  a.on(rewound, {}, {right(counter)}, loop);
  return rewind(a, done, counter);
}

/// Copies a record from `src` to Result cell by cell while `ruler` is
/// non-blank, then rewinds the ruler.
StateId copy_record(Assembler& a, StateId from, std::size_t src, std::size_t result,
                    std::size_t ruler) {
  StateId done = a.state();
  a.on(from, {is_blank(ruler)}, {}, done);
  for (Symbol s : {Symbol::Zero, Symbol::One})
    a.on(from, {is(src, s)}, {right(src), right(ruler), put(result, s, Move::Right)}, from);
  return rewind(a, done, ruler);
}

}  // namespace

void SortLayout::validate() const {
  std::set<std::size_t> distinct{result, source, target, aux1, aux2, cs, ct};
  if (mask) distinct.insert(*mask);
  if (distinct.size() != (mask ? 8u : 7u)) throw std::invalid_argument("sort layout tapes must be distinct");
}

StateId emit_merge_stages(Assembler& a, StateId from, const SortLayout& t,
                          const SortOptions& options) {
  t.validate();
  const std::size_t res = t.result, src = t.source, tgt = t.target;
  const std::size_t x1 = t.aux1, x2 = t.aux2, cs = t.cs, ct = t.ct;

  StateId stage = a.state("stage-begin");
  a.mark(stage);
  a.on(from, {}, {}, stage);

  // Offset Target by one sublist; nothing left there means a single run.
  StateId offset = skip_records(a, stage, {tgt}, cs, x1);
  StateId sorted = a.state("sorted");
  StateId load = a.state("load-pair");
  a.on(offset, {is_blank(tgt)}, {}, sorted);
  a.on(offset, {}, {}, load);

  StateId merge_s = a.state("take-source");
  StateId merge_t = a.state("take-target");
  auto decide = [&](Cmp c) {
    const bool source_first = options.flip_compare ? c != Cmp::SourceLess : c != Cmp::TargetLess;
    return source_first ? merge_s : merge_t;
  };

  // Decision states after a fill: rewind both buffers, then take a side.
  StateId go_s = a.state(), go_t = a.state();
  for (auto [go_state, merge] : {std::pair{go_s, merge_s}, std::pair{go_t, merge_t}}) {
    StateId r = rewind_all(a, go_state, {x1, x2});
    if (t.mask) r = rewind(a, r, *t.mask);
    a.on(r, {}, {}, merge);
  }
  // Mask symbols a comparison step can see; without a mask every cell counts.
  const std::vector<Symbol> mask_syms =
      t.mask ? std::vector<Symbol>{Symbol::Zero, Symbol::One} : std::vector<Symbol>{Symbol::One};
  auto step_ops = [&](std::vector<Op> ops) {
    if (t.mask) ops.push_back(right(*t.mask));
    return ops;
  };
  auto conds = [&](std::vector<Cond> cs_, Symbol m) {
    if (t.mask) cs_.push_back(is(*t.mask, m));
    return cs_;
  };
  auto go = [&](Cmp c) { return decide(c) == merge_s ? go_s : go_t; };

  // Fill both buffers from Source and Target, comparing as they stream in.
  {
    std::vector<StateId> fill{a.state("fill-eq"), a.state("fill-s<t"), a.state("fill-s>t")};
    a.on(load, {}, {}, fill[0]);
    for (int c = 0; c < 3; ++c) {
      a.on(fill[c], {is_blank(x1)}, {}, go(static_cast<Cmp>(c)));
      for (Symbol m : mask_syms)
        for (Symbol s : {Symbol::Zero, Symbol::One})
          for (Symbol u : {Symbol::Zero, Symbol::One}) {
            Cmp n = m == Symbol::One ? next_cmp(static_cast<Cmp>(c), s, u) : static_cast<Cmp>(c);
            a.on(fill[c], conds({is(src, s), is(tgt, u)}, m),
                 step_ops({right(src), right(tgt), put(x1, s, Move::Right),
                           put(x2, u, Move::Right)}),
                 fill[static_cast<int>(n)]);
          }
    }
  }

  StateId pair_done = a.state("pair-done");

  // Emit the flagged buffer; then refill it or drain the other side.
  for (bool take_source : {true, false}) {
    const std::size_t mine = take_source ? x1 : x2;
    const std::size_t other = take_source ? x2 : x1;
    const std::size_t my_tape = take_source ? src : tgt;
    const std::size_t other_tape = take_source ? tgt : src;
    const std::size_t my_count = take_source ? cs : ct;
    const std::size_t other_count = take_source ? ct : cs;
    StateId entry = take_source ? merge_s : merge_t;

    StateId emitted = rewind(a, copy_run(a, entry, mine, {res}), mine);
    StateId check = a.state();
    a.on(emitted, {}, {right(my_count)}, check);

    StateId drain = a.state(take_source ? "drain-target" : "drain-source");
    StateId refill = a.state(take_source ? "refill-source" : "refill-target");
    a.on(check, {is_blank(my_count)}, {}, drain);
    a.on(check, {}, {}, refill);

    // Drain: the other buffer's record, then the rest of its block directly.
    StateId rest = a.state();
    a.on(rewind(a, copy_run(a, drain, other, {res}), other), {}, {right(other_count)}, rest);
    StateId one = a.state();
    a.on(rest, {is_blank(other_count)}, {}, pair_done);
    a.on(rest, {}, {}, one);
    StateId copied = copy_record(a, one, other_tape, res, other);
    a.on(copied, {}, {right(other_count)}, rest);

    // Refill: stream the next record in while comparing with the other buffer.
    std::vector<StateId> fill{refill, a.state(), a.state()};
    for (int c = 0; c < 3; ++c) {
      a.on(fill[c], {is_blank(mine)}, {}, go(static_cast<Cmp>(c)));
      for (Symbol m : mask_syms)
        for (Symbol s : {Symbol::Zero, Symbol::One})
          for (Symbol u : {Symbol::Zero, Symbol::One}) {
            // s is the incoming bit, u the other buffer's bit.
            Cmp n = m == Symbol::Zero    ? static_cast<Cmp>(c)
                    : take_source        ? next_cmp(static_cast<Cmp>(c), s, u)
                                         : next_cmp(static_cast<Cmp>(c), u, s);
            a.on(fill[c], conds({is(my_tape, s), is(other, u)}, m),
                 step_ops({right(my_tape), right(other), put(mine, s, Move::Right)}),
                 fill[static_cast<int>(n)]);
          }
    }
  }

  // Pair done: reset the counters; either start the next pair or end the stage.
  StateId counters = rewind_all(a, pair_done, {cs, ct});
  StateId stage_end = a.state("stage-end");
  StateId next_pair = a.state("next-pair");
  a.on(counters, {is_blank(tgt)}, {}, stage_end);
  a.on(counters, {}, {}, next_pair);
  StateId skipped = skip_records(a, next_pair, {src, tgt}, cs, x1);
  a.on(skipped, {}, {}, load);

  // Stage end: bring Source to the end, then walk all three back together
  // copying Result onto Source and Target.
  StateId at_end = skip_records(a, stage_end, {src}, cs, x1);
  StateId back = a.state("copy-back");
  StateId home = a.state();
  a.on(at_end, {}, {left(res), left(src), left(tgt)}, back);
  a.on(back, {is_blank(res)}, {right(res), right(src), right(tgt)}, home);
  for (Symbol s : {Symbol::Zero, Symbol::One})
    a.on(back, {is(res, s)}, {left(res), put(src, s, Move::Left), put(tgt, s, Move::Left)}, back);

  // Double the sublist length: CS := CS . CT, then CT := CS.
  StateId s = skip_run(a, home, cs);
  s = copy_run(a, s, ct, {cs});
  s = rewind_all(a, s, {cs, ct});
  s = copy_run(a, s, cs, {ct});
  s = rewind_all(a, s, {cs, ct});
  a.on(s, {}, {}, stage);

  return sorted;
}

Program build_mergesort_program(std::size_t m, std::size_t width, const SortOptions& options) {
  if (m == 0 || (m & (m - 1)) != 0)
    throw std::invalid_argument("mergesort program needs a power-of-two record count");
  if (width == 0) throw std::invalid_argument("key width must be positive");
  const std::size_t record = width + 1;
  SortLayout t;
  Assembler a({TapeRole::Input, TapeRole::Output, TapeRole::Work, TapeRole::Work, TapeRole::Work,
               TapeRole::Work, TapeRole::UnaryCounter, TapeRole::UnaryCounter});

  // Rulers of `record` ones on both buffers, written from the finite control.
  StateId start = a.state("rulers");
  StateId s = start;
  for (std::size_t i = 0; i < record; ++i)
    s = then(a, s, {put(t.aux1, Symbol::One, Move::Right), put(t.aux2, Symbol::One, Move::Right)});
  s = rewind_all(a, s, {t.aux1, t.aux2});
  s = then(a, s, {put(t.cs, Symbol::One), put(t.ct, Symbol::One)});
  s = copy_run(a, s, 0, {t.result, t.source, t.target});
  if (options.compare_bits > 0) {
    if (options.compare_bits > width) throw std::invalid_argument("compare_bits exceeds width");
    // The input tape is free once copied; it becomes the comparison mask.
    t.mask = 0;
    s = clear_run(a, s, 0);
    for (std::size_t i = 0; i < record; ++i)
      s = then(a, s, {put(0, i <= options.compare_bits ? Symbol::One : Symbol::Zero, Move::Right)});
  }
  s = rewind_all(a, s, {0, t.result, t.source, t.target});
  StateId done = emit_merge_stages(a, s, t, options);
  a.on(done, {}, {}, a.accept());
  return a.finish(start);
}

}  // namespace tmlab
