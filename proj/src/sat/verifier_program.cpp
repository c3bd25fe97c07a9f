#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "tmlab/codec.hpp"
#include "tmlab/sat.hpp"
#include "tmlab/tm_sort.hpp"

namespace tmlab {

namespace {

using namespace sat_tapes;

constexpr Symbol kBits[] = {Symbol::Zero, Symbol::One};

enum class Cmp { Equal, Less, Greater };

Cmp refine(Cmp c, Symbol left, Symbol right) {
  if (c != Cmp::Equal || left == right) return c;
  return left == Symbol::Zero ? Cmp::Less : Cmp::Greater;
}

class VerifierBuilder {
 public:
  VerifierBuilder()
      : a_({TapeRole::Input, TapeRole::Output, TapeRole::Work, TapeRole::Work, TapeRole::Work,
            TapeRole::Work, TapeRole::UnaryCounter, TapeRole::UnaryCounter, TapeRole::Guess,
            TapeRole::UnaryCounter, TapeRole::Work, TapeRole::Work, TapeRole::UnaryCounter,
            TapeRole::UnaryCounter, TapeRole::Work, TapeRole::Work}) {}

  Program build() {
    StateId start = a_.state("prefix");
    StateId s = parse_prefix(start);
    s = validate(s);
    s = annotate(s);
    s = pad(s);
    s = emit_merge_stages(a_, s, SortLayout{});
    s = substitute(s);
    s = regroup(s);
    s = emit_merge_stages(a_, s, SortLayout{});
    scan_clauses(s);
    return a_.finish(start);
  }

 private:
  StateId fresh(std::string label = {}) { return a_.state(std::move(label)); }

  StateId diag(CodecError e) { return diag(std::string(to_string(e))); }
  StateId diag(const std::string& name) {
    auto it = diags_.find(name);
    if (it != diags_.end()) return it->second;
    StateId d = a_.state("diag:" + name);
    a_.on(d, {}, {}, a_.reject());
    return diags_.emplace(name, d).first->second;
  }

  void on(StateId from, std::vector<Cond> when, std::vector<Op> ops, StateId to) {
    a_.on(from, when, ops, to);
  }

  // Unary k onto the width tape, then v in k bits onto the bound tape.
  StateId parse_prefix(StateId start) {
    const StateId trunc = diag(CodecError::TruncatedRecord);
    on(start, {is(input, Symbol::Zero)}, {}, diag(CodecError::ZeroWidth));
    on(start, {is_blank(input)}, {}, trunc);
    StateId unary = fresh();
    on(start, {}, {}, unary);
    StateId sep = fresh();
    on(unary, {is(input, Symbol::One)}, {right(input), put(width, Symbol::One, Move::Right)}, unary);
    on(unary, {is(input, Symbol::Zero)}, {right(input)}, sep);
    on(unary, {is_blank(input)}, {}, trunc);

    StateId first = rewind(a_, sep, width);
    StateId copy = fresh();
    on(first, {is(input, Symbol::Zero)}, {}, diag(CodecError::NonCanonicalWidth));
    on(first, {is_blank(input)}, {}, trunc);
    on(first, {}, {}, copy);
    StateId done = fresh();
    on(copy, {is_blank(width)}, {}, done);
    on(copy, {is_blank(input)}, {}, trunc);
    for (Symbol b : kBits)
      on(copy, {is(input, b)}, {right(input), right(width), put(bound, b, Move::Right)}, copy);
    return rewind_all(a_, done, {width, bound});
  }

  // Checks every record against v and counts clauses, in binary with the
  // least significant bit first, on the clause tape.
  StateId validate(StateId from) {
    enum Ctx { NoneYet, ClauseStart, InClause };
    StateId rec[3] = {fresh("check-record"), fresh(), fresh()};
    on(from, {}, {}, rec[NoneYet]);
    StateId done = fresh("checked");
    on(rec[NoneYet], {is_blank(input)}, {}, diag(CodecError::EmptyFormula));
    on(rec[ClauseStart], {is_blank(input)}, {}, done);
    on(rec[InClause], {is_blank(input)}, {}, diag(CodecError::MissingTerminator));

    StateId clause_end = fresh();
    StateId literal_end = fresh();
    std::map<std::tuple<int, int, bool, bool>, StateId> body;
    auto body_state = [&](int sign, Cmp c, bool zero, bool open) {
      auto key = std::make_tuple(sign, static_cast<int>(c), zero, open);
      auto it = body.find(key);
      if (it != body.end()) return it->second;
      StateId s = fresh();
      body.emplace(key, s);
      return s;
    };
    for (int ctx = 0; ctx < 3; ++ctx)
      for (int sign = 0; sign < 2; ++sign)
        on(rec[ctx], {is(input, kBits[sign])}, {right(input)},
           body_state(sign, Cmp::Equal, true, ctx == InClause));

    // Expand body states until closed.
    std::vector<std::tuple<int, Cmp, bool, bool>> work;
    for (int sign = 0; sign < 2; ++sign)
      for (bool open : {false, true}) work.emplace_back(sign, Cmp::Equal, true, open);
    std::map<std::tuple<int, int, bool, bool>, bool> expanded;
    while (!work.empty()) {
      auto [sign, c, zero, open] = work.back();
      work.pop_back();
      auto key = std::make_tuple(sign, static_cast<int>(c), zero, open);
      if (expanded[key]) continue;
      expanded[key] = true;
      StateId s = body_state(sign, c, zero, open);
      StateId target;
      if (zero)
        target = sign ? diag(CodecError::BadTerminator)
                      : open ? clause_end : diag(CodecError::EmptyClause);
      else
        target = c == Cmp::Greater ? diag(CodecError::IndexOutOfRange) : literal_end;
      on(s, {is_blank(width)}, {}, target);
      on(s, {is_blank(input)}, {}, diag(CodecError::TruncatedRecord));
      for (Symbol b : kBits)
        for (Symbol vb : kBits) {
          const Cmp n = refine(c, b, vb);
          const bool z = zero && b == Symbol::Zero;
          on(s, {is(input, b), is(bound, vb)}, {right(input), right(width), right(bound)},
             body_state(sign, n, z, open));
          work.emplace_back(sign, n, z, open);
        }
    }

    StateId inc = rewind_all(a_, clause_end, {width, bound});
    StateId carried = fresh();
    on(inc, {is(clause, Symbol::One)}, {put(clause, Symbol::Zero, Move::Right)}, inc);
    on(inc, {}, {put(clause, Symbol::One)}, carried);
    on(rewind(a_, carried, clause), {}, {}, rec[ClauseStart]);
    on(rewind_all(a_, literal_end, {width, bound}), {}, {}, rec[InClause]);
    return rewind(a_, done, input);
  }

  // Writes one record per literal onto Result: flag 0, variable (k bits),
  // clause tag (the clause tape's width), sign. Also counts literals in unary.
  StateId annotate(StateId from) {
    StateId zeroing = fresh("annotate");
    on(from, {}, {}, zeroing);
    StateId zeroed = fresh();
    on(zeroing, {is_blank(clause)}, {}, zeroed);
    on(zeroing, {}, {put(clause, Symbol::Zero, Move::Right)}, zeroing);
    StateId skip_ones = rewind(a_, zeroed, clause);
    StateId skip_v = fresh();
    on(skip_ones, {is(input, Symbol::One)}, {right(input)}, skip_ones);
    on(skip_ones, {}, {right(input)}, skip_v);
    StateId skipped = fresh();
    on(skip_v, {is_blank(width)}, {}, skipped);
    on(skip_v, {}, {right(input), right(width)}, skip_v);

    StateId rec = rewind(a_, skipped, width);
    StateId done = fresh("annotated");
    on(rec, {is_blank(input)}, {}, done);
    for (int sign = 0; sign < 2; ++sign) {
      StateId idx[2] = {fresh(), fresh()};  // [0]: all index bits so far zero
      on(rec, {is(input, kBits[sign])}, {right(input)}, idx[0]);
      for (int z = 0; z < 2; ++z) {
        StateId end = fresh();
        on(idx[z], {is_blank(width)}, {}, end);
        for (Symbol b : kBits)
          on(idx[z], {is(input, b)}, {right(input), right(width), put(scratch, b, Move::Right)},
             idx[z == 0 && b == Symbol::Zero ? 0 : 1]);
        StateId after = rewind_all(a_, end, {width, scratch});
        if (z == 0) {
          // Terminator: next clause tag.
          StateId carried = fresh();
          on(after, {is(clause, Symbol::One)}, {put(clause, Symbol::Zero, Move::Right)}, after);
          on(after, {}, {put(clause, Symbol::One)}, carried);
          on(rewind(a_, carried, clause), {}, {}, rec);
        } else {
          StateId s = then(a_, after, {put(result, Symbol::Zero, Move::Right)});
          s = rewind(a_, copy_run(a_, s, scratch, {result}), scratch);
          s = rewind(a_, copy_run(a_, s, clause, {result}), clause);
          s = then(a_, s,
                   {put(result, kBits[sign], Move::Right), put(count, Symbol::One, Move::Right)});
          on(s, {}, {}, rec);
        }
      }
    }
    return done;
  }

  // Rulers of one record on both buffers, then sentinels up to the next
  // power of two, then Source and Target as copies of Result.
  StateId pad(StateId from) {
    StateId s = then(a_, from, {put(aux1, Symbol::One, Move::Right), put(aux2, Symbol::One, Move::Right)},
                     "pad");
    s = rewind(a_, copy_run(a_, s, width, {aux1, aux2}), width);
    s = rewind(a_, copy_run(a_, s, clause, {aux1, aux2}), clause);
    s = then(a_, s, {put(aux1, Symbol::One, Move::Right), put(aux2, Symbol::One, Move::Right)});
    s = rewind_all(a_, s, {aux1, aux2, count});
    s = then(a_, s, {put(power, Symbol::One)});

    StateId cmp = fresh("grow-power");
    on(s, {}, {}, cmp);
    StateId grow = fresh();
    StateId enough = fresh();
    on(cmp, {is_blank(power), is_blank(count)}, {}, enough);
    on(cmp, {is_blank(power)}, {}, grow);
    on(cmp, {is_blank(count)}, {}, enough);
    on(cmp, {}, {right(power), right(count)}, cmp);
    // Double: power -> index, then index appended to power.
    StateId g = rewind_all(a_, grow, {power, count});
    g = copy_run(a_, fresh_after(g), power, {index});
    g = rewind(a_, g, index);
    g = copy_run(a_, fresh_after(g), index, {power});
    g = clear_run(a_, fresh_after(g), index);
    on(rewind(a_, g, power), {}, {}, cmp);

    StateId fill = fresh("sentinels");
    on(rewind_all(a_, enough, {power, count}), {}, {}, fill);
    StateId filled = fresh();
    StateId sentinel = fresh();
    on(fill, {is_blank(count), is_blank(power)}, {}, filled);
    on(fill, {is_blank(count)}, {put(result, Symbol::One, Move::Right), right(aux1)}, sentinel);
    on(fill, {}, {right(power), right(count)}, fill);
    StateId written = fresh();
    on(sentinel, {is_blank(aux1)}, {}, written);
    on(sentinel, {}, {put(result, Symbol::Zero, Move::Right), right(aux1)}, sentinel);
    on(rewind(a_, written, aux1), {}, {right(power)}, fill);

    StateId c = rewind_all(a_, filled, {power, count, result});
    c = copy_run(a_, fresh_after(c), result, {source, target});
    c = rewind_all(a_, c, {result, source, target});
    return then(a_, c, {put(cs, Symbol::One), put(ct, Symbol::One)});
  }

  StateId fresh_after(StateId s) {
    StateId t = fresh();
    on(s, {}, {}, t);
    return t;
  }

  // Result holds records sorted by variable. The index tape counts which
  // variable sits under the guess head; each record's sign bit becomes the
  // literal's value.
  StateId substitute(StateId from) {
    StateId init = fresh("substitute");
    on(from, {}, {}, init);
    StateId last = fresh();
    on(init, {is_blank(width)}, {left(index)}, last);
    on(init, {}, {put(index, Symbol::Zero, Move::Right), right(width)}, init);
    StateId rec = rewind_all(a_, then(a_, last, {put(index, Symbol::One)}), {index, width});

    StateId tail = fresh("consume-rest");
    StateId var_cmp[3] = {fresh(), fresh(), fresh()};
    on(rec, {is_blank(result)}, {}, tail);
    on(rec, {is(result, Symbol::One)}, {}, tail);
    on(rec, {}, {right(result)}, var_cmp[0]);

    StateId equal = fresh("value");
    StateId greater = fresh();
    for (int c = 0; c < 3; ++c) {
      on(var_cmp[c], {is_blank(index)}, {},
         c == 0 ? equal : c == 2 ? greater : diag("unsorted-variables"));
      for (Symbol r : kBits)
        for (Symbol j : kBits)
          on(var_cmp[c], {is(result, r), is(index, j)}, {right(result), right(index)},
             var_cmp[static_cast<int>(refine(static_cast<Cmp>(c), r, j))]);
    }

    // Equal: skip the tag, then value = sign xor guess.
    StateId tag = fresh();
    on(equal, {}, {}, tag);
    StateId sign = fresh("read-guess");
    on(tag, {is_blank(clause)}, {}, sign);
    on(tag, {}, {right(result), right(clause)}, tag);
    StateId valued = fresh();
    for (Symbol s : kBits)
      for (Symbol g : kBits)
        on(sign, {is(result, s), is(guess, g)},
           {put(result, s == g ? Symbol::Zero : Symbol::One, Move::Right)}, valued);
    on(rewind_all(a_, valued, {clause, index}), {}, {}, rec);

    // Greater: back to the record start, then advance to the next variable.
    StateId back = fresh();
    on(greater, {}, {left(index), left(result)}, back);
    StateId home = fresh();
    on(back, {is_blank(index)}, {right(index)}, home);
    on(back, {}, {left(index), left(result)}, back);
    on(increment_index(home), {}, {right(guess)}, rec);

    // Walk the guess head past variable v.
    StateId cmp_v = rewind(a_, tail, result);
    StateId at_v = fresh();
    StateId before_v = fresh();
    on(cmp_v, {is_blank(index)}, {}, at_v);
    for (Symbol b : kBits) on(cmp_v, {is(index, b), is(bound, b)}, {right(index), right(bound)}, cmp_v);
    on(cmp_v, {}, {}, before_v);
    StateId next = rewind_all(a_, before_v, {index, bound});
    StateId loop = fresh();
    on(increment_index(next), {}, {right(guess)}, loop);
    on(loop, {}, {}, cmp_v);
    return then(a_, rewind_all(a_, at_v, {index, bound}), {right(guess)});
  }

  // Binary increment of the index tape, most significant bit first. Returns
  // with the head rewound.
  StateId increment_index(StateId from) {
    StateId end = skip_run(a_, fresh_after(from), index);
    StateId carry = fresh();
    on(end, {}, {left(index)}, carry);
    StateId done = fresh();
    on(carry, {is(index, Symbol::One)}, {put(index, Symbol::Zero, Move::Left)}, carry);
    on(carry, {is(index, Symbol::Zero)}, {put(index, Symbol::One)}, done);
    on(carry, {}, {}, diag("index-overflow"));
    return rewind(a_, done, index);
  }

  // Rewrites flag.var.tag.value records as flag.tag.var.value on Source,
  // then copies them to Result and Target for the second sort.
  StateId regroup(StateId from) {
    StateId rec = fresh("regroup");
    on(rewind(a_, from, target), {}, {}, rec);
    StateId done = fresh();
    StateId var = fresh();
    on(rec, {is_blank(result)}, {}, done);
    for (Symbol b : kBits) on(rec, {is(result, b)}, {right(result), put(source, b, Move::Right)}, var);
    StateId var_done = fresh();
    on(var, {is_blank(width)}, {}, var_done);
    for (Symbol b : kBits)
      on(var, {is(result, b)}, {right(result), right(width), put(scratch, b, Move::Right)}, var);
    StateId tag = fresh();
    on(rewind_all(a_, var_done, {width, scratch}), {}, {}, tag);
    StateId tag_done = fresh();
    on(tag, {is_blank(clause)}, {}, tag_done);
    for (Symbol b : kBits)
      on(tag, {is(result, b)}, {right(result), right(clause), put(source, b, Move::Right)}, tag);
    StateId s = rewind(a_, tag_done, clause);
    s = rewind(a_, copy_run(a_, fresh_after(s), scratch, {source}), scratch);
    for (Symbol b : kBits) on(s, {is(result, b)}, {right(result), put(source, b, Move::Right)}, rec);

    StateId c = rewind_all(a_, done, {result, source});
    c = copy_run(a_, fresh_after(c), source, {result, target});
    c = rewind_all(a_, c, {result, source, target});
    c = clear_run(a_, fresh_after(c), cs);
    c = clear_run(a_, fresh_after(c), ct);
    return then(a_, c, {put(cs, Symbol::One), put(ct, Symbol::One)});
  }

  // Result holds records grouped by clause tag. A clause group with no true
  // value rejects as soon as the group ends.
  void scan_clauses(StateId from) {
    enum Group { NoGroup, Unsatisfied, Satisfied };
    StateId start = clear_run(a_, fresh_after(from), scratch);
    StateId rec[3] = {fresh("scan"), fresh(), fresh()};
    on(start, {}, {}, rec[NoGroup]);
    StateId unsat = fresh("unsatisfied-clause");
    on(unsat, {}, {}, a_.reject());
    for (int g : {Unsatisfied, Satisfied}) {
      const StateId end = g == Satisfied ? a_.accept() : unsat;
      on(rec[g], {is_blank(result)}, {}, end);
      on(rec[g], {is(result, Symbol::One)}, {}, end);
    }
    // Compare the tag with the previous one while overwriting it.
    StateId value_bit[2] = {fresh(), fresh()};  // group state before the value: unsat, sat
    for (int g = 0; g < 3; ++g) {
      StateId tag[2] = {fresh(), fresh()};  // [1]: same tag so far
      const bool any_prev = g != NoGroup;
      if (g != NoGroup)
        on(rec[g], {is(result, Symbol::Zero)}, {right(result)}, tag[1]);
      else
        on(rec[g], {is(result, Symbol::Zero)}, {right(result)}, tag[0]);
      for (int same = 0; same < 2; ++same) {
        StateId end = fresh();
        on(tag[same], {is_blank(clause)}, {}, end);
        for (Symbol r : kBits)
          for (Symbol q : {Symbol::Zero, Symbol::One, Symbol::Blank}) {
            const bool still = same == 1 && q == r;
            on(tag[same], {is(result, r), is(scratch, q)},
               {right(result), right(clause), put(scratch, r, Move::Right)}, tag[still ? 1 : 0]);
          }
        StateId after = rewind_all(a_, end, {clause, scratch});
        int group = same ? g : Unsatisfied;
        if (!same && any_prev && g == Unsatisfied) {
          on(after, {}, {}, unsat);
          continue;
        }
        StateId skip = fresh();
        on(after, {}, {}, skip);
        StateId val = fresh();
        on(skip, {is_blank(width)}, {}, val);
        on(skip, {}, {right(result), right(width)}, skip);
        on(rewind(a_, val, width), {}, {}, value_bit[group == Satisfied ? 1 : 0]);
      }
    }
    on(rec[NoGroup], {}, {}, diag("no-literals"));
    for (int g = 0; g < 2; ++g) {
      on(value_bit[g], {is(result, Symbol::One)}, {right(result)}, rec[Satisfied]);
      on(value_bit[g], {is(result, Symbol::Zero)}, {right(result)},
         rec[g == 1 ? Satisfied : Unsatisfied]);
    }
  }

  Assembler a_;
  std::map<std::string, StateId> diags_;
};

}  // namespace

std::size_t annotated_bits(const CnfFormula& f) {
  // The clause tag is as wide as the clause count in binary.
  const std::size_t tag = std::bit_width(f.clauses.size());
  return f.literal_count() * (2 + index_width(f.variable_count) + tag);
}

Program build_sat_verifier_program(std::size_t n) {
  if (n < kMinEncodedLength)
    throw std::invalid_argument("no formula encodes in fewer than " +
                                std::to_string(kMinEncodedLength) + " bits");
  return VerifierBuilder().build();
}

const Program& sat_verifier_program() {
  static const Program p = build_sat_verifier_program(kMinEncodedLength);
  return p;
}

}  // namespace tmlab
