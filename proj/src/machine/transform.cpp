#include "tmlab/transform.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmlab/assembler.hpp"

namespace tmlab {
namespace {

constexpr std::size_t kAgreementRange = 4096;

struct Embedding {
  std::vector<std::size_t> tape_map;
  /// Per source tape: a shadow tape that gets '1' written wherever the
  /// simulated head has executed a step.
  std::vector<std::optional<std::size_t>> shadow;
  /// Destination tape simulating the source guess tape, if any.
  std::optional<std::size_t> sim_guess;
  StateId on_accept = 0;
  StateId on_reject = 0;
  StateId on_overrun = 0;
};

TapeRole lifted_role(TapeRole r) {
  return (r == TapeRole::Input || r == TapeRole::Guess) ? TapeRole::Work : r;
}

/// Copies every rule of `src` into `a`; returns the image of src's start.
StateId embed(Assembler& a, const Program& src, const Embedding& e) {
  const std::size_t k = a.tape_count();
  std::vector<StateId> image(src.state_count());
  for (StateId s = 0; s < src.state_count(); ++s) {
    if (s == src.accept()) image[s] = e.on_accept;
    else if (s == src.reject()) image[s] = e.on_reject;
    else {
      std::string label = src.label(s);
      image[s] = a.state(label.rfind("diag:", 0) == 0 ? label : "sim:" + label);
    }
  }
  const std::optional<std::size_t> g = src.guess_tape();

  for (const Rule& r : src.desc().rules) {
    Rule out;
    out.from = image[r.from];
    out.to = image[r.to];
    out.read.assign(k, Match::Any);
    out.write.assign(k, Write::Keep);
    out.move.assign(k, Move::Stay);
    for (std::size_t t = 0; t < src.tape_count(); ++t) {
      const std::size_t d = e.tape_map[t];
      out.read[d] = r.read[t];
      out.write[d] = r.write[t];
      out.move[d] = r.move[t];
      if (e.shadow[t]) {
        out.write[*e.shadow[t]] = Write::One;
        out.move[*e.shadow[t]] = r.move[t];
      }
    }
    if (g && e.sim_guess && r.move[*g] == Move::Right &&
        (r.read[*g] == Match::Any || r.read[*g] == Match::Blank)) {
      Rule overrun;
      overrun.from = out.from;
      overrun.to = e.on_overrun;
      overrun.read = out.read;
      overrun.read[*e.sim_guess] = Match::Blank;
      overrun.write.assign(k, Write::Keep);
      overrun.move.assign(k, Move::Stay);
      a.add_rule(std::move(overrun));
      if (r.read[*g] == Match::Blank) continue;
    }
    a.add_rule(std::move(out));
  }
  return image[src.start()];
}

std::optional<std::size_t> preload_tape(const Program& p, PreloadKind kind,
                                        const WitnessSizeFn& w, const char* what) {
  std::optional<std::size_t> tape;
  for (const Preload& pl : p.preloads()) {
    if (pl.kind != kind) {
      throw std::invalid_argument(std::string(what) + ": unsupported preload kind");
    }
    if (!pl.w.agrees_with(w, kAgreementRange))
      throw std::invalid_argument(std::string(what) +
                                  ": preload witness size differs from the target one");
    if (tape) throw std::invalid_argument(std::string(what) + ": more than one preload");
    tape = pl.tape;
  }
  return tape;
}

}  // namespace

Program projectize(const Program& det, const WitnessSizeFn& w) {
  if (!det.is_deterministic()) throw std::invalid_argument("projectize: program has a guess tape");
  const std::optional<std::size_t> boundary =
      preload_tape(det, PreloadKind::PrefixLength, w, "projectize");

  constexpr std::size_t in = 0, guess = 1, wit = 2, base = 3;
  std::vector<TapeRole> roles{TapeRole::Input, TapeRole::Guess, TapeRole::UnaryCounter};
  for (std::size_t t = 0; t < det.tape_count(); ++t) roles.push_back(lifted_role(det.role(t)));
  Assembler a(std::move(roles));
  a.add_preload({wit, PreloadKind::WitnessLength, w});

  const std::size_t sim_in = base + det.input_tape();
  const std::optional<std::size_t> sim_b =
      boundary ? std::optional<std::size_t>(base + *boundary) : std::nullopt;

  StateId start = a.state("copy-x");
  StateId append = a.state("append-guess");
  a.on(start, {is_blank(in)}, {}, append);
  for (Symbol s : {Symbol::Zero, Symbol::One}) {
    std::vector<Op> ops{right(in), put(sim_in, s, Move::Right)};
    if (sim_b) ops.push_back(put(*sim_b, Symbol::One, Move::Right));
    Cond c = is(in, s);
    a.on(start, std::span<const Cond>(&c, 1), ops, start);
  }

  StateId short_guess = a.state("diag:guess-short");
  a.on(short_guess, {}, {}, a.reject());
  StateId appended = a.state();
  a.on(append, {is_blank(wit)}, {}, appended);
  a.on(append, {is_blank(guess)}, {}, short_guess);
  for (Symbol s : {Symbol::Zero, Symbol::One})
    a.on(append, {is(guess, s)}, {right(guess), right(wit), put(sim_in, s, Move::Right)}, append);

  StateId ready = rewind(a, appended, sim_in);
  if (sim_b) ready = rewind(a, ready, *sim_b);

  Embedding e;
  for (std::size_t t = 0; t < det.tape_count(); ++t) e.tape_map.push_back(base + t);
  e.shadow.assign(det.tape_count(), std::nullopt);
  e.on_accept = a.accept();
  e.on_reject = a.reject();
  e.on_overrun = a.reject();
  StateId sim_start = embed(a, det, e);
  a.on(ready, {}, {}, sim_start);
  return a.finish(start);
}

Program determinize_with_witness(const Program& nondet, const WitnessSizeFn& w) {
  const std::optional<std::size_t> g = nondet.guess_tape();
  const std::optional<std::size_t> wl =
      preload_tape(nondet, PreloadKind::WitnessLength, w, "determinize_with_witness");

  constexpr std::size_t in = 0, bound = 1, base = 2;
  std::vector<TapeRole> roles{TapeRole::Input, TapeRole::UnaryCounter};
  for (std::size_t t = 0; t < nondet.tape_count(); ++t)
    roles.push_back(lifted_role(nondet.role(t)));
  Assembler a(std::move(roles));
  a.add_preload({bound, PreloadKind::PrefixLength, w});

  const std::size_t sim_in = base + nondet.input_tape();
  const std::optional<std::size_t> sim_g =
      g ? std::optional<std::size_t>(base + *g) : std::nullopt;
  const std::optional<std::size_t> sim_w =
      wl ? std::optional<std::size_t>(base + *wl) : std::nullopt;

  StateId start = a.state("copy-x");
  StateId copy_y = a.state("copy-y");
  a.on(start, {is_blank(bound)}, {}, copy_y);
  for (Symbol s : {Symbol::Zero, Symbol::One})
    a.on(start, {is(bound, Symbol::One), is(in, s)},
         {right(bound), right(in), put(sim_in, s, Move::Right)}, start);

  StateId copied = a.state();
  a.on(copy_y, {is_blank(in)}, {}, copied);
  for (Symbol s : {Symbol::Zero, Symbol::One}) {
    std::vector<Op> ops{right(in)};
    if (sim_g) ops.push_back(put(*sim_g, s, Move::Right));
    if (sim_w) ops.push_back(put(*sim_w, Symbol::One, Move::Right));
    Cond c = is(in, s);
    a.on(copy_y, std::span<const Cond>(&c, 1), ops, copy_y);
  }

  StateId ready = rewind(a, copied, sim_in);
  if (sim_g) ready = rewind(a, ready, *sim_g);
  if (sim_w) ready = rewind(a, ready, *sim_w);

  StateId overrun = a.state("diag:guess-overrun");
  a.on(overrun, {}, {}, a.reject());

  Embedding e;
  for (std::size_t t = 0; t < nondet.tape_count(); ++t) e.tape_map.push_back(base + t);
  e.shadow.assign(nondet.tape_count(), std::nullopt);
  e.sim_guess = sim_g;
  e.on_accept = a.accept();
  e.on_reject = a.reject();
  e.on_overrun = overrun;
  StateId sim_start = embed(a, nondet, e);
  a.on(ready, {}, {}, sim_start);
  return a.finish(start);
}

Program brute_force_determinize(const Program& nondet, const WitnessSizeFn& w,
                                std::size_t branch_bits) {
  const std::optional<std::size_t> g = nondet.guess_tape();
  const std::optional<std::size_t> wl =
      preload_tape(nondet, PreloadKind::WitnessLength, w, "brute_force_determinize");

  // Simulated cell c lives at physical cell c + 2. Shadow tapes keep an
  // anchor '0' at cell 1 and mark every cell the simulation has visited.
  constexpr std::size_t in = 0, wit = 1, counter = 2, base = 3;
  const std::size_t k = nondet.tape_count();
  std::vector<TapeRole> roles{TapeRole::Input, TapeRole::UnaryCounter, TapeRole::Work};
  for (std::size_t t = 0; t < k; ++t) roles.push_back(lifted_role(nondet.role(t)));
  std::vector<std::optional<std::size_t>> shadow(k);
  std::vector<std::size_t> shadowed;
  for (std::size_t t = 0; t < k; ++t) {
    if (g && t == *g) continue;
    shadow[t] = roles.size();
    shadowed.push_back(t);
    roles.push_back(TapeRole::Work);
  }
  Assembler a(std::move(roles));
  a.add_preload({wit, PreloadKind::WitnessLength, w});
  a.set_preload_cap(branch_bits);

  const std::size_t sim_in = base + nondet.input_tape();
  const std::optional<std::size_t> sim_g =
      g ? std::optional<std::size_t>(base + *g) : std::nullopt;
  const std::optional<std::size_t> sim_w =
      wl ? std::optional<std::size_t>(base + *wl) : std::nullopt;

  // Counter := 0^{w(|x|)}.
  StateId start = a.state("zero-counter");
  StateId zeroed = a.state();
  a.on(start, {is_blank(wit)}, {}, zeroed);
  a.on(start, {}, {right(wit), put(counter, Symbol::Zero, Move::Right)}, start);
  StateId s = rewind_all(a, zeroed, {wit, counter});

  // Anchor the shadows and move every simulated head onto physical cell 3.
  {
    std::vector<Op> first, second;
    for (std::size_t t = 0; t < k; ++t) {
      first.push_back(right(base + t));
      second.push_back(right(base + t));
      if (shadow[t]) {
        first.push_back(put(*shadow[t], Symbol::Zero, Move::Right));
        second.push_back(put(*shadow[t], Symbol::One, Move::Right));
      }
    }
    StateId mid = a.state();
    StateId placed = a.state();
    a.on(s, {}, first, mid);
    a.on(mid, {}, second, placed);
    s = a.state();
    std::vector<Op> mark;
    for (std::size_t t : shadowed) mark.push_back(put(*shadow[t], Symbol::One));
    a.on(placed, {}, mark, s);
  }

  StateId branch = a.state("branch");
  a.mark(branch);
  a.on(s, {}, {}, branch);

  // Load x, the candidate guess and the witness-length tape.
  s = copy_run(a, then(a, branch, {}), in, {sim_in});
  s = rewind_all(a, s, {in});
  s = rewind(a, s, sim_in);
  if (sim_g) {
    s = copy_run(a, s, counter, {*sim_g});
    s = rewind(a, s, counter);
    s = rewind(a, s, *sim_g);
  }
  if (sim_w) {
    StateId fill = s;
    StateId filled = a.state();
    a.on(fill, {is_blank(wit)}, {}, filled);
    a.on(fill, {}, {right(wit), put(*sim_w, Symbol::One, Move::Right)}, fill);
    s = rewind(a, filled, wit);
    s = rewind(a, s, *sim_w);
  }

  StateId cleanup = a.state("next-branch");
  Embedding e;
  for (std::size_t t = 0; t < k; ++t) e.tape_map.push_back(base + t);
  e.shadow = shadow;
  e.sim_guess = sim_g;
  e.on_accept = a.accept();
  e.on_reject = cleanup;
  e.on_overrun = cleanup;
  StateId sim_start = embed(a, nondet, e);
  a.on(s, {}, {}, sim_start);

  // Erase every visited cell of each shadowed tape, then put the head back
  // on physical cell 3 with cells 2 and 3 marked.
  s = cleanup;
  for (std::size_t t : shadowed) {
    const std::size_t d = base + t;
    const std::size_t sh = *shadow[t];
    StateId to_anchor = s;
    StateId sweep = a.state();
    StateId back = a.state();
    StateId out = a.state();
    a.on(to_anchor, {is(sh, Symbol::Zero)}, {right(d), right(sh)}, sweep);
    a.on(to_anchor, {}, {left(d), left(sh)}, to_anchor);
    a.on(sweep, {is(sh, Symbol::One)},
         {put(d, Symbol::Blank, Move::Right), put(sh, Symbol::Blank, Move::Right)}, sweep);
    a.on(sweep, {}, {left(d), left(sh)}, back);
    StateId remark = a.state();
    a.on(back, {is(sh, Symbol::Zero)}, {right(d), right(sh)}, remark);
    a.on(back, {}, {left(d), left(sh)}, back);
    StateId remark2 = a.state();
    a.on(remark, {}, {right(d), put(sh, Symbol::One, Move::Right)}, remark2);
    a.on(remark2, {}, {put(sh, Symbol::One)}, out);
    s = out;
  }
  if (sim_g) {
    s = rewind(a, s, *sim_g);
  }

  // Binary increment of the counter, most significant bit first.
  s = skip_run(a, s, counter);
  StateId carry = a.state("increment");
  a.on(s, {}, {left(counter)}, carry);
  StateId bumped = a.state();
  a.on(carry, {is(counter, Symbol::One)}, {put(counter, Symbol::Zero, Move::Left)}, carry);
  a.on(carry, {is(counter, Symbol::Zero)}, {put(counter, Symbol::One)}, bumped);
  StateId exhausted = a.state("branches-exhausted");
  a.on(carry, {is_blank(counter)}, {}, exhausted);
  a.on(exhausted, {}, {}, a.reject());
  StateId rewound = rewind(a, bumped, counter);
  a.on(rewound, {}, {}, branch);

  return a.finish(start);
}

}  // namespace tmlab
