#include "tmlab/assembler.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmlab {

Assembler::Assembler(std::vector<TapeRole> roles) : roles_(std::move(roles)) {
  if (roles_.empty()) throw std::invalid_argument("assembler needs at least one tape");
  accept_ = state("accept");
  reject_ = state("reject");
}

StateId Assembler::state(std::string label) {
  labels_.push_back(std::move(label));
  return static_cast<StateId>(labels_.size() - 1);
}

void Assembler::on(StateId from, std::span<const Cond> when, std::span<const Op> ops, StateId to) {
  const std::size_t k = roles_.size();
  Rule r;
  r.from = from;
  r.to = to;
  r.read.assign(k, Match::Any);
  r.write.assign(k, Write::Keep);
  r.move.assign(k, Move::Stay);
  for (const Cond& c : when) {
    if (c.tape >= k) throw std::out_of_range("condition on a missing tape");
    r.read[c.tape] = static_cast<Match>(static_cast<std::uint8_t>(c.sym));
  }
  for (const Op& o : ops) {
    if (o.tape >= k) throw std::out_of_range("operation on a missing tape");
    r.write[o.tape] = o.write;
    r.move[o.tape] = o.move;
  }
  rules_.push_back(std::move(r));
}

void Assembler::add_rule(Rule r) {
  const std::size_t k = roles_.size();
  if (r.read.size() != k || r.write.size() != k || r.move.size() != k)
    throw std::invalid_argument("rule width differs from tape count");
  rules_.push_back(std::move(r));
}

Program Assembler::finish(StateId start) {
  const std::size_t k = roles_.size();
  std::vector<bool> total(labels_.size(), false);
  for (const Rule& r : rules_)
    if (std::all_of(r.read.begin(), r.read.end(), [](Match m) { return m == Match::Any; }))
      total[r.from] = true;

  const std::size_t original = labels_.size();
  StateId unexpected = state("diag:unexpected-symbol");
  on(unexpected, {}, {}, reject_);
  for (StateId s = 0; s < original; ++s) {
    if (s == accept_ || s == reject_ || total[s]) continue;
    Rule r;
    r.from = s;
    r.to = unexpected;
    r.read.assign(k, Match::Any);
    r.write.assign(k, Write::Keep);
    r.move.assign(k, Move::Stay);
    rules_.push_back(std::move(r));
  }

  ProgramDesc d;
  d.state_count = labels_.size();
  d.tape_count = k;
  d.start = start;
  d.accept = accept_;
  d.reject = reject_;
  d.roles = roles_;
  d.rules = rules_;
  d.preloads = preloads_;
  d.preload_cap = preload_cap_;
  d.labels = labels_;
  d.markers = markers_;
  return Program(std::move(d));
}

StateId then(Assembler& a, StateId from, std::initializer_list<Op> ops, std::string label) {
  StateId out = a.state(std::move(label));
  a.on(from, {}, ops, out);
  return out;
}

StateId rewind(Assembler& a, StateId from, std::size_t t) {
  StateId scan = a.state();
  StateId out = a.state();
  a.on(from, {}, {left(t)}, scan);
  a.on(scan, {is_blank(t)}, {right(t)}, out);
  a.on(scan, {}, {left(t)}, scan);
  return out;
}

StateId rewind_all(Assembler& a, StateId from, std::initializer_list<std::size_t> tapes) {
  for (std::size_t t : tapes) from = rewind(a, from, t);
  return from;
}

StateId copy_run(Assembler& a, StateId from, std::size_t src, std::span<const std::size_t> dsts) {
  StateId out = a.state();
  a.on(from, {is_blank(src)}, {}, out);
  for (Symbol s : {Symbol::Zero, Symbol::One}) {
    std::vector<Op> ops{right(src)};
    for (std::size_t d : dsts) ops.push_back(put(d, s, Move::Right));
    Cond c = is(src, s);
    a.on(from, std::span<const Cond>(&c, 1), ops, from);
  }
  return out;
}

StateId skip_run(Assembler& a, StateId from, std::size_t t) {
  StateId out = a.state();
  a.on(from, {is_blank(t)}, {}, out);
  a.on(from, {}, {right(t)}, from);
  return out;
}

StateId clear_run(Assembler& a, StateId from, std::size_t t) {
  StateId end = skip_run(a, from, t);
  StateId erase = a.state();
  StateId out = a.state();
  a.on(end, {}, {left(t)}, erase);
  a.on(erase, {is_blank(t)}, {right(t)}, out);
  a.on(erase, {}, {put(t, Symbol::Blank, Move::Left)}, erase);
  return out;
}

StateId truncate_and_rewind(Assembler& a, StateId from, std::size_t t) {
  StateId back = a.state();
  StateId scan = a.state();
  StateId out = a.state();
  a.on(from, {is_blank(t)}, {left(t)}, back);
  a.on(from, {}, {put(t, Symbol::Blank, Move::Right)}, from);
  a.on(back, {is_blank(t)}, {left(t)}, back);
  a.on(back, {}, {left(t)}, scan);
  a.on(scan, {is_blank(t)}, {right(t)}, out);
  a.on(scan, {}, {left(t)}, scan);
  return out;
}

}  // namespace tmlab
