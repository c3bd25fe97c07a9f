#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tmlab/enumerate.hpp"
#include "tmlab/program.hpp"
#include "tmlab/witness.hpp"

namespace tmlab {

/// A deterministic decider over <x,y> with |y| = w(|x|), plus a direct
/// predicate computing the same answer.
struct CorpusMachine {
  std::string name;
  WitnessSizeFn w;
  Program decider;
  std::function<bool(const std::string& x, const std::string& y)> predicate;
};

/// The ten witness deciders used by the mode-equivalence checks.
std::vector<CorpusMachine> decider_corpus();
/// Looks a corpus machine up by name; throws std::out_of_range.
CorpusMachine corpus_machine(std::string_view name);

/// Guess-tape program accepting x iff its guess string equals x (w(n) = n).
Program guess_equals_input_checker();

/// accept_exists_witness(decider, x, w(|x|), fuel): membership of x in the
/// projection of the decider's language by w.
Verdict tiwi_member_desk(const Program& decider, const WitnessSizeFn& w, std::string_view x,
                         std::uint64_t fuel);

}  // namespace tmlab
