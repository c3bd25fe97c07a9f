#include <cstdint>

#include "tmlab/errors.hpp"
#include "tmlab/sat.hpp"

namespace tmlab {

bool decide_sat_reference(const CnfFormula& f) {
  f.validate();
  if (f.variable_count > kReferenceVariableCap)
    throw CapExceeded("reference search over " + std::to_string(f.variable_count) +
                      " variables exceeds the cap of " + std::to_string(kReferenceVariableCap));
  struct Masks {
    std::uint32_t pos = 0, neg = 0;
  };
  std::vector<Masks> clauses;
  for (const Clause& c : f.clauses) {
    Masks m;
    for (const Literal& l : c) (l.negated ? m.neg : m.pos) |= std::uint32_t{1} << (l.variable - 1);
    clauses.push_back(m);
  }
  const std::uint32_t all = (std::uint32_t{1} << f.variable_count) - 1;
  for (std::uint64_t a = 0; a <= all; ++a) {
    const auto x = static_cast<std::uint32_t>(a);
    bool ok = true;
    for (const Masks& m : clauses)
      if (((x & m.pos) | (~x & m.neg)) == 0) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace tmlab
