#pragma once

#include <string>
#include <string_view>

#include "tmlab/program.hpp"

namespace tmlab {

// Line-oriented program text:
//
//   states S tapes K start Q0 accept QA reject QR
//   roles input guess work output counter     (optional)
//   preload TAPE witness|prefix FN             (optional, FN as WitnessSizeFn::parse)
//   cap N                                      (optional preload cap)
//   label Q NAME / marker Q                    (optional)
//   Q READ -> Q' WRITE MOVES                   (one per transition)
//
// READ and WRITE are K characters over {0,1,_}; '*' reads any symbol or
// keeps the cell. MOVES are K characters over {L,R,S}. State tokens may carry
// a leading 'q'. '#' starts a comment. Rules are tried in file order.

std::string to_text(const Program& program);
/// Throws ParseError on malformed text and MalformedProgram on invalid machines.
Program parse_program(std::string_view text);

}  // namespace tmlab
