#pragma once

#include <iosfwd>
#include <optional>

#include "tmlab/tm_sort.hpp"

namespace tmlab {

enum ExitStatus : int {
  kExitOk = 0,
  kExitError = 1,
  kExitIndeterminate = 2,
  kExitSat = 10,
  kExitUnsat = 20,
};

/// Whitespace-separated unsigned keys; '#' comments to end of line. Without
/// `width`, the width is the bit length of the largest key (at least 1).
/// Throws ParseError with the line number.
KeyList read_key_file(std::istream& in, std::optional<std::size_t> width = {});

/// The tmlab command line. Flags also read TMLAB_SEED, TMLAB_FUEL_FACTOR,
/// TMLAB_REPORT and TMLAB_FORMAT.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tmlab
