#pragma once

#include <stdexcept>
#include <string>

namespace tmlab {

/// Program violates a structural invariant, or a run hit a missing transition.
class MalformedProgram : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A guess-tape program read past the end of its supplied guess string.
class WitnessBudgetViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured cap (witness bits or branches).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text (program file, language file, key list) could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run that must halt did not halt within its fuel.
class FuelExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tmlab
