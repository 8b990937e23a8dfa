#pragma once

#include <stdexcept>
#include <string>

namespace subshift {

// Input violates a documented precondition (malformed file, wrong flags on a
// substitution, unsupported group order, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation hit a configured cap or could not reach a verdict.  Callers
// may still hold partial results.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subshift
