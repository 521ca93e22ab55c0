#pragma once

#include <stdexcept>
#include <string>

namespace kimgold {

// Thrown when an internal consistency check fails that should be impossible
// for inputs passing the APN predicate. Seeing this on real data means either
// a construction bug or a genuine counterexample to the classification this
// tool implements; either way it must surface loudly instead of producing a
// bogus witness.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kimgold
