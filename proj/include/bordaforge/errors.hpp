#pragma once

#include <stdexcept>
#include <string>

namespace bordaforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad instance ranges/sums, duplicate candidates in a
// ranking, missing manipulator ballots, violated preconditions.
struct ValidationError : Error {
  using Error::Error;
};

// A score assignment whose multiset is not an exact Borda set.
struct NotABallotError : Error {
  using Error::Error;
};

// A reduction could not be built: duplicate or out-of-range constructed
// scores, or a layout constraint that fails for the given parameters. The
// message names the first violated constraint.
struct ConstructionError : Error {
  using Error::Error;
};

// Exhaustive search refused because the instance exceeds the configured
// enumeration limit.
struct LimitError : Error {
  using Error::Error;
};

// Unreadable or schema-violating serialized data.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace bordaforge
