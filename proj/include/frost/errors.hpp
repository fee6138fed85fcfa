#pragma once

#include <stdexcept>
#include <string>

namespace frost {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (rational strings, words, JSON payloads).
struct ParseError : Error {
    using Error::Error;
};

// A precondition or invariant failed; the message names the offending
// word/stage/value.
struct InvariantError : Error {
    using Error::Error;
};

// A stage-bounded search ran out of fuel before reaching a decision.
struct StageExhausted : Error {
    using Error::Error;
};

} // namespace frost
