#pragma once

#include <stdexcept>
#include <string>

namespace knotkit {

// Domain errors (CLI exit code 1). Usage errors are handled by the CLI layer.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input fails a construction invariant (non-embedded curve, bad diagram, ...).
struct ValidationError : Error {
  using Error::Error;
};

// A Mobius inversion center hit (or came too close to) the evaluation point.
struct PoleError : Error {
  using Error::Error;
};

// A projection direction (or pair) fails the regularity/distinctness rules.
struct GenericityError : Error {
  using Error::Error;
};

// Computation would exceed a hard budget (e.g. skein crossing limit).
struct ResourceError : Error {
  using Error::Error;
};

// Malformed textual input; `position` is a 0-based token or character index.
struct ParseError : Error {
  int position;
  ParseError(const std::string& msg, int pos = -1)
      : Error(pos >= 0 ? msg + " (at position " + std::to_string(pos) + ")" : msg),
        position(pos) {}
};

}  // namespace knotkit
