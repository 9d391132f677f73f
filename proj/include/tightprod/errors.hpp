#pragma once

#include <stdexcept>
#include <string>

namespace tightprod {

// Precondition violation by the caller (bad graph, wrong regularity, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. `line` is 1-based; 0 means "end of input".
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A guarded invariant failed. These indicate a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const char* what) {
  if (!condition) throw InternalError(what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw InputError(what);
}

}  // namespace tightprod
