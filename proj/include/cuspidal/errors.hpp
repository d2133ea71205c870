#pragma once

#include <stdexcept>
#include <string>

namespace cuspidal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rational mode hit an irrational root
struct NeedsFloat : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct NotInvertible : Error {
  using Error::Error;
};

struct NotUnit : Error {
  using Error::Error;
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct Inconclusive : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

}  // namespace cuspidal
