#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace animacy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the source name and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& reason)
      : Error(source + ":" + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A requested precision/recall pair cannot be produced from the available labels.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace animacy
