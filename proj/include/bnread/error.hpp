#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bnread {

// Root of all engine errors. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A formula cannot be evaluated on the given statistics.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Missing, corrupt or incompatible model.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace bnread
