#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsr {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DefinitionMissing : public Error {
 public:
  using Error::Error;
};

class CalculusMismatch : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured slot/arity cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class StructureMismatch : public Error {
 public:
  using Error::Error;
};

class InapplicableStrategy : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qsr
