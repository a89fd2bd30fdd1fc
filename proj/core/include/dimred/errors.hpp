#pragma once

#include <stdexcept>
#include <string>

namespace dimred {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input: unit expressions, JSON files, CSV rows.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A caller passed values outside an operation's contract.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Inputs are syntactically fine but mathematically out of domain
// (nonpositive physical quantities, Ha = 0, zero spectral gap, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical failure inside an algorithm (non-convergence, lost invariants).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level trouble: unreadable, missing, or refused paths.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dimred
