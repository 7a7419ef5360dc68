#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asid {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a model or formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration document or parameter set is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The flight simulation could not produce a valid trajectory.
class SimulationError : public Error {
 public:
  using Error::Error;
};

/// Socket-level failure: refused, timed out, reset.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// The peer answered, but not with what the protocol requires.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `row()` is 1-based; 0 when not tied to a row.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : Error(row == 0 ? what : "row " + std::to_string(row) + ": " + what),
        row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace asid
