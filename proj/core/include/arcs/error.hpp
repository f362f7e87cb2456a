#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arcs {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (transcripts, JSON Lines, TSV, model responses).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A precondition on an argument was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Sakoe-Chiba band is narrower than the length difference of two series.
class BandInfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An internal invariant was broken by upstream data.
class InvariantViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

/// No usable label could be produced (e.g. every self-consistency sample failed to parse).
class LabelingError : public Error {
 public:
  using Error::Error;
};

/// Language-model endpoint could not be reached or answered with an error.
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& what, std::string segment_id = {})
      : Error(segment_id.empty() ? what : "segment " + segment_id + ": " + what),
        segment_id_(std::move(segment_id)) {}

  const std::string& segment_id() const noexcept { return segment_id_; }

 private:
  std::string segment_id_;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A required input artifact is missing or unreadable.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace arcs
