#pragma once

#include <stdexcept>
#include <string>

namespace pimoduli {

/// Machine-readable error categories; the numeric values double as CLI exit codes.
enum class ErrorCode : int {
  parse = 2,
  validation = 3,
  size_bound = 4,
  internal = 5,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return "parse_error";
    case ErrorCode::validation: return "validation_error";
    case ErrorCode::size_bound: return "size_bound_exceeded";
    case ErrorCode::internal: return "internal_consistency";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(ErrorCode::parse, message) {}
};

/// An invariant of the input data failed; `witness` names the offending elements.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, std::string witness = {})
      : Error(ErrorCode::validation, witness.empty() ? message : message + " (witness: " + witness + ")"),
        witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

class SizeBoundError : public Error {
 public:
  explicit SizeBoundError(const std::string& message) : Error(ErrorCode::size_bound, message) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message) : Error(ErrorCode::internal, message) {}
};

}  // namespace pimoduli
