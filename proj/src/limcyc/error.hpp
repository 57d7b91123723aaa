#pragma once

#include <stdexcept>
#include <string>

namespace limcyc {

// Kept in sync with lcy_status in include/limcyc/limcyc.h.
enum class ErrorCode {
  Parse = 1,
  InvalidArgument,
  UnsupportedDegree,
  OutOfTable,
  DivisionByZero,
  DegenerateCurve,
  DividingLine,
  DegenerateParameters,
  LineMeetsOval,
  InvalidLine,
  AmbiguousPoint,
  NotInvariant,
  RelocationNeeded,
  Resolution,
  Integration,
  NoCycle,
  NonConvergence,
  SearchFailure,
  Io,
  Internal,
};

/// Short kebab-case name, stable across releases (used in JSON output).
const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error while reading polynomial text; carries the byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Parse,
              "syntax error at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Integration failure; records the last time the solution was reliable.
class IntegrationError : public Error {
 public:
  IntegrationError(double last_t, const std::string& what)
      : Error(ErrorCode::Integration, what + " (last reliable t = " + std::to_string(last_t) + ")"),
        last_t_(last_t) {}

  double last_reliable_t() const noexcept { return last_t_; }

 private:
  double last_t_;
};

}  // namespace limcyc
