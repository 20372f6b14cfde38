#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dvint {

/// Error categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  Syntax = 1,
  UnknownVariable,
  DuplicateVariable,
  MissingSection,
  ZeroDenominator,
  DenominatorVanishesOnVariety,
  InconsistentIdeal,
  RegistryMismatch,
  MalformedRHS,
  DegenerateLeadingDerivative,
  NotSolvable,
  InitialConditionOffVariety,
  PoleEncountered,
  DenominatorNearZeroOnTrajectory,
  InvalidArgument,
  Io,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(what), code_(code), position_(position) {}
  ErrorCode code() const noexcept { return code_; }
  /// Byte offset into the parsed text, when the error has one.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

/// Parse failure; `offset` is a byte offset into the text that was parsed.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what) : Error(ErrorCode::Syntax, what, offset) {}
  std::size_t offset() const noexcept { return *position(); }
};

class PoleEncountered : public Error {
 public:
  PoleEncountered(double last_good_t, const std::string& what)
      : Error(ErrorCode::PoleEncountered, what), last_good_t_(last_good_t) {}
  double last_good_t() const noexcept { return last_good_t_; }

 private:
  double last_good_t_;
};

}  // namespace dvint
