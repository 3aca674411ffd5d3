#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tipwatch {

/// Failure categories shared by every module. The CLI maps these onto exit codes.
enum class ErrorKind {
  MissingColumn,
  NonUniformSampling,
  NonNumericEntry,
  TooShort,
  WindowTooLong,
  LagTooLarge,
  InadmissibleModel,
  DegenerateInput,
  NonConvergence,
  ZeroVariance,
  AllCandidatesFailed,
  NonFiniteState,
  NoConvergence,
  InvalidRamp,
  InvalidArgument,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tipwatch
