#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace icp {

enum class ErrorKind {
  DimensionMismatch,
  InvalidState,
  InvalidEffect,
  InvalidMeasurement,
  InvalidDistribution,
  InvalidArgument,
  UnknownRegister,
  NotApplicable,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers (the CLI in
/// particular) how to classify the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace icp
