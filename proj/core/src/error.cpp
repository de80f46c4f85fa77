#include "icp/error.hpp"

namespace icp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::InvalidState: return "invalid state";
    case ErrorKind::InvalidEffect: return "invalid effect";
    case ErrorKind::InvalidMeasurement: return "invalid measurement";
    case ErrorKind::InvalidDistribution: return "invalid distribution";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::UnknownRegister: return "unknown register";
    case ErrorKind::NotApplicable: return "not applicable";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

}  // namespace icp
