#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypopq {

enum class ErrorKind {
  InvalidParam,
  NonFinite,
  NonConvergent,
  StepTooSmall,
  DomainExceeded,
  PoleHit,
  SingularToPrecision,
  PrecisionExhausted,
  SingularStep,
  InvalidCoeffs,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// command line front end can map it to an exit code.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::StepTooSmall: return "StepTooSmall";
    case ErrorKind::DomainExceeded: return "DomainExceeded";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::SingularToPrecision: return "SingularToPrecision";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::SingularStep: return "SingularStep";
    case ErrorKind::InvalidCoeffs: return "InvalidCoeffs";
  }
  return "Unknown";
}

}  // namespace hypopq
