#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diffmod {

enum class ErrorKind {
  NotPrime,
  DimensionMismatch,
  InvalidInput,
  NonAdmissible,
  CapTooSmall,
  NotAssociative,
  AlgebraMismatch,
  RelationViolated,
  NotMorphism,
  NotSquareZero,
  NotEndomorphism,
  ZeroModule,
  NotEpi,
  NotKernel,
  LiftFailed,
  EnumerationBoundExceeded,
  ProfileInfinite,
  NotGorensteinProjective,
  ValidationFailed,
  NotExact,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonAdmissible: return "NonAdmissible";
    case ErrorKind::CapTooSmall: return "CapTooSmall";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::NotMorphism: return "NotMorphism";
    case ErrorKind::NotSquareZero: return "NotSquareZero";
    case ErrorKind::NotEndomorphism: return "NotEndomorphism";
    case ErrorKind::ZeroModule: return "ZeroModule";
    case ErrorKind::NotEpi: return "NotEpi";
    case ErrorKind::NotKernel: return "NotKernel";
    case ErrorKind::LiftFailed: return "LiftFailed";
    case ErrorKind::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case ErrorKind::ProfileInfinite: return "ProfileInfinite";
    case ErrorKind::NotGorensteinProjective: return "NotGorensteinProjective";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::NotExact: return "NotExact";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace diffmod
