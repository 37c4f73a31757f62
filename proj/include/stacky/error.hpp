#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stacky {

enum class ErrorKind {
  // Malformed input shapes and indices.
  ShapeMismatch,
  IndexOutOfRange,
  InvalidTorsionOrder,
  // Violated stacky fan conditions.
  ZeroRay,
  RaysDoNotSpan,
  NonSimplicialCone,
  NestedMaxCones,
  RayNotInFan,
  InfiniteCokernel,
  // Sheared simplex input.
  NotPrimitive,
  NonPositive,
  // Domain errors raised by queries on a valid fan.
  NotInZSigma,
  InvalidCone,
  TorsionAmbient,
  MixedSignKernel,
  NotWps,
  NotPlanar,
  ZeroEntry,
  // Document and file handling.
  ParseError,
  IoError,
};

/// How a failure is reported at the command line.
enum class ErrorCategory { Parse, Validation, Domain };

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidTorsionOrder: return "InvalidTorsionOrder";
    case ErrorKind::ZeroRay: return "ZeroRay";
    case ErrorKind::RaysDoNotSpan: return "RaysDoNotSpan";
    case ErrorKind::NonSimplicialCone: return "NonSimplicialCone";
    case ErrorKind::NestedMaxCones: return "NestedMaxCones";
    case ErrorKind::RayNotInFan: return "RayNotInFan";
    case ErrorKind::InfiniteCokernel: return "InfiniteCokernel";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::NotInZSigma: return "NotInZSigma";
    case ErrorKind::InvalidCone: return "InvalidCone";
    case ErrorKind::TorsionAmbient: return "TorsionAmbient";
    case ErrorKind::MixedSignKernel: return "MixedSignKernel";
    case ErrorKind::NotWps: return "NotWps";
    case ErrorKind::NotPlanar: return "NotPlanar";
    case ErrorKind::ZeroEntry: return "ZeroEntry";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

constexpr ErrorCategory error_category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
      return ErrorCategory::Parse;
    case ErrorKind::ShapeMismatch:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::InvalidTorsionOrder:
    case ErrorKind::ZeroRay:
    case ErrorKind::RaysDoNotSpan:
    case ErrorKind::NonSimplicialCone:
    case ErrorKind::NestedMaxCones:
    case ErrorKind::RayNotInFan:
    case ErrorKind::NotPrimitive:
    case ErrorKind::NonPositive:
      return ErrorCategory::Validation;
    default:
      return ErrorCategory::Domain;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) +
                           (detail.empty() ? "" : ": " + detail)),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return error_category(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace stacky
