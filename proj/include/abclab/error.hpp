#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abclab {

enum class Errc {
  InvalidState,
  NonClosedTrajectory,
  CenterOnPath,
  BadDiscretization,
  EvaluationAtSource,
  InsideCore,
  CoreOverlap,
  QuadratureNotConverged,
  CoreEntry,
  SourceInsideShield,
  EvaluationOnSurface,
  GeometryViolation,
  ChargeNotConserved,
  NotNormalized,
  EmptyGrid,
  CoreApproach,
  DesynchronizedTrajectories,
  EndpointMismatch,
  ParseError,
  ValidationError,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidState: return "InvalidState";
    case Errc::NonClosedTrajectory: return "NonClosedTrajectory";
    case Errc::CenterOnPath: return "CenterOnPath";
    case Errc::BadDiscretization: return "BadDiscretization";
    case Errc::EvaluationAtSource: return "EvaluationAtSource";
    case Errc::InsideCore: return "InsideCore";
    case Errc::CoreOverlap: return "CoreOverlap";
    case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
    case Errc::CoreEntry: return "CoreEntry";
    case Errc::SourceInsideShield: return "SourceInsideShield";
    case Errc::EvaluationOnSurface: return "EvaluationOnSurface";
    case Errc::GeometryViolation: return "GeometryViolation";
    case Errc::ChargeNotConserved: return "ChargeNotConserved";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::CoreApproach: return "CoreApproach";
    case Errc::DesynchronizedTrajectories: return "DesynchronizedTrajectories";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace abclab
