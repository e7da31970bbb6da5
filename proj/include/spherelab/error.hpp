#pragma once

#include <stdexcept>
#include <string>

namespace spherelab {

enum class ErrorCode {
  NearZeroVector,
  NotTangent,
  AntipodalPoints,
  TooFewVertices,
  DegenerateSegment,
  DegenerateEdge,
  InvalidCurve,
  StepSizeUnderflow,
  BlowUp,
  InconsistentTrace,
  ModulusOutOfRange,
  IntegratorFailure,
  RatioOutOfRange,
  NotCoprime,
  MalformedPerturbation,
  NotSmoothlyClosing,
  EpsOutOfRange,
  SamplingTooCoarse,
  DiscontinuousPath,
  LiftDrift,
  DegenerateGrid,
  ScenarioFailure,
  IoFailure,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spherelab
