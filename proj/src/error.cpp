#include "spherelab/error.hpp"

namespace spherelab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NearZeroVector: return "NearZeroVector";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::AntipodalPoints: return "AntipodalPoints";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::InconsistentTrace: return "InconsistentTrace";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::IntegratorFailure: return "IntegratorFailure";
    case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::MalformedPerturbation: return "MalformedPerturbation";
    case ErrorCode::NotSmoothlyClosing: return "NotSmoothlyClosing";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::SamplingTooCoarse: return "SamplingTooCoarse";
    case ErrorCode::DiscontinuousPath: return "DiscontinuousPath";
    case ErrorCode::LiftDrift: return "LiftDrift";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::ScenarioFailure: return "ScenarioFailure";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace spherelab
