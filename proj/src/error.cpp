#include "hardy/error.hpp"

namespace hardy {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Indeterminate: return "Indeterminate";
    case ErrorCode::NotLFM: return "NotLFM";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotSelfMap: return "NotSelfMap";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::OriginNotSupported: return "OriginNotSupported";
    case ErrorCode::BranchPointProximity: return "BranchPointProximity";
    case ErrorCode::PoleInDisk: return "PoleInDisk";
    case ErrorCode::JitterExhausted: return "JitterExhausted";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hardy
