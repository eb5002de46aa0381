#include "peabody4d/error.hpp"

namespace peabody4d {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotSameComponent: return "NotSameComponent";
    case ErrorCode::WrongComponent: return "WrongComponent";
    case ErrorCode::OffArc: return "OffArc";
    case ErrorCode::OffPatch: return "OffPatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InteriorPointNotInterior: return "InteriorPointNotInterior";
    case ErrorCode::UnclassifiedSample: return "UnclassifiedSample";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::EmptySlice: return "EmptySlice";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace peabody4d
