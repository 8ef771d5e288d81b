#include "rwinv/error.hpp"

namespace rwinv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InOutCoincide: return "InOutCoincide";
    case ErrorCode::InteriorDisconnected: return "InteriorDisconnected";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::ZeroEigenvalueAmbiguous: return "ZeroEigenvalueAmbiguous";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::NoDescent: return "NoDescent";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::CapTooSmall: return "CapTooSmall";
    case ErrorCode::EnumerationLimit: return "EnumerationLimit";
    case ErrorCode::NotInPsi: return "NotInPsi";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NotTwins: return "NotTwins";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::Irreducible: return "Irreducible";
    case ErrorCode::RoundTripFailure: return "RoundTripFailure";
  }
  return "Unknown";
}

}  // namespace rwinv
