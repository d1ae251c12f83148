#include "bergman/error.hpp"

namespace bergman {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotReducing: return "NotReducing";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::DepthOverflow: return "DepthOverflow";
    case ErrorCode::BadResidue: return "BadResidue";
  }
  return "Unknown";
}

}  // namespace bergman
