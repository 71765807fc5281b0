#include "tdlc/errors.hpp"

namespace tdlc {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::MixedUniverse: return "MixedUniverse";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::ParentMismatch: return "ParentMismatch";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::BadModulus: return "BadModulus";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorKind::EmptyCandidates: return "EmptyCandidates";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace tdlc
