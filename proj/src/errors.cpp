#include "iwalab/errors.hpp"

namespace iwalab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByPrecisionZero: return "DivisionByPrecisionZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::RamifiedFieldUnsupported: return "RamifiedFieldUnsupported";
    case ErrorKind::OutsideConvergenceDomain: return "OutsideConvergenceDomain";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RootOfUnityUnavailable: return "RootOfUnityUnavailable";
    case ErrorKind::OddCharacter: return "OddCharacter";
    case ErrorKind::Assumption2Required: return "Assumption2Required";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    case ErrorKind::ZeroToPrecision: return "ZeroToPrecision";
    case ErrorKind::IndeterminateAtPrecision: return "IndeterminateAtPrecision";
    case ErrorKind::PivotAmbiguous: return "PivotAmbiguous";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::InadmissibleTwist: return "InadmissibleTwist";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::CacheCorrupt: return "CacheCorrupt";
    case ErrorKind::FileFormat: return "FileFormat";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace iwalab
