#include "limcyc/error.hpp"

namespace limcyc {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::UnsupportedDegree: return "unsupported-degree";
    case ErrorCode::OutOfTable: return "out-of-table";
    case ErrorCode::DivisionByZero: return "division-by-zero";
    case ErrorCode::DegenerateCurve: return "degenerate-curve";
    case ErrorCode::DividingLine: return "dividing-line";
    case ErrorCode::DegenerateParameters: return "degenerate-parameters";
    case ErrorCode::LineMeetsOval: return "line-meets-oval";
    case ErrorCode::InvalidLine: return "invalid-line";
    case ErrorCode::AmbiguousPoint: return "ambiguous-point";
    case ErrorCode::NotInvariant: return "not-invariant";
    case ErrorCode::RelocationNeeded: return "relocation-needed";
    case ErrorCode::Resolution: return "resolution-error";
    case ErrorCode::Integration: return "integration-error";
    case ErrorCode::NoCycle: return "no-cycle";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::SearchFailure: return "search-failure";
    case ErrorCode::Io: return "io-error";
    case ErrorCode::Internal: return "internal-error";
  }
  return "unknown-error";
}

}  // namespace limcyc
