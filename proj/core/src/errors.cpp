#include "knotfoam/errors.hpp"

namespace knotfoam {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonExactDivision: return "NonExactDivision";
    case ErrorKind::MalformedFoam: return "MalformedFoam";
    case ErrorKind::NonBipartiteBinding: return "NonBipartiteBinding";
    case ErrorKind::OddEuler: return "OddEuler";
    case ErrorKind::MalformedGraph: return "MalformedGraph";
    case ErrorKind::InvalidFace: return "InvalidFace";
    case ErrorKind::ReductionStuck: return "ReductionStuck";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::InvalidBraid: return "InvalidBraid";
    case ErrorKind::InvalidSite: return "InvalidSite";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotAKnot: return "NotAKnot";
    case ErrorKind::PropositionViolated: return "PropositionViolated";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

ParseError::ParseError(std::size_t position, const std::string& detail)
    : Error(ErrorKind::ParseError,
            detail + " at position " + std::to_string(position)),
      position_(position) {}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace knotfoam
