#include "lipfree/error.hpp"

namespace lipfree {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::NegativeOrZeroOffDiagonal: return "NegativeOrZeroOffDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidFamilyParameters: return "InvalidFamilyParameters";
    case ErrorCode::EmptyLevels: return "EmptyLevels";
    case ErrorCode::InvalidTriple: return "InvalidTriple";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::SeparationViolation: return "SeparationViolation";
    case ErrorCode::ExactnessRequired: return "ExactnessRequired";
    case ErrorCode::NotConvergent: return "NotConvergent";
    case ErrorCode::MetadataRequired: return "MetadataRequired";
    case ErrorCode::HorizonExhausted: return "HorizonExhausted";
    case ErrorCode::NotUltrametric: return "NotUltrametric";
    case ErrorCode::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail,
                    const std::vector<std::size_t>& witness) {
  std::string out(error_name(code));
  if (!witness.empty()) {
    out += "(";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(witness[i]);
    }
    out += ")";
  }
  if (!detail.empty()) out += ": " + detail;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail, std::vector<std::size_t> witness)
    : std::runtime_error(compose(code, detail, witness)), code_(code), witness_(std::move(witness)) {}

}  // namespace lipfree
