#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lipfree {

enum class ErrorCode {
  ParseError,
  NotSquare,
  NonzeroDiagonal,
  Asymmetric,
  NegativeOrZeroOffDiagonal,
  TriangleViolation,
  IndexOutOfRange,
  InvalidFamilyParameters,
  EmptyLevels,
  InvalidTriple,
  DegeneratePair,
  TooFewPoints,
  SeparationViolation,
  ExactnessRequired,
  NotConvergent,
  MetadataRequired,
  HorizonExhausted,
  NotUltrametric,
  Unbounded,
};

std::string_view error_name(ErrorCode code);

/// Library error. `witness()` carries the offending indices (pair or triple)
/// when the failure is attached to specific points.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail, std::vector<std::size_t> witness = {});

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace lipfree
