#pragma once

#include <stdexcept>
#include <string>

namespace qplane {

enum class ErrorCode {
  BadParameter = 1,
  QRelationViolated = 2,
  DimensionMismatch = 3,
  NumericalBreakdown = 4,
  Inconclusive = 5,
  CapExceeded = 6,
  OutOfAnnulus = 7,
  IoFailure = 8,
  ParseError = 9,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qplane
