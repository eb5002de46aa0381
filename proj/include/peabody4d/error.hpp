#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace peabody4d {

enum class ErrorCode {
  NoConvergence,
  UnknownKind,
  DegenerateSimplex,
  OutOfDomain,
  NotSameComponent,
  WrongComponent,
  OffArc,
  OffPatch,
  DomainError,
  InteriorPointNotInterior,
  UnclassifiedSample,
  TooFewSamples,
  EmptySlice,
  InvalidArgument,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace peabody4d
