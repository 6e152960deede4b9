#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aif {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotPositiveDefinite,
  kConvergenceFailure,
  kZeroMatrix,
  kDegenerateNormal,
  kSubsampleTooLarge,
  kEmptyRegion,
  kEmptyInput,
  kTooFewAnomalies,
  kParseError,
  kSchemaMismatch,
  kUnsupportedVersion,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command-line front end can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace aif
