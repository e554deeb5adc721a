#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netir {

enum class ErrorCode {
  kEmptyCorpus,
  kDuplicateDocId,
  kUnknownDoc,
  kEmptyQuery,
  kNotSinglyConnected,
  kInconsistentEvidence,
  kTooLarge,
  kZeroEvidence,
  kInvalidArgument,
  kParse,
  kIo,
};

/// Stable name used in diagnostics, e.g. "EmptyCorpus".
std::string_view error_name(ErrorCode code);

/// Every failure raised by the library. what() starts with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netir
