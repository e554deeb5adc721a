#include "netir/error.hpp"

namespace netir {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDuplicateDocId: return "DuplicateDocId";
    case ErrorCode::kUnknownDoc: return "UnknownDoc";
    case ErrorCode::kEmptyQuery: return "EmptyQuery";
    case ErrorCode::kNotSinglyConnected: return "NotSinglyConnected";
    case ErrorCode::kInconsistentEvidence: return "InconsistentEvidence";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kZeroEvidence: return "ZeroEvidence";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& detail) {
  std::string msg(error_name(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(format_message(code, detail)), code_(code) {}

}  // namespace netir
