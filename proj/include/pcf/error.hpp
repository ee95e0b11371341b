#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcf {

enum class ErrorCode {
  // Input documents.
  kMalformedJson,
  kSchema,
  kBadNumber,
  kNegativeWeight,
  kNegativePenalty,
  kDuplicateEdge,
  kDuplicateVertex,
  kSelfLoop,
  kDanglingVertex,
  // Solver preconditions.
  kKOutOfRange,
  kInvalidRoot,
  kInvalidForest,
  kNotATree,
  kDisconnected,
  kNonMetric,
  kInconsistent,
  kTooManyEdges,
  kDomain,
  // Oracle size guards.
  kGuard,
};

inline std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson: return "MalformedJson";
    case ErrorCode::kSchema: return "Schema";
    case ErrorCode::kBadNumber: return "BadNumber";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kNegativePenalty: return "NegativePenalty";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kDuplicateVertex: return "DuplicateVertex";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDanglingVertex: return "DanglingVertex";
    case ErrorCode::kKOutOfRange: return "KOutOfRange";
    case ErrorCode::kInvalidRoot: return "InvalidRoot";
    case ErrorCode::kInvalidForest: return "InvalidForest";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kNonMetric: return "NonMetric";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kTooManyEdges: return "TooManyEdges";
    case ErrorCode::kDomain: return "Domain";
    case ErrorCode::kGuard: return "Guard";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

  bool is_input_error() const { return code_ <= ErrorCode::kDanglingVertex; }
  bool is_guard() const { return code_ == ErrorCode::kGuard; }

 private:
  ErrorCode code_;
};

}  // namespace pcf
