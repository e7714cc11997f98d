#ifndef STREET_RESULT_HPP_
#define STREET_RESULT_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace street {

enum class ErrorCode {
  kSyntaxError,
  kNonConsecutiveStepId,
  kDanglingPremise,
  kDuplicateStepId,
  kCycleDetected,
  kEmptyStepText,
  kValidationFailed,
  kUnknownNode,
  kMissingAnswerNode,
  kUnparseableAnswerText,
  kTypeMismatch,
  kExactnessBoundExceeded,
  kInvalidAction,
  kInsufficientRaters,
  kExternalScorerUnavailable,
  kFileUnreadable,
  kSchemaError,
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kNonConsecutiveStepId: return "NonConsecutiveStepId";
    case ErrorCode::kDanglingPremise: return "DanglingPremise";
    case ErrorCode::kDuplicateStepId: return "DuplicateStepId";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kEmptyStepText: return "EmptyStepText";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kMissingAnswerNode: return "MissingAnswerNode";
    case ErrorCode::kUnparseableAnswerText: return "UnparseableAnswerText";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kExactnessBoundExceeded: return "ExactnessBoundExceeded";
    case ErrorCode::kInvalidAction: return "InvalidAction";
    case ErrorCode::kInsufficientRaters: return "InsufficientRaters";
    case ErrorCode::kExternalScorerUnavailable: return "ExternalScorerUnavailable";
    case ErrorCode::kFileUnreadable: return "FileUnreadable";
    case ErrorCode::kSchemaError: return "SchemaError";
  }
  return "Unknown";
}

struct Error {
  ErrorCode code;
  std::string message;
  // Byte offset into the parsed input, for syntax errors.
  std::optional<std::size_t> position;

  std::string ToString() const {
    std::string out = ErrorCodeName(code);
    if (position) out += " at " + std::to_string(*position);
    if (!message.empty()) out += ": " + message;
    return out;
  }
};

inline Error MakeError(ErrorCode code, std::string message,
                       std::optional<std::size_t> position = std::nullopt) {
  return Error{code, std::move(message), position};
}

class BadResultAccess : public std::logic_error {
 public:
  explicit BadResultAccess(const Error& error)
      : std::logic_error("value() on error result: " + error.ToString()) {}
};

// Value-or-error return type. Expected failures (malformed input, invalid
// actions) are returned, never thrown.
template <typename T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}  // NOLINT
  Result(Error error) : state_(std::move(error)) {}  // NOLINT

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw BadResultAccess(error());
    return std::get<T>(state_);
  }
  T& value() & {
    if (!ok()) throw BadResultAccess(error());
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!ok()) throw BadResultAccess(error());
    return std::get<T>(std::move(state_));
  }
  const Error& error() const { return std::get<Error>(state_); }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

 private:
  std::variant<T, Error> state_;
};

}  // namespace street

#endif  // STREET_RESULT_HPP_
