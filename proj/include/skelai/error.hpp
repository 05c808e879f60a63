#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace skel {

struct SourceSpan {
  std::string file;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  std::string to_string() const;
};

enum class ErrorKind {
  Parse,
  Redeclaration,
  Type,
  UnboundName,
  InvalidPath,
  UnboundVariable,
  MissingInstantiation,
  FuelExhausted,
  NotAFunction,
  ArityViolation,
  TypeMismatch,
  TopFunctionApplied,
  StepBudgetExceeded,
  HookShapeMismatch,
};

const char* to_string(ErrorKind kind);

class SkelError : public std::runtime_error {
 public:
  SkelError(ErrorKind kind, const std::string& message, std::optional<SourceSpan> span = std::nullopt);

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<SourceSpan> span_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message,
                       std::optional<SourceSpan> span = std::nullopt);

}  // namespace skel
