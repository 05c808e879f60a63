#include "skelai/error.hpp"

#include <sstream>

namespace skel {

std::string SourceSpan::to_string() const {
  std::ostringstream os;
  os << (file.empty() ? "<input>" : file) << ':' << start_line << ':' << start_col;
  if (end_line != start_line || end_col != start_col) os << '-' << end_line << ':' << end_col;
  return os.str();
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Redeclaration: return "RedeclarationError";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::UnboundName: return "UnboundName";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::MissingInstantiation: return "MissingInstantiation";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::ArityViolation: return "ArityViolation";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::TopFunctionApplied: return "TopFunctionApplied";
    case ErrorKind::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorKind::HookShapeMismatch: return "HookShapeMismatch";
  }
  return "Error";
}

static std::string decorate(ErrorKind kind, const std::string& message, const std::optional<SourceSpan>& span) {
  std::string out = to_string(kind);
  if (span) out += " at " + span->to_string();
  return out + ": " + message;
}

SkelError::SkelError(ErrorKind kind, const std::string& message, std::optional<SourceSpan> span)
    : std::runtime_error(decorate(kind, message, span)), kind_(kind), message_(message), span_(std::move(span)) {}

void fail(ErrorKind kind, const std::string& message, std::optional<SourceSpan> span) {
  throw SkelError(kind, message, std::move(span));
}

}  // namespace skel
