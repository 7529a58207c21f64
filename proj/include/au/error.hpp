#pragma once

#include <stdexcept>
#include <string>

namespace au {

enum class ErrorCode {
  MalformedGenerator,
  EmptyOpen,
  SamePoint,
  EmptySystem,
  MalformedInterval,
  ProductivityViolation,
  BadSchedule,
  IllFormedSelector,
  Overflow,
  ParseError,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedGenerator: return "MalformedGenerator";
    case ErrorCode::EmptyOpen: return "EmptyOpen";
    case ErrorCode::SamePoint: return "SamePoint";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::MalformedInterval: return "MalformedInterval";
    case ErrorCode::ProductivityViolation: return "ProductivityViolation";
    case ErrorCode::BadSchedule: return "BadSchedule";
    case ErrorCode::IllFormedSelector: return "IllFormedSelector";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace au
