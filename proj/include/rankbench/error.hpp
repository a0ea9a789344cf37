#pragma once
// Error codes and the single exception type used across the library.

#include <stdexcept>
#include <string>

namespace rankbench {

enum class ErrorCode {
  MalformedCsv,
  UnknownColumn,
  DuplicateCell,
  NonNumericValue,
  EmptyInput,
  MissingPresent,
  IncompleteGrid,
  NonFiniteValue,
  KeyMismatch,
  DegenerateInput,
  LengthMismatch,
  OutOfRange,
  AlgorithmSetMismatch,
  NonPositiveWeight,
  UnknownTask,
  TooFewTasks,
  TooManyAlgorithms,
  InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::DuplicateCell: return "DuplicateCell";
    case ErrorCode::NonNumericValue: return "NonNumericValue";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingPresent: return "MissingPresent";
    case ErrorCode::IncompleteGrid: return "IncompleteGrid";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AlgorithmSetMismatch: return "AlgorithmSetMismatch";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::UnknownTask: return "UnknownTask";
    case ErrorCode::TooFewTasks: return "TooFewTasks";
    case ErrorCode::TooManyAlgorithms: return "TooManyAlgorithms";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rankbench
