#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fusionlab {

enum class ErrorCode {
  NonAssociative,
  OrderCapExceeded,
  InvalidPermutation,
  NotAPGroup,
  NotASubgroup,
  NotNormal,
  NotSylow,
  ObjectOutsideS,
  MorphismNotInF,
  NotGenerated,
  NotCentric,
  ModelValidationFailed,
  NotNormalInF,
  CarrierMismatch,
  JoinNotNormal,
  ChainConditionViolated,
  UnsupportedPrime,
  InternalInconsistency,
  HypothesisViolated,
  SylowMismatch,
  SandwichViolated,
  ParseError,
  CacheCorrupt,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the group-file reader; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fusionlab
