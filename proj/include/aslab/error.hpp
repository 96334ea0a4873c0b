#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aslab {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  BudgetExceeded,
  DivisionByZero,
  ZeroArgument,
  UnsupportedPole,
  CapExhausted,
  InsufficientPrecision,
  NotAResidueRoot,
  NonUnit,
  RootedD,
  NonPositiveVp,
  OracleDomainError,
  WindowTooSmall,
  SearchExhausted,
  ResidueMismatch,
  NonIntegralInput,
  InconsistentDescriptor,
  IncompatibleComposition,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace aslab
