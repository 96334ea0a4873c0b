#include "aslab/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "aslab/budget.hpp"

namespace aslab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::UnsupportedPole: return "UnsupportedPole";
    case ErrorCode::CapExhausted: return "CapExhausted";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::NotAResidueRoot: return "NotAResidueRoot";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::RootedD: return "RootedD";
    case ErrorCode::NonPositiveVp: return "NonPositiveVp";
    case ErrorCode::OracleDomainError: return "OracleDomainError";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::ResidueMismatch: return "ResidueMismatch";
    case ErrorCode::NonIntegralInput: return "NonIntegralInput";
    case ErrorCode::InconsistentDescriptor: return "InconsistentDescriptor";
    case ErrorCode::IncompatibleComposition: return "IncompatibleComposition";
  }
  return "Unknown";
}

namespace {

std::uint64_t initial_budget() {
  if (const char* env = std::getenv("ASLAB_BUDGET")) {
    try {
      auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return std::uint64_t{1} << 20;
}

std::atomic<std::uint64_t>& budget_slot() {
  static std::atomic<std::uint64_t> slot{initial_budget()};
  return slot;
}

}  // namespace

std::uint64_t budget() { return budget_slot().load(); }

void set_budget(std::uint64_t value) {
  require(value > 0, ErrorCode::InvalidArgument, "budget must be positive");
  budget_slot().store(value);
}

void check_budget(std::uint64_t needed, const char* what) {
  if (needed > budget()) {
    fail(ErrorCode::BudgetExceeded,
         std::string(what) + " needs " + std::to_string(needed) + " > budget " + std::to_string(budget()));
  }
}

}  // namespace aslab
