#pragma once

#include <cstdint>

namespace aslab {

// Global cap on exhaustive enumeration sizes (elements, subsets, candidates).
// Defaults to 2^20; ASLAB_BUDGET overrides it at first use, set_budget() afterwards.
std::uint64_t budget();
void set_budget(std::uint64_t value);

// Throws BudgetExceeded when `needed` exceeds the current budget.
void check_budget(std::uint64_t needed, const char* what);

}  // namespace aslab
