#pragma once

#include <stdexcept>
#include <string>

namespace chs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionViolation : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct BoundViolation : Error { using Error::Error; };
struct InfeasibleParams : Error { using Error::Error; };
struct LocatorFailure : Error { using Error::Error; };
struct StaircaseFailure : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct BudgetExhausted : Error { using Error::Error; };
struct PrecisionUnderflow : Error { using Error::Error; };
struct SolverNonConvergence : Error { using Error::Error; };
// Reaching one of these means a bug, not bad input.
struct InternalInvariant : Error { using Error::Error; };

}  // namespace chs
