#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twr {

/// Edge weights and table values. Exact 64-bit arithmetic, no floats.
using Weight = std::uint64_t;

/// Sentinel for "no solution". Never stored in a table and never added to.
inline constexpr Weight kInfiniteWeight = UINT64_MAX;

/// Raised on malformed or semantically invalid input files. The CLI maps
/// this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a caller violates a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when weight arithmetic would overflow or touch the sentinel.
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the solvers when a per-instance time budget is exhausted.
class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a + b with overflow and infinity checks.
inline Weight checked_add(Weight a, Weight b) {
  if (a == kInfiniteWeight || b == kInfiniteWeight) {
    throw OverflowError("checked_add: infinity is not a valid addend");
  }
  if (a > kInfiniteWeight - 1 - b) {
    throw OverflowError("checked_add: weight overflow");
  }
  return a + b;
}

}  // namespace twr
