#pragma once

#include <vector>

#include "lgroup/words.hpp"

namespace lgroup {

// Overflow-checked int64 arithmetic; overflow throws BudgetExceeded.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);
Int floor_div(Int a, Int b);
Int floor_mod(Int a, Int b);  // result in [0, |b|)

using Matrix = std::vector<std::vector<Int>>;

// Extra exact checks on every matrix factorization (enabled by the test suites).
void set_verify(bool on);
bool verify_enabled();

// Row Hermite form H = U A: pivots positive, entries above a pivot reduced into
// [0, pivot), zero rows last. Pivot columns are listed in `pivots`.
struct HermiteResult {
  Matrix H;
  Matrix U;  // filled only when verification is on
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};
HermiteResult hermite(const Matrix& A, int cols);

// D = U A V with D diagonal, d_1 | d_2 | ..., nonnegative.
struct SmithResult {
  Matrix D;
  Matrix U, V;  // filled only when verification is on
  std::vector<Int> diagonal;  // nonzero diagonal entries in order
};
SmithResult smith(const Matrix& A, int cols);

// Non-unit invariant factors in increasing order followed by one 0 per free rank.
std::vector<Int> invariant_factors(const Matrix& A, int cols);

}  // namespace lgroup
