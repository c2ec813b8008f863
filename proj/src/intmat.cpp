#include "lgroup/intmat.hpp"

#include <algorithm>
#include <limits>
#include <cstdlib>

namespace lgroup {

namespace {

bool g_verify = false;

Matrix identity(int n) {
  Matrix I(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

// Exact product check: A*B == C, accumulating in 128 bits.
bool product_equals(const Matrix& A, const Matrix& B, const Matrix& C, int inner, int cols) {
  for (std::size_t i = 0; i < A.size(); ++i)
    for (int j = 0; j < cols; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < inner; ++k) {
        if (A[i][k] == 0 || B[k][j] == 0) continue;
        __int128 p = static_cast<__int128>(A[i][k]) * B[k][j];
        if (__builtin_add_overflow(acc, p, &acc)) throw BudgetExceeded("verification overflow");
      }
      if (acc != C[i][j]) return false;
    }
  return true;
}

Matrix transpose(const Matrix& M, int rows, int cols) {
  Matrix T(cols, std::vector<Int>(rows, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) T[j][i] = M[i][j];
  return T;
}

// Row operations mirrored on U and, as column operations, on U^-1.
struct RowOps {
  Matrix* M;
  int cols;
  Matrix* U = nullptr;
  Matrix* Uinv = nullptr;

  void swap(int i, int j) {
    if (i == j) return;
    std::swap((*M)[i], (*M)[j]);
    if (U) {
      std::swap((*U)[i], (*U)[j]);
      for (auto& row : *Uinv) std::swap(row[i], row[j]);
    }
  }
  void negate(int i) {
    for (auto& x : (*M)[i]) x = checked_neg(x);
    if (U) {
      for (auto& x : (*U)[i]) x = checked_neg(x);
      for (auto& row : *Uinv) row[i] = checked_neg(row[i]);
    }
  }
  // row i -= q * row j
  void axpy(int i, int j, Int q) {
    if (q == 0) return;
    auto& ri = (*M)[i];
    const auto& rj = (*M)[j];
    for (int c = 0; c < cols; ++c)
      if (rj[c]) ri[c] = checked_sub(ri[c], checked_mul(q, rj[c]));
    if (U) {
      auto& ui = (*U)[i];
      const auto& uj = (*U)[j];
      for (std::size_t c = 0; c < ui.size(); ++c)
        if (uj[c]) ui[c] = checked_sub(ui[c], checked_mul(q, uj[c]));
      for (auto& row : *Uinv) row[j] = checked_add(row[j], checked_mul(q, row[i]));
    }
  }
};

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw BudgetExceeded("integer overflow");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw BudgetExceeded("integer overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw BudgetExceeded("integer overflow");
  return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(Int a, Int b) {
  Int m = a % b;
  if (m < 0) m += (b < 0 ? -b : b);
  return m;
}

void set_verify(bool on) { g_verify = on; }
bool verify_enabled() { return g_verify; }

namespace {

// In-place row Hermite form; row operations are mirrored on U and U^-1 when given.
std::vector<int> hermite_in_place(Matrix& M, int cols, Matrix* U, Matrix* Uinv) {
  const int rows = static_cast<int>(M.size());
  RowOps ops{&M, cols, U, Uinv};
  std::vector<int> pivots;
  int pr = 0;
  for (int c = 0; c < cols && pr < rows; ++c) {
    while (true) {
      int best = -1;
      for (int i = pr; i < rows; ++i)
        if (M[i][c] != 0 && (best < 0 || std::llabs(M[i][c]) < std::llabs(M[best][c]))) best = i;
      if (best < 0) break;
      ops.swap(pr, best);
      bool clean = true;
      for (int i = pr + 1; i < rows; ++i) {
        if (M[i][c] == 0) continue;
        ops.axpy(i, pr, M[i][c] / M[pr][c]);
        if (M[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (M[pr][c] == 0) continue;
    if (M[pr][c] < 0) ops.negate(pr);
    for (int i = 0; i < pr; ++i) ops.axpy(i, pr, floor_div(M[i][c], M[pr][c]));
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

bool is_diagonal(const Matrix& D) {
  for (std::size_t i = 0; i < D.size(); ++i)
    for (std::size_t j = 0; j < D[i].size(); ++j)
      if (i != j && D[i][j] != 0) return false;
  return true;
}

}  // namespace

HermiteResult hermite(const Matrix& A, int cols) {
  HermiteResult res;
  res.H = A;
  const int rows = static_cast<int>(A.size());
  Matrix U, Uinv;
  if (g_verify) {
    U = identity(rows);
    Uinv = identity(rows);
  }
  res.pivots = hermite_in_place(res.H, cols, g_verify ? &U : nullptr, g_verify ? &Uinv : nullptr);
  if (g_verify) {
    if (!product_equals(U, A, res.H, rows, cols)) throw Error("hermite: U*A != H");
    if (!product_equals(U, Uinv, identity(rows), rows, rows)) throw Error("hermite: U not unimodular");
    res.U = U;
  }
  return res;
}

SmithResult smith(const Matrix& A, int cols) {
  SmithResult res;
  const int rows = static_cast<int>(A.size());
  Matrix D = A;
  // Column operations on D are row operations on Vt = V^T.
  Matrix U, Uinv, Vt, Vtinv;
  if (g_verify) {
    U = identity(rows);
    Uinv = identity(rows);
    Vt = identity(cols);
    Vtinv = identity(cols);
  }
  Matrix* pu = g_verify ? &U : nullptr;
  Matrix* pui = g_verify ? &Uinv : nullptr;
  Matrix* pv = g_verify ? &Vt : nullptr;
  Matrix* pvi = g_verify ? &Vtinv : nullptr;
  const int n = std::min(rows, cols);
  bool row_pass = true;
  while (true) {
    if (row_pass) hermite_in_place(D, cols, pu, pui);
    row_pass = true;
    if (!is_diagonal(D)) {
      Matrix T = transpose(D, rows, cols);
      hermite_in_place(T, rows, pv, pvi);
      D = transpose(T, cols, rows);
      if (!is_diagonal(D)) continue;
    }
    int bad = -1, with = -1;
    for (int i = 0; i < n && bad < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (D[i][i] != 0 && D[j][j] % D[i][i] != 0) {
          bad = i;
          with = j;
          break;
        }
    if (bad < 0) break;
    // Row bad += row with; the column pass must come next or the row pass undoes it.
    RowOps{&D, cols, pu, pui}.axpy(bad, with, -1);
    row_pass = false;
  }
  for (int t = 0; t < n && D[t][t] != 0; ++t) res.diagonal.push_back(D[t][t]);
  if (g_verify) {
    Matrix V = transpose(Vt, cols, cols);
    Matrix UA(rows, std::vector<Int>(cols, 0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        __int128 acc = 0;
        for (int k = 0; k < rows; ++k) acc += static_cast<__int128>(U[i][k]) * A[k][j];
        if (acc > std::numeric_limits<Int>::max() || acc < std::numeric_limits<Int>::min())
          throw BudgetExceeded("verification overflow");
        UA[i][j] = static_cast<Int>(acc);
      }
    if (!product_equals(UA, V, D, cols, cols)) throw Error("smith: U*A*V != D");
    if (!product_equals(U, Uinv, identity(rows), rows, rows)) throw Error("smith: U not unimodular");
    if (!product_equals(Vt, Vtinv, identity(cols), cols, cols)) throw Error("smith: V not unimodular");
    for (std::size_t k = 1; k < res.diagonal.size(); ++k)
      if (res.diagonal[k] % res.diagonal[k - 1] != 0) throw Error("smith: divisibility chain broken");
    for (int t = static_cast<int>(res.diagonal.size()); t < n; ++t)
      if (D[t][t] != 0) throw Error("smith: zero before nonzero on the diagonal");
    res.U = U;
    res.V = V;
  }
  res.D = D;
  return res;
}

std::vector<Int> invariant_factors(const Matrix& A, int cols) {
  SmithResult s = smith(A, cols);
  std::vector<Int> out;
  for (Int d : s.diagonal)
    if (d != 1) out.push_back(d);
  std::sort(out.begin(), out.end());
  for (int k = static_cast<int>(s.diagonal.size()); k < cols; ++k) out.push_back(0);
  return out;
}

}  // namespace lgroup
