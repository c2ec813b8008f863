#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lgroup/presentations.hpp"
#include "lgroup/words.hpp"

namespace lgroup {

using BigInt = boost::multiprecision::cpp_int;

// Element a^m * prod_{i ascending} b_i^e(i) * prod_{j > 0} d_j^c(j) of Hall's group G,
// where b_i = a^-i b a^i and d_j = [b_0, b_j] is central. Maps hold no zeros.
//
// Conventions: [x,y] = x^-1 y^-1 x y, so [b_i, b_j] = d_{j-i} and d_{-j} = d_j^-1.
// Moving b_j^q left past b_i^p (i > j) costs d_{i-j}^{-pq}.
struct HallElement {
  Int m = 0;
  std::map<Int, Int> e;
  std::map<Int, Int> c;

  bool is_identity() const { return m == 0 && e.empty() && c.empty(); }
  bool is_central() const { return m == 0 && e.empty(); }
  bool operator==(const HallElement& o) const { return m == o.m && e == o.e && c == o.c; }
};

HallElement hall_mul(const HallElement& x, const HallElement& y);
HallElement hall_inv(const HallElement& x);
HallElement hall_a();
HallElement hall_b();
// Words over group_alphabet({"a", "b"}).
HallElement hall_from_word(const Word& w);
std::string format_hall(const HallElement& x);

// Coordinates of f_n = [b, a (n times), b] in the basis d_1..d_n.
std::vector<Int> f_in_d_basis(int n);
// Coordinates of a central element in the basis f_1..f_N, N the largest d-index.
std::vector<Int> d_to_f_basis(const std::map<Int, Int>& d);

// Upper unitriangular integer matrix.
class UniTriMatrix {
 public:
  explicit UniTriMatrix(int n);
  static UniTriMatrix identity(int n) { return UniTriMatrix(n); }

  int dim() const { return n_; }
  const BigInt& at(int i, int j) const { return m_[i * n_ + j]; }  // 0-based
  void set(int i, int j, BigInt v);

  UniTriMatrix operator*(const UniTriMatrix& o) const;
  UniTriMatrix inverse() const;
  bool operator==(const UniTriMatrix& o) const { return n_ == o.n_ && m_ == o.m_; }
  bool is_identity() const { return *this == identity(n_); }

 private:
  int n_;
  std::vector<BigInt> m_;
};

UniTriMatrix mat_commutator(const UniTriMatrix& x, const UniTriMatrix& y);
UniTriMatrix mat_power(const UniTriMatrix& x, Int e);

struct MatrixModel {
  UniTriMatrix a, b, c;
};
// a = I + sum E_{i,i+1}, b = I + E_{1,2} + E_{n-1,n}, c = I + E_{1,n}; requires n > 3.
MatrixModel matrix_model(int n);
// Image of a word over {a, b} in the matrix model.
UniTriMatrix matrix_image(const MatrixModel& mm, const Word& w);

// t with f_k = c^t in M_n, or nullopt if f_k is not a power of c. Requires n > 3, 1 <= k <= n-3.
std::optional<BigInt> verify_f_k(int n, int k);
// The closed form: (-1)^n C(n-4, k-1) for k < n-3; 0 or 2 at k = n-3 by parity of n.
BigInt predicted_f_k(int n, int k);

// Word for the left-normed commutator [b, a (k times), x...].
Word hall_commutator_word(int k, const std::vector<std::string>& tail);
// The same commutator evaluated in G without expanding the word, whose length grows like 2^k.
HallElement hall_commutator(int k, const std::vector<std::string>& tail);

// The marked presentations of G (pi1', relators for all shifts i, and pi2) as EDT0L sources.
MarkedPresentation pi1_edt0l();
MarkedPresentation pi2_edt0l();
// Finite presentation of G / gamma_n on (a, b), n >= 2.
FinitePresentation hall_quotient_presentation(int n);

}  // namespace lgroup
