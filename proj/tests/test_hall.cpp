#include <random>
#include <set>

#include "doctest.h"
#include "lgroup/hall.hpp"
#include "lgroup/quotients.hpp"
#include "support.hpp"

using namespace lgroup;
using lgroup::testing::fixture;

namespace {

const Alphabet& ab() {
  static const Alphabet al = group_alphabet({"a", "b"});
  return al;
}

Word w(const std::string& s) { return parse_word(ab(), s); }

std::set<std::string> words_text(const MarkedPresentation& p, int depth) {
  std::set<std::string> out;
  for (const Word& x : relators(p, depth, 4000)) out.insert(format_word(p.alphabet(), x));
  return out;
}

// Matrix predicted for a central element from its f-coordinates.
UniTriMatrix predicted_matrix(int n, const std::vector<Int>& phi) {
  MatrixModel mm = matrix_model(n);
  BigInt t = 0;
  for (std::size_t k = 1; k <= phi.size(); ++k) {
    if (static_cast<int>(k) > n - 3) break;  // f_k lies in gamma_{k+2}, trivial in M_n beyond n-3
    t += BigInt(phi[k - 1]) * *verify_f_k(n, static_cast<int>(k));
  }
  UniTriMatrix m = UniTriMatrix::identity(n);
  m.set(0, n - 1, t);
  return m;
}

Word random_zero_shift(std::mt19937_64& rng, int max_len) {
  for (;;) {
    Word x = lgroup::testing::random_word(rng, ab(), max_len);
    Int s = 0;
    for (int l : x) s += l == 0 ? 1 : l == 1 ? -1 : 0;
    if (s == 0) return x;
  }
}

}  // namespace

TEST_CASE("hall arithmetic examples") {
  HallElement x = hall_from_word(w("a b a^-1 b b a"));
  CHECK(hall_mul(x, hall_inv(x)).is_identity());
  CHECK(hall_mul(hall_inv(x), x).is_identity());
  CHECK(hall_from_word({}).is_identity());

  HallElement b1 = hall_from_word(w("a^-1 b a"));
  CHECK(b1.m == 0);
  CHECK(b1.e == std::map<Int, Int>{{1, 1}});

  HallElement ba = hall_from_word(commutator(ab(), w("b"), w("a")));
  CHECK(ba.m == 0);
  CHECK(ba.e == std::map<Int, Int>{{0, -1}, {1, 1}});
  CHECK(ba.c.empty());

  HallElement f1 = hall_from_word(hall_commutator_word(1, {"b"}));
  CHECK(f1.is_central());
  CHECK(f1.c == std::map<Int, Int>{{1, -1}});

  HallElement f2 = hall_from_word(hall_commutator_word(2, {"b"}));
  CHECK(f2.is_central());
  CHECK(f2.c.at(2) == -1);
}

TEST_CASE("hall arithmetic is a group law") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    Word x = lgroup::testing::random_word(rng, ab(), 8), y = lgroup::testing::random_word(rng, ab(), 8),
         z = lgroup::testing::random_word(rng, ab(), 8);
    HallElement X = hall_from_word(x), Y = hall_from_word(y), Z = hall_from_word(z);
    CHECK(hall_mul(hall_mul(X, Y), Z) == hall_mul(X, hall_mul(Y, Z)));
    CHECK(hall_from_word(concat(x, y)) == hall_mul(X, Y));
    CHECK(hall_from_word(inverse(ab(), x)) == hall_inv(X));
    CHECK(hall_from_word(free_reduce(ab(), x)) == X);
  }
  // d_j is central and d_j = [b_t, b_{t+j}].
  for (int t = -2; t <= 2; ++t)
    for (int j = 1; j <= 3; ++j) {
      HallElement bt = hall_from_word(concat(concat(power(ab(), w("a"), -t), w("b")), power(ab(), w("a"), t)));
      HallElement bj = hall_from_word(concat(concat(power(ab(), w("a"), -(t + j)), w("b")), power(ab(), w("a"), t + j)));
      HallElement d = hall_mul(hall_mul(hall_inv(bt), hall_inv(bj)), hall_mul(bt, bj));
      CHECK(d.is_central());
      CHECK(d.c == std::map<Int, Int>{{j, 1}});
    }
}

TEST_CASE("f in the d basis") {
  CHECK(f_in_d_basis(1) == std::vector<Int>{-1});
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    auto f = f_in_d_basis(n);
    CHECK(f.back() == -1);
    HallElement h = hall_from_word(hall_commutator_word(n, {"b"}));
    REQUIRE(h.is_central());
    std::vector<Int> coords(n, 0);
    for (const auto& [j, v] : h.c) coords.at(j - 1) = v;
    CHECK(coords == f);
  }
  // f_1, f_3, ..., f_{2n-3} are triangular with -1 on the diagonal, hence independent.
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k <= 2 * n - 3; k += 2) CHECK(f_in_d_basis(k)[k - 1] == -1);
  std::map<Int, Int> d{{1, 3}, {2, -1}, {4, 2}};
  auto phi = d_to_f_basis(d);
  std::map<Int, Int> back;
  for (std::size_t k = 1; k <= phi.size(); ++k) {
    auto f = f_in_d_basis(static_cast<int>(k));
    for (std::size_t j = 1; j <= k; ++j) back[j] += phi[k - 1] * f[j - 1];
  }
  for (auto it = back.begin(); it != back.end();) it = it->second == 0 ? back.erase(it) : std::next(it);
  CHECK(back == d);
}

TEST_CASE("matrix model") {
  MatrixModel m5 = matrix_model(5);
  CHECK(m5.a * m5.c == m5.c * m5.a);
  CHECK(m5.b * m5.c == m5.c * m5.b);
  int ones = 0;
  for (int i = 0; i + 1 < 5; ++i) ones += m5.a.at(i, i + 1) == 1;
  CHECK(ones == 4);
  for (int n = 4; n <= 9; ++n) {
    MatrixModel mm = matrix_model(n);
    int nz = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) nz += mm.b.at(i, j) != 0;
    CHECK(nz == 2);
    CHECK(mm.b.at(0, 1) == 1);
    CHECK(mm.b.at(n - 2, n - 1) == 1);
    CHECK((mm.a * mm.a.inverse()).is_identity());
    CHECK(mat_power(mm.a, -3) == mat_power(mm.a.inverse(), 3));
  }
  CHECK_THROWS_AS(matrix_model(3), Error);
}

TEST_CASE("f_k in the matrix models") {
  CHECK(*verify_f_k(7, 2) == -3);
  for (int n = 4; n <= 12; ++n)
    for (int k = 1; k <= n - 3; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      auto t = verify_f_k(n, k);
      REQUIRE(t.has_value());
      CHECK(*t == predicted_f_k(n, k));
    }
  CHECK(*verify_f_k(9, 6) == 0);
  CHECK(*verify_f_k(10, 7) == 2);
  // [b, a (n-2 times)] is central in M_n.
  for (int n = 4; n <= 10; ++n) {
    MatrixModel mm = matrix_model(n);
    UniTriMatrix g = matrix_image(mm, hall_commutator_word(n - 2, {}));
    CHECK(g * mm.a == mm.a * g);
    CHECK(g * mm.b == mm.b * g);
  }
}

TEST_CASE("hall arithmetic against the matrix models") {
  std::mt19937_64 rng(17);
  int central = 0;
  for (int t = 0; t < 500; ++t) {
    Word x;
    if (t % 2 == 0) {
      x = lgroup::testing::random_word(rng, ab(), 10);
    } else {
      Word u = random_zero_shift(rng, 3), v = random_zero_shift(rng, 2);
      x = concat(concat(inverse(ab(), u), inverse(ab(), v)), concat(u, v));
    }
    HallElement h = hall_from_word(x);
    if (!h.is_central()) continue;
    ++central;
    auto phi = d_to_f_basis(h.c);
    for (int n : {7, 8, 9}) {
      CAPTURE(format_word(ab(), x));
      CHECK(matrix_image(matrix_model(n), x) == predicted_matrix(n, phi));
    }
  }
  CHECK(central > 100);
}

TEST_CASE("hall arithmetic against the class-4 quotient") {
  auto q = edt0l_nilpotent_quotient(pi2_edt0l(), 4);
  std::mt19937_64 rng(23);
  int central = 0;
  for (int t = 0; t < 400; ++t) {
    Word x = lgroup::testing::random_word(rng, ab(), 8);
    Word y = lgroup::testing::random_word(rng, ab(), 8);
    Word r = concat(x, inverse(ab(), y));
    HallElement h = hall_from_word(r);
    if (h.is_identity()) CHECK(pc_wp(q.pc, ab(), r));
    if (h.is_central()) {
      ++central;
      // f_2 dies in G/gamma_5 and f_k lies in gamma_5 for k >= 3.
      auto phi = d_to_f_basis(h.c);
      bool trivial = phi.empty() || phi[0] == 0;
      CHECK(pc_wp(q.pc, ab(), r) == trivial);
    }
  }
  CHECK(central > 20);
}

TEST_CASE("pi1 and pi2 grammars") {
  CHECK(words_text(pi1_edt0l(), 5) == words_text(load_presentation(fixture("pi1.pres")), 5));
  CHECK(words_text(pi2_edt0l(), 5) == words_text(load_presentation(fixture("pi2.pres")), 5));
  Alphabet al = ab();
  // [b, a^-1 b a, a] after one shift.
  Word b1 = w("a^-1 b a");
  auto r1 = relators(pi1_edt0l(), 3, 4000);
  CHECK(r1.count(commutator(al, {w("b"), b1, w("a")})));
  // pi2 relators are [b, a^k, b, a] and [b, a^k, b, b] up to free reduction.
  std::set<Word> shapes;
  for (int k = 0; k <= 6; ++k)
    for (const char* t : {"a", "b"}) shapes.insert(free_reduce(al, hall_commutator_word(k, {"b", t})));
  for (const Word& r : relators(pi2_edt0l(), 8, 100000)) {
    CAPTURE(format_word(al, r));
    CHECK(shapes.count(free_reduce(al, r)));
  }
  // The n = 0 relators reduce to the empty word.
  CHECK(free_reduce(al, hall_commutator_word(0, {"b", "a"})).empty());
}

TEST_CASE("quotient presentations") {
  for (int n = 2; n <= 6; ++n) {
    auto q = edt0l_nilpotent_quotient(pi2_edt0l(), n - 1);
    CHECK(marked_isomorphic_nilpotent(q.relators, hall_quotient_presentation(n), n - 1));
  }
  CHECK_THROWS_AS(hall_quotient_presentation(1), Error);
}
