#include "lgroup/hall.hpp"

#include <sstream>

namespace lgroup {

namespace {

// Appends b_j^q to the ordered product B, collecting commutators into c.
void append_b(std::map<Int, Int>& B, std::map<Int, Int>& c, Int j, Int q) {
  if (q == 0) return;
  for (auto it = B.upper_bound(j); it != B.end(); ++it) {
    Int& slot = c[it->first - j];
    slot -= it->second * q;
    if (slot == 0) c.erase(it->first - j);
  }
  Int& e = B[j];
  e += q;
  if (e == 0) B.erase(j);
}

void add_central(std::map<Int, Int>& c, const std::map<Int, Int>& d, Int sign) {
  for (const auto& [j, v] : d) {
    Int& slot = c[j];
    slot += sign * v;
    if (slot == 0) c.erase(j);
  }
}

}  // namespace

HallElement hall_mul(const HallElement& x, const HallElement& y) {
  HallElement r;
  r.m = x.m + y.m;
  // B_x a^{m'} = a^{m'} B_x^{a^{m'}}, and b_i^{a^t} = b_{i+t}.
  for (const auto& [i, p] : x.e) r.e[i + y.m] = p;
  r.c = x.c;
  for (const auto& [j, q] : y.e) append_b(r.e, r.c, j, q);
  add_central(r.c, y.c, 1);
  return r;
}

HallElement hall_inv(const HallElement& x) {
  HallElement r;
  r.m = -x.m;
  for (auto it = x.e.rbegin(); it != x.e.rend(); ++it) append_b(r.e, r.c, it->first - x.m, -it->second);
  add_central(r.c, x.c, -1);
  return r;
}

HallElement hall_a() {
  HallElement a;
  a.m = 1;
  return a;
}

HallElement hall_b() {
  HallElement b;
  b.e[0] = 1;
  return b;
}

HallElement hall_from_word(const Word& w) {
  const HallElement a = hall_a(), b = hall_b(), ai = hall_inv(a), bi = hall_inv(b);
  HallElement r;
  for (int x : w) {
    switch (x) {
      case 0: r = hall_mul(r, a); break;
      case 1: r = hall_mul(r, ai); break;
      case 2: r = hall_mul(r, b); break;
      case 3: r = hall_mul(r, bi); break;
      default: throw Error("hall_from_word: letter out of range");
    }
  }
  return r;
}

std::string format_hall(const HallElement& x) {
  std::ostringstream out;
  auto map_text = [&](const std::map<Int, Int>& m) {
    out << '{';
    bool first = true;
    for (const auto& [k, v] : m) {
      out << (first ? "" : ", ") << k << ": " << v;
      first = false;
    }
    out << '}';
  };
  out << "m = " << x.m << "\nb = ";
  map_text(x.e);
  out << "\nd = ";
  map_text(x.c);
  out << "\n";
  return out.str();
}

std::vector<Int> f_in_d_basis(int n) {
  if (n < 1) throw Error("f_in_d_basis: n must be positive");
  // [b, a^n] = prod_k b_k^{(-1)^{n-k} C(n,k)} modulo the centre, and [b_k, b_0] = d_k^-1.
  std::vector<Int> out(n);
  Int binom = 1;  // C(n, k)
  for (int k = 1; k <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    out[k - 1] = ((n - k) % 2 == 0 ? -1 : 1) * binom;
  }
  return out;
}

std::vector<Int> d_to_f_basis(const std::map<Int, Int>& d) {
  int N = 0;
  for (const auto& [j, v] : d) {
    if (j <= 0) throw Error("d_to_f_basis: d-indices must be positive");
    N = std::max<int>(N, static_cast<int>(j));
  }
  std::vector<Int> k(N + 1, 0), phi(N + 1, 0);
  for (const auto& [j, v] : d) k[j] = v;
  for (int n = N; n >= 1; --n) {
    auto f = f_in_d_basis(n);
    phi[n] = -k[n];  // f_n has d_n-coefficient -1
    for (int i = 1; i <= n; ++i) k[i] -= phi[n] * f[i - 1];
  }
  return {phi.begin() + 1, phi.end()};
}

// ---------------------------------------------------------------- matrices

UniTriMatrix::UniTriMatrix(int n) : n_(n), m_(static_cast<std::size_t>(n) * n) {
  for (int i = 0; i < n; ++i) m_[i * n + i] = 1;
}

void UniTriMatrix::set(int i, int j, BigInt v) {
  if (i >= j) throw Error("UniTriMatrix: only entries above the diagonal may be set");
  m_[i * n_ + j] = std::move(v);
}

UniTriMatrix UniTriMatrix::operator*(const UniTriMatrix& o) const {
  UniTriMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      BigInt s = 0;
      for (int k = i; k <= j; ++k) s += at(i, k) * o.at(k, j);
      r.m_[i * n_ + j] = s;
    }
  return r;
}

UniTriMatrix UniTriMatrix::inverse() const {
  UniTriMatrix r(n_);
  for (int j = 1; j < n_; ++j)
    for (int i = j - 1; i >= 0; --i) {
      BigInt s = 0;
      for (int k = i + 1; k <= j; ++k) s += at(i, k) * r.at(k, j);
      r.m_[i * n_ + j] = -s;
    }
  return r;
}

UniTriMatrix mat_commutator(const UniTriMatrix& x, const UniTriMatrix& y) {
  return x.inverse() * y.inverse() * x * y;
}

UniTriMatrix mat_power(const UniTriMatrix& x, Int e) {
  UniTriMatrix base = e < 0 ? x.inverse() : x;
  UniTriMatrix r = UniTriMatrix::identity(x.dim());
  for (Int k = e < 0 ? -e : e; k > 0; k >>= 1) {
    if (k & 1) r = r * base;
    base = base * base;
  }
  return r;
}

MatrixModel matrix_model(int n) {
  if (n <= 3) throw Error("matrix_model: n must exceed 3");
  MatrixModel mm{UniTriMatrix(n), UniTriMatrix(n), UniTriMatrix(n)};
  for (int i = 0; i + 1 < n; ++i) mm.a.set(i, i + 1, 1);
  mm.b.set(0, 1, 1);
  mm.b.set(n - 2, n - 1, 1);
  mm.c.set(0, n - 1, 1);
  return mm;
}

UniTriMatrix matrix_image(const MatrixModel& mm, const Word& w) {
  const UniTriMatrix ai = mm.a.inverse(), bi = mm.b.inverse();
  UniTriMatrix r = UniTriMatrix::identity(mm.a.dim());
  for (int x : w) {
    switch (x) {
      case 0: r = r * mm.a; break;
      case 1: r = r * ai; break;
      case 2: r = r * mm.b; break;
      case 3: r = r * bi; break;
      default: throw Error("matrix_image: letter out of range");
    }
  }
  return r;
}

std::optional<BigInt> verify_f_k(int n, int k) {
  if (n <= 3 || k < 1 || k > n - 3) throw Error("verify_f_k: need n > 3 and 1 <= k <= n-3");
  MatrixModel mm = matrix_model(n);
  UniTriMatrix g = mm.b;
  for (int i = 0; i < k; ++i) g = mat_commutator(g, mm.a);
  UniTriMatrix f = mat_commutator(g, mm.b);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(i == 0 && j == n - 1) && f.at(i, j) != 0) return std::nullopt;
  return f.at(0, n - 1);
}

BigInt predicted_f_k(int n, int k) {
  if (k == n - 3) return n % 2 == 0 ? 2 : 0;
  BigInt binom = 1;
  for (int i = 1; i <= k - 1; ++i) binom = binom * (n - 4 - i + 1) / i;
  return n % 2 == 0 ? binom : BigInt(-binom);
}

Word hall_commutator_word(int k, const std::vector<std::string>& tail) {
  Alphabet al = group_alphabet({"a", "b"});
  std::vector<Word> xs{{2}};
  for (int i = 0; i < k; ++i) xs.push_back({0});
  for (const auto& t : tail) xs.push_back({al.at(t)});
  return commutator(al, xs);
}

HallElement hall_commutator(int k, const std::vector<std::string>& tail) {
  auto comm = [](const HallElement& x, const HallElement& y) {
    return hall_mul(hall_mul(hall_inv(x), hall_inv(y)), hall_mul(x, y));
  };
  const HallElement a = hall_a(), b = hall_b();
  HallElement g = b;
  for (int i = 0; i < k; ++i) g = comm(g, a);
  for (const auto& t : tail) {
    if (t != "a" && t != "b") throw Error("hall_commutator: entries must be a or b");
    g = comm(g, t == "a" ? a : b);
  }
  return g;
}

MarkedPresentation pi1_edt0l() {
  return parse_presentation_text(
      "[presentation]\ngenerators = a b\nsource = edt0l\n[edt0l]\nterminals = a b\nnonterminals = X B\nseed = X\n"
      "map s1 { X -> B^-1 b^-1 B b a^-1 b^-1 B^-1 b B a }\n"
      "map s2 { X -> B^-1 b^-1 B b b^-1 b^-1 B^-1 b B b }\n"
      "map up { B -> a^-1 B a }\nmap down { B -> a B a^-1 }\nmap emit { X -> eps ; B -> b }\n");
}

MarkedPresentation pi2_edt0l() {
  return parse_presentation_text(
      "[presentation]\ngenerators = a b\nsource = edt0l\n[edt0l]\nterminals = a b\nnonterminals = X C\nseed = X\n"
      "map s1 { X -> b^-1 C^-1 b C a^-1 C^-1 b^-1 C b a }\n"
      "map s2 { X -> b^-1 C^-1 b C b^-1 C^-1 b^-1 C b b }\n"
      "map cmap { C -> C^-1 a^-1 C a }\nmap emit { X -> eps ; C -> b }\n");
}

FinitePresentation hall_quotient_presentation(int n) {
  if (n < 2) throw Error("hall_quotient_presentation: n must be at least 2");
  FinitePresentation p;
  p.generators = {"a", "b"};
  if (n == 2) {
    p.relators.push_back(hall_commutator_word(1, {}));
  } else if (n == 3) {
    p.relators.push_back(hall_commutator_word(2, {}));
    p.relators.push_back(hall_commutator_word(1, {"b"}));
  } else {
    for (int k = 0; k <= n - 3; ++k) {
      p.relators.push_back(hall_commutator_word(k, {"b", "a"}));
      p.relators.push_back(hall_commutator_word(k, {"b", "b"}));
    }
    p.relators.push_back(hall_commutator_word(n - 1, {}));
    p.relators.push_back(hall_commutator_word(n - 2, {"b"}));
  }
  return p;
}

}  // namespace lgroup
