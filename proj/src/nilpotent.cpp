#include "lgroup/nilpotent.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

namespace lgroup {

// ---------------------------------------------------------------- Magnus

TruncPoly TruncPoly::one(int gens, int cap) {
  TruncPoly p;
  p.gens = gens;
  p.cap = cap;
  p.coef[{}] = 1;
  return p;
}

TruncPoly TruncPoly::operator*(const TruncPoly& o) const {
  TruncPoly r;
  r.gens = gens;
  r.cap = std::min(cap, o.cap);
  for (const auto& [m1, c1] : coef)
    for (const auto& [m2, c2] : o.coef) {
      if (static_cast<int>(m1.size() + m2.size()) >= r.cap) continue;
      std::vector<int> m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      Int& slot = r.coef[m];
      slot = checked_add(slot, checked_mul(c1, c2));
      if (slot == 0) r.coef.erase(m);
    }
  return r;
}

bool TruncPoly::is_one_through(int d) const {
  for (const auto& [m, c] : coef) {
    if (m.empty()) {
      if (c != 1) return false;
    } else if (static_cast<int>(m.size()) <= d) {
      return false;
    }
  }
  return coef.count({}) == 1;
}

std::vector<int> positive_letters(const Alphabet& a) {
  std::vector<int> out;
  for (int i = 0; i < a.size(); ++i)
    if (!is_inverse_name(a.name(i))) out.push_back(i);
  return out;
}

namespace {

// For each letter: (index among the positive letters / generators, +-1).
std::vector<std::pair<int, int>> letter_generators(const Alphabet& a, const std::vector<std::string>& gens) {
  std::vector<std::pair<int, int>> out(a.size());
  for (int i = 0; i < a.size(); ++i) {
    bool inv = is_inverse_name(a.name(i));
    std::string base = inv ? base_name(a.name(i)) : a.name(i);
    auto it = std::find(gens.begin(), gens.end(), base);
    if (it == gens.end()) throw Error("letter '" + a.name(i) + "' is not a generator");
    out[i] = {static_cast<int>(it - gens.begin()), inv ? -1 : 1};
  }
  return out;
}

std::vector<std::string> generator_names(const Alphabet& a) {
  std::vector<std::string> g;
  for (int i : positive_letters(a)) g.push_back(a.name(i));
  for (int i = 0; i < a.size(); ++i)
    if (is_inverse_name(a.name(i)) && std::find(g.begin(), g.end(), base_name(a.name(i))) == g.end())
      g.push_back(base_name(a.name(i)));
  return g;
}

}  // namespace

TruncPoly magnus_expand(const Alphabet& a, const Word& w, int cap) {
  auto gens = generator_names(a);
  auto lg = letter_generators(a, gens);
  const int k = static_cast<int>(gens.size());
  TruncPoly r = TruncPoly::one(k, cap);
  for (int x : w) {
    auto [g, sign] = lg[x];
    TruncPoly f = TruncPoly::one(k, cap);
    if (sign > 0) {
      if (cap > 1) f.coef[{g}] = 1;
    } else {
      for (int d = 1; d < cap; ++d) f.coef[std::vector<int>(d, g)] = (d % 2 ? -1 : 1);
    }
    r = r * f;
  }
  return r;
}

bool free_nilpotent_wp(const Alphabet& a, const Word& w, int c) {
  return magnus_expand(a, w, c + 1).is_one_through(c);
}

// ---------------------------------------------------------------- pc basics

int PcPresentation::hirsch_length() const {
  return static_cast<int>(std::count(order.begin(), order.end(), Int{0}));
}

std::vector<int> PcPresentation::layer_ranks() const {
  std::vector<int> r(klass, 0);
  for (int i = 0; i < size(); ++i)
    if (order[i] == 0 && weight[i] >= 1 && weight[i] <= klass) ++r[weight[i] - 1];
  return r;
}

std::vector<std::vector<Int>> PcPresentation::layer_torsion() const {
  std::vector<std::vector<Int>> r(klass);
  for (int i = 0; i < size(); ++i)
    if (order[i] != 0 && weight[i] >= 1 && weight[i] <= klass) r[weight[i] - 1].push_back(order[i]);
  return r;
}

bool PcPresentation::commutes(int j, int i) const {
  return i >= static_cast<int>(conj[j].size()) || conj[j][i].empty();
}

const PcLetters& PcPresentation::conjugate(int j, int i, int sign) const {
  return sign > 0 ? conj[j][i] : conj_inv[j][i];
}

PcLetters to_letters(const PcWord& e) {
  PcLetters out;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) out.push_back({static_cast<int>(i), e[i]});
  return out;
}

PcLetters inverse_letters(const PcLetters& w) {
  PcLetters out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->first, checked_neg(it->second)});
  return out;
}

bool is_identity(const PcWord& e) {
  return std::all_of(e.begin(), e.end(), [](Int x) { return x == 0; });
}

void PcPresentation::finalize() {
  const int m = size();
  if (static_cast<int>(order.size()) != m || static_cast<int>(def.size()) != m) throw Error("pc: field sizes differ");
  power.resize(m);
  conj.resize(m);
  for (int j = 0; j < m; ++j)
    if (static_cast<int>(conj[j].size()) > j) throw Error("pc: conjugate table too long");
  std::vector<bool> central(m, true);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < static_cast<int>(conj[j].size()); ++i)
      if (!conj[j][i].empty()) central[j] = central[i] = false;
  first_central = m;
  while (first_central > 0 && central[first_central - 1]) --first_central;

  conj_inv.assign(m, {});
  for (int j = 0; j < m; ++j) conj_inv[j].resize(conj[j].size());
  for (int i = m - 1; i >= 0; --i) {
    if (order[i] != 0) continue;
    for (int j = m - 1; j > i; --j) {
      if (commutes(j, i)) continue;
      const PcLetters& c = conj[j][i];
      if (c.front() != std::pair<int, Int>{j, 1}) throw Error("pc: conjugate of g" + std::to_string(j + 1) + " must start with it");
      // g_j^{g_i^-1} = g_j v with v = g_i u^-1 g_i^-1, where g_j^{g_i} = g_j u.
      PcLetters w{{i, 1}};
      PcLetters uinv = inverse_letters(PcLetters(c.begin() + 1, c.end()));
      w.insert(w.end(), uinv.begin(), uinv.end());
      w.push_back({i, -1});
      Collector col(*this);
      PcWord x = col.collect(w);
      PcWord y(m, 0);
      y[j] = 1;
      col.multiply(y, to_letters(x));
      conj_inv[j][i] = to_letters(y);
    }
  }
}

// ---------------------------------------------------------------- collection

void Collector::push_word(std::vector<std::pair<int, Int>>& stack, const PcLetters& w, Int times) {
  Int reps = times < 0 ? checked_neg(times) : times;
  if (static_cast<std::uint64_t>(reps) * (w.size() + 1) + stack.size() > budget_ / 4 + 1024)
    throw BudgetExceeded("collection stack too large");
  for (Int r = 0; r < reps; ++r) {
    if (times > 0) {
      for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back(*it);
    } else {
      for (const auto& x : w) stack.push_back({x.first, checked_neg(x.second)});
    }
  }
}

void Collector::multiply(PcWord& e, const PcLetters& w) {
  const int fc = std::min(pc_.first_central, pc_.size());
  std::vector<std::pair<int, Int>> stack(w.rbegin(), w.rend());
  std::vector<std::pair<int, Int>> suffix;
  while (!stack.empty()) {
    auto [k, n] = stack.back();
    stack.pop_back();
    if (n == 0) continue;
    if (++steps_ > budget_) throw BudgetExceeded("collection step budget exhausted");
    const Int o = pc_.order[k];
    if (o != 0 && (n < 0 || n >= o)) {
      // g^n = g^r (g^o)^q
      Int q = floor_div(n, o);
      push_word(stack, pc_.power[k], q);
      stack.push_back({k, n - checked_mul(q, o)});
      continue;
    }
    bool free_path = true;
    for (int j = k + 1; j < fc; ++j)
      if (e[j] != 0 && !pc_.commutes(j, k)) {
        free_path = false;
        break;
      }
    suffix.clear();
    if (free_path) {
      Int v = checked_add(e[k], n);
      if (o != 0 && v >= o) {
        for (int j = k + 1; j < fc; ++j)
          if (e[j] != 0) suffix.push_back({j, e[j]}), e[j] = 0;
        for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) stack.push_back(*it);
        push_word(stack, pc_.power[k], 1);
        e[k] = v - o;
      } else {
        e[k] = v;
      }
      continue;
    }
    const int s = n > 0 ? 1 : -1;
    stack.push_back({k, n - s});
    for (int j = k + 1; j < fc; ++j)
      if (e[j] != 0) suffix.push_back({j, e[j]}), e[j] = 0;
    for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
      if (pc_.commutes(it->first, k))
        stack.push_back(*it);
      else
        push_word(stack, pc_.conjugate(it->first, k, s), it->second);
    }
    e[k] += s;
    if (o != 0 && e[k] == o) {
      e[k] = 0;
      push_word(stack, pc_.power[k], 1);
    }
  }
}

PcWord Collector::collect(const PcLetters& w) {
  PcWord e(pc_.size(), 0);
  multiply(e, w);
  return e;
}

PcWord collect(const PcPresentation& pc, const PcLetters& w) { return Collector(pc).collect(w); }

// ---------------------------------------------------------------- consistency

namespace {

using CheckSink = std::function<void(const std::string&, const PcWord&, const PcWord&)>;

// Overlap tests; every pair of sides is equal in the group the relations define.
void run_checks(const PcPresentation& pc, Collector& col, int weight_limit, const CheckSink& sink) {
  const int m = pc.size();
  auto unit = [&](int i, Int x = 1) {
    PcWord e(m, 0);
    e[i] = x;
    return e;
  };
  auto times = [&](PcWord e, const PcLetters& w) {
    col.multiply(e, w);
    return e;
  };
  auto nf = [&](const PcLetters& w) { return col.collect(w); };
  auto name = [](const char* kind, int a, int b = -1, int c = -1) {
    std::string s = std::string(kind) + " " + std::to_string(a + 1);
    if (b >= 0) s += " " + std::to_string(b + 1);
    if (c >= 0) s += " " + std::to_string(c + 1);
    return s;
  };
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        if (pc.weight[i] + pc.weight[j] + pc.weight[k] > weight_limit) continue;
        if (k >= pc.first_central && j >= pc.first_central) continue;
        PcWord lhs = times(nf({{k, 1}, {j, 1}}), {{i, 1}});
        PcWord rhs = times(unit(k), to_letters(nf({{j, 1}, {i, 1}})));
        sink(name("kji", k, j, i), lhs, rhs);
      }
  for (int j = 0; j < m; ++j) {
    if (pc.order[j] == 0) continue;
    const Int o = pc.order[j];
    sink(name("ii^o", j), times(unit(j), pc.power[j]), times(nf(pc.power[j]), {{j, 1}}));
    for (int i = 0; i < j; ++i) {
      PcWord lhs = times(nf(pc.power[j]), {{i, 1}});
      PcWord rhs = times(unit(j, o - 1), to_letters(nf({{j, 1}, {i, 1}})));
      sink(name("j^o i", j, i), lhs, rhs);
    }
    for (int k = j + 1; k < m; ++k) {
      PcWord lhs = times(unit(k), pc.power[j]);
      PcWord rhs = times(nf({{k, 1}, {j, 1}}), {{j, o - 1}});
      sink(name("k j^o", k, j), lhs, rhs);
    }
  }
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i) {
      if (pc.commutes(j, i)) continue;
      if (pc.order[i] == 0) sink(name("j i^-1 i", j, i), unit(j), times(nf({{j, 1}, {i, -1}}), {{i, 1}}));
      if (pc.order[j] == 0) sink(name("j j^-1 i", j, i), unit(i), times(unit(j), to_letters(nf({{j, -1}, {i, 1}}))));
      if (pc.order[i] == 0 && pc.order[j] == 0)
        sink(name("j^-1 i^-1 i", j, i), nf({{j, -1}}), times(nf({{j, -1}, {i, -1}}), {{i, 1}}));
    }
}

std::string format_pc_word(const PcLetters& w) {
  if (w.empty()) return "eps";
  std::string s;
  for (const auto& [g, e] : w) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(g + 1);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::vector<ConsistencyViolation> consistency_check(const PcPresentation& pc) {
  std::vector<ConsistencyViolation> out;
  Collector col(pc);
  run_checks(pc, col, std::numeric_limits<int>::max(), [&](const std::string& t, const PcWord& l, const PcWord& r) {
    if (l != r) out.push_back({t, l, r});
  });
  return out;
}

PcLetters epi_image(const PcPresentation& pc, const Alphabet& a, const Word& w) {
  auto lg = letter_generators(a, pc.generators);
  PcLetters out;
  for (int x : w) {
    auto [g, sign] = lg[x];
    const PcLetters& img = pc.epi.at(g);
    if (sign > 0)
      out.insert(out.end(), img.begin(), img.end());
    else {
      PcLetters inv = inverse_letters(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return out;
}

bool pc_wp(const PcPresentation& pc, const Alphabet& a, const Word& w) {
  return is_identity(collect(pc, epi_image(pc, a, w)));
}

// ---------------------------------------------------------------- nilpotent quotient

namespace {

PcPresentation trivial_pc(const FinitePresentation& p) {
  PcPresentation pc;
  pc.generators = p.generators;
  pc.epi.assign(p.generators.size(), {});
  pc.finalize();
  return pc;
}

// Positional images: generator i of the word's alphabet goes to pc.epi[i].
PcLetters positional_image(const PcPresentation& pc, const Word& w) {
  PcLetters out;
  for (int x : w) {
    const PcLetters& img = pc.epi.at(x / 2);
    if (x % 2 == 0)
      out.insert(out.end(), img.begin(), img.end());
    else {
      PcLetters inv = inverse_letters(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return out;
}

// Builds the class-c quotient from the class-(c-1) one. Returns false if the new layer is trivial.
bool nq_step(PcPresentation& P, const FinitePresentation& fp, int c, const NqOptions& opt) {
  const int m = P.size();
  const int ns = static_cast<int>(fp.generators.size());
  std::set<std::tuple<int, int, int>> defined;
  for (const auto& d : P.def) defined.insert({d.kind, d.a, d.b});
  auto is_def = [&](PcDef::Kind k, int a, int b) { return defined.count({k, a, b}) > 0; };

  std::vector<PcDef> tails;
  for (int i = 0; i < m; ++i)
    if (P.order[i] != 0 && !is_def(PcDef::Power, i, -1)) tails.push_back({PcDef::Power, i, -1});
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i)
      if (P.weight[i] + P.weight[j] <= c && !is_def(PcDef::Commutator, j, i)) tails.push_back({PcDef::Commutator, j, i});
  for (int s = 0; s < ns; ++s)
    if (!is_def(PcDef::Image, s, -1)) tails.push_back({PcDef::Image, s, -1});
  const int T = static_cast<int>(tails.size());
  if (static_cast<std::size_t>(T) > opt.max_tails) throw BudgetExceeded("nilpotent_quotient: tail block too large");

  // Covering presentation with a free central tail on every non-defining relation.
  PcPresentation Ps = P;
  for (int t = 0; t < T; ++t) {
    Ps.weight.push_back(c);
    Ps.order.push_back(0);
    Ps.def.push_back(tails[t]);
    Ps.power.push_back({});
    Ps.conj.push_back({});
  }
  for (int j = 0; j < m; ++j) Ps.conj[j].resize(j);
  for (int t = 0; t < T; ++t) {
    const PcDef& d = tails[t];
    if (d.kind == PcDef::Power) {
      Ps.power[d.a].push_back({m + t, 1});
    } else if (d.kind == PcDef::Commutator) {
      PcLetters& r = Ps.conj[d.a][d.b];
      if (r.empty()) r.push_back({d.a, 1});
      r.push_back({m + t, 1});
    } else {
      Ps.epi[d.a].push_back({m + t, 1});
    }
  }
  Ps.finalize();

  Collector col(Ps, opt.collect_budget);
  std::set<std::vector<Int>> rows;
  auto add = [&](const std::string& what, const PcWord& l, const PcWord& r) {
    for (int q = 0; q < m; ++q)
      if (l[q] != r[q]) throw Error("nilpotent_quotient: inconsistent base presentation at " + what);
    std::vector<Int> row(T);
    bool nz = false;
    for (int t = 0; t < T; ++t) {
      row[t] = checked_sub(l[m + t], r[m + t]);
      nz = nz || row[t] != 0;
    }
    if (!nz) return;
    auto lead = std::find_if(row.begin(), row.end(), [](Int x) { return x != 0; });
    if (*lead < 0)
      for (auto& x : row) x = -x;
    rows.insert(std::move(row));
  };
  run_checks(Ps, col, opt.weight_shortcut ? c : std::numeric_limits<int>::max(), add);
  const PcWord zero(Ps.size(), 0);
  for (const Word& r : fp.relators) add("relator", col.collect(positional_image(Ps, r)), zero);

  Matrix A(rows.begin(), rows.end());
  HermiteResult h = hermite(A, T);
  std::vector<int> pivot_row(T, -1);
  for (int r = 0; r < h.rank(); ++r) pivot_row[h.pivots[r]] = r;
  std::vector<int> newidx(T, -1);
  int next = m;
  for (int q = 0; q < T; ++q)
    if (pivot_row[q] < 0 || h.H[pivot_row[q]][q] != 1) newidx[q] = next++;

  // Each tail in terms of the surviving ones.
  std::vector<PcLetters> sub(T);
  for (int q = 0; q < T; ++q) {
    if (newidx[q] >= 0) {
      sub[q] = {{newidx[q], 1}};
      continue;
    }
    const auto& row = h.H[pivot_row[q]];
    for (int q2 = q + 1; q2 < T; ++q2)
      if (row[q2] != 0) {
        if (newidx[q2] < 0) throw Error("nilpotent_quotient: unreduced Hermite form");
        sub[q].push_back({newidx[q2], checked_neg(row[q2])});
      }
  }
  auto substitute = [&](const PcLetters& w) {
    PcLetters out;
    for (const auto& [g, e] : w) {
      if (g < m) {
        out.push_back({g, e});
        continue;
      }
      for (const auto& [g2, e2] : sub[g - m]) out.push_back({g2, checked_mul(e, e2)});
    }
    return out;
  };

  PcPresentation Q = P;
  Q.klass = c;
  for (int q = 0; q < T; ++q) {
    if (newidx[q] < 0) continue;
    Int d = pivot_row[q] >= 0 ? h.H[pivot_row[q]][q] : 0;
    Q.weight.push_back(c);
    Q.order.push_back(d);
    Q.def.push_back(tails[q]);
    PcLetters pw;
    if (d != 0) {
      const auto& row = h.H[pivot_row[q]];
      for (int q2 = q + 1; q2 < T; ++q2)
        if (row[q2] != 0) pw.push_back({newidx[q2], checked_neg(row[q2])});
    }
    Q.power.push_back(pw);
    Q.conj.push_back({});
  }
  for (int i = 0; i < m; ++i) Q.power[i] = substitute(Ps.power[i]);
  for (int j = 0; j < m; ++j) {
    Q.conj[j].assign(j, {});
    for (int i = 0; i < j; ++i) {
      PcLetters r = substitute(Ps.conj[j][i]);
      if (r != PcLetters{{j, 1}}) Q.conj[j][i] = r;
    }
  }
  for (int s = 0; s < ns; ++s) Q.epi[s] = substitute(Ps.epi[s]);
  Q.finalize();

  // Bring every right-hand side to normal form.
  Collector qc(Q, opt.collect_budget);
  auto normal = [&](const PcLetters& w) { return to_letters(qc.collect(w)); };
  for (int i = Q.size() - 1; i >= 0; --i) Q.power[i] = normal(Q.power[i]);
  for (int j = 0; j < Q.size(); ++j)
    for (auto& r : Q.conj[j])
      if (!r.empty()) r = normal(r);
  for (auto& e : Q.epi) e = normal(e);
  Q.finalize();
  P = std::move(Q);
  return next > m;
}

}  // namespace

PcPresentation nilpotent_quotient(const FinitePresentation& p, int c, const NqOptions& opt) {
  if (c < 0) throw Error("nilpotent_quotient: negative class");
  PcPresentation P = trivial_pc(p);
  for (int k = 1; k <= c; ++k)
    if (!nq_step(P, p, k, opt)) break;
  P.klass = c;
  return P;
}

Abelianization abelianization(const FinitePresentation& p) {
  const int n = static_cast<int>(p.generators.size());
  Matrix A;
  for (const Word& r : p.relators) {
    std::vector<Int> row(n, 0);
    for (int x : r) row[x / 2] = checked_add(row[x / 2], x % 2 ? -1 : 1);
    A.push_back(row);
  }
  Abelianization out;
  out.invariants = invariant_factors(A, n);
  out.pc = nilpotent_quotient(p, 1);
  return out;
}

bool marked_quotient_nilpotent(const FinitePresentation& src, const FinitePresentation& tgt, int c, const NqOptions& opt) {
  if (src.generators.size() != tgt.generators.size()) throw Error("marked quotient: generator counts differ");
  PcPresentation pc = nilpotent_quotient(tgt, c, opt);
  Collector col(pc, opt.collect_budget);
  for (const Word& r : src.relators)
    if (!is_identity(col.collect(positional_image(pc, r)))) return false;
  return true;
}

bool marked_isomorphic_nilpotent(const FinitePresentation& x, const FinitePresentation& y, int c, const NqOptions& opt) {
  return marked_quotient_nilpotent(x, y, c, opt) && marked_quotient_nilpotent(y, x, c, opt);
}

// ---------------------------------------------------------------- text format

namespace {

int parse_gen_index(const std::string& tok, int m, int line) {
  long long v = parse_int(tok, line);
  if (v < 1 || v > m) throw ParseError(line, "generator index out of range: " + tok);
  return static_cast<int>(v - 1);
}

PcLetters parse_pc_word(const std::string& text, int m, int line) {
  PcLetters out;
  for (const auto& tok : split_ws(text)) {
    if (tok == "eps") continue;
    if (tok.size() < 2 || tok[0] != 'g') throw ParseError(line, "bad pc letter '" + tok + "'");
    auto caret = tok.find('^');
    int g = parse_gen_index(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), m, line);
    Int e = caret == std::string::npos ? 1 : parse_int(tok.substr(caret + 1), line);
    out.push_back({g, e});
  }
  return out;
}

}  // namespace

PcPresentation parse_pc(const std::vector<Line>& lines) {
  if (lines.empty() || lines[0].text != "[pc]") throw ParseError(lines.empty() ? 0 : lines[0].no, "expected [pc]");
  PcPresentation pc;
  std::vector<bool> seen_def;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    auto words = split_ws(ln.text);
    std::string k, v;
    if (words[0] == "gen") {
      if (words.size() != 6 || words[2] != "weight" || words[4] != "order")
        throw ParseError(ln.no, "expected 'gen i weight w order o'");
      if (parse_int(words[1], ln.no) != pc.size() + 1) throw ParseError(ln.no, "generators must be numbered in order");
      pc.weight.push_back(static_cast<int>(parse_int(words[3], ln.no)));
      pc.order.push_back(parse_int(words[5], ln.no));
      pc.def.push_back({});
      seen_def.push_back(false);
      pc.power.push_back({});
      pc.conj.push_back(std::vector<PcLetters>(pc.size() - 1));
      continue;
    }
    auto colon = ln.text.find(':');
    if (words[0] == "pow" || words[0] == "conj" || words[0] == "def" || words[0] == "epi") {
      if (colon == std::string::npos) throw ParseError(ln.no, "expected ':'");
      auto head = split_ws(ln.text.substr(0, colon));
      std::string body = trim(ln.text.substr(colon + 1));
      const int m = pc.size();
      if (words[0] == "pow") {
        if (head.size() != 2) throw ParseError(ln.no, "expected 'pow i : word'");
        pc.power[parse_gen_index(head[1], m, ln.no)] = parse_pc_word(body, m, ln.no);
      } else if (words[0] == "conj") {
        if (head.size() != 3) throw ParseError(ln.no, "expected 'conj j i : word'");
        int j = parse_gen_index(head[1], m, ln.no), i = parse_gen_index(head[2], m, ln.no);
        if (i >= j) throw ParseError(ln.no, "conj needs j > i");
        pc.conj[j][i] = parse_pc_word(body, m, ln.no);
      } else if (words[0] == "def") {
        if (head.size() != 2) throw ParseError(ln.no, "expected 'def i : ...'");
        int g = parse_gen_index(head[1], m, ln.no);
        auto b = split_ws(body);
        if (b.size() == 2 && b[0] == "img") {
          auto it = std::find(pc.generators.begin(), pc.generators.end(), b[1]);
          if (it == pc.generators.end()) throw ParseError(ln.no, "unknown generator '" + b[1] + "'");
          pc.def[g] = {PcDef::Image, static_cast<int>(it - pc.generators.begin()), -1};
        } else if (b.size() == 2 && b[0] == "pow") {
          pc.def[g] = {PcDef::Power, parse_gen_index(b[1], m, ln.no), -1};
        } else if (b.size() == 1 && b[0].size() > 2 && b[0].front() == '[' && b[0].back() == ']') {
          auto parts = split(b[0].substr(1, b[0].size() - 2), ',');
          if (parts.size() != 2) throw ParseError(ln.no, "expected [j,k]");
          pc.def[g] = {PcDef::Commutator, parse_gen_index(trim(parts[0]), m, ln.no), parse_gen_index(trim(parts[1]), m, ln.no)};
        } else {
          throw ParseError(ln.no, "bad definition '" + body + "'");
        }
        seen_def[g] = true;
      } else {
        if (head.size() != 2) throw ParseError(ln.no, "expected 'epi s : word'");
        auto it = std::find(pc.generators.begin(), pc.generators.end(), head[1]);
        if (it == pc.generators.end()) throw ParseError(ln.no, "unknown generator '" + head[1] + "'");
        pc.epi[it - pc.generators.begin()] = parse_pc_word(body, m, ln.no);
      }
      continue;
    }
    if (!key_value(ln.text, k, v)) throw ParseError(ln.no, "unrecognized line '" + ln.text + "'");
    if (k == "generators") {
      pc.generators = split_ws(v);
      pc.epi.assign(pc.generators.size(), {});
    } else if (k == "class") {
      pc.klass = static_cast<int>(parse_int(v, ln.no));
    } else {
      throw ParseError(ln.no, "unknown key '" + k + "'");
    }
  }
  for (int j = 0; j < pc.size(); ++j) {
    if (!seen_def[j]) throw ParseError(lines[0].no, "generator " + std::to_string(j + 1) + " has no definition");
    for (const auto& r : pc.conj[j])
      if (!r.empty() && r.front() != std::pair<int, Int>{j, 1})
        throw ParseError(lines[0].no, "conjugate of g" + std::to_string(j + 1) + " must start with it");
  }
  pc.finalize();
  return pc;
}

PcPresentation parse_pc_text(const std::string& text) {
  std::istringstream in(text);
  return parse_pc(read_lines(in));
}

std::string format_pc(const PcPresentation& pc) {
  std::ostringstream out;
  out << "[pc]\n";
  out << "generators =";
  for (const auto& g : pc.generators) out << ' ' << g;
  out << "\nclass = " << pc.klass << "\n";
  for (int i = 0; i < pc.size(); ++i)
    out << "gen " << i + 1 << " weight " << pc.weight[i] << " order " << pc.order[i] << "\n";
  for (int i = 0; i < pc.size(); ++i) {
    const PcDef& d = pc.def[i];
    out << "def " << i + 1 << " : ";
    if (d.kind == PcDef::Image)
      out << "img " << pc.generators.at(d.a);
    else if (d.kind == PcDef::Power)
      out << "pow " << d.a + 1;
    else
      out << "[" << d.a + 1 << "," << d.b + 1 << "]";
    out << "\n";
  }
  for (int i = 0; i < pc.size(); ++i)
    if (pc.order[i] != 0) out << "pow " << i + 1 << " : " << format_pc_word(pc.power[i]) << "\n";
  for (int j = 0; j < pc.size(); ++j)
    for (int i = 0; i < static_cast<int>(pc.conj[j].size()); ++i)
      if (!pc.conj[j][i].empty()) out << "conj " << j + 1 << " " << i + 1 << " : " << format_pc_word(pc.conj[j][i]) << "\n";
  for (std::size_t s = 0; s < pc.generators.size(); ++s)
    out << "epi " << pc.generators[s] << " : " << format_pc_word(pc.epi[s]) << "\n";
  return out.str();
}

}  // namespace lgroup
