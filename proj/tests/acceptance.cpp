// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero on any FAIL.
// Every comparison is exact; each criterion also has a wall-clock limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "lgroup/cfg.hpp"
#include "lgroup/hall.hpp"
#include "lgroup/halting.hpp"
#include "lgroup/lsystems.hpp"
#include "lgroup/nilpotent.hpp"
#include "lgroup/presentations.hpp"
#include "lgroup/quotients.hpp"

using namespace lgroup;

namespace {

std::string fixture(const std::string& name) { return std::string(LGROUP_FIXTURES) + "/" + name; }

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << "exception: " << e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = s < limit_s;
  bool pass = o.ok && in_time;
  failures += !pass;
  std::printf("%s %2d %-34s %8.3f s (limit %g s)%s%s\n", pass ? "PASS" : "FAIL", id, title, s, limit_s,
              in_time ? "" : " over time", o.note.str().empty() ? "" : ("  " + o.note.str()).c_str());
  std::fflush(stdout);
}

const Alphabet& ab() {
  static const Alphabet al = group_alphabet({"a", "b"});
  return al;
}

Word random_word(std::mt19937_64& rng, const Alphabet& a, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), let(0, a.size() - 1);
  Word w(len(rng));
  for (int& x : w) x = let(rng);
  return w;
}

std::set<std::string> text_set(const Alphabet& a, const WordSet& ws, bool reduce = false) {
  std::set<std::string> out;
  for (const Word& w : ws) {
    Word r = reduce ? free_reduce(a, w) : w;
    if (!reduce || !r.empty()) out.insert(format_word(a, r));
  }
  return out;
}

bool subset(const std::set<std::string>& x, const std::set<std::string>& y) {
  for (const auto& s : x)
    if (!y.count(s)) return false;
  return true;
}

std::set<std::string> drop_eps(std::set<std::string> s) {
  s.erase("eps");
  return s;
}

// 1. f_k in the matrix models M_n.
void table(Outcome& o) {
  int rows = 0;
  for (int n = 4; n <= 12; ++n)
    for (int k = 1; k <= n - 3; ++k) {
      auto t = verify_f_k(n, k);
      BigInt want;
      if (k < n - 3) {
        BigInt binom = 1;
        for (int i = 0; i < k - 1; ++i) binom = binom * (n - 4 - i) / (i + 1);
        want = n % 2 ? BigInt(-binom) : binom;
      } else {
        want = n % 2 ? 0 : 2;
      }
      o.require(t.has_value() && *t == want, "n=" + std::to_string(n) + " k=" + std::to_string(k));
      ++rows;
    }
  o.note << rows << " rows";
}

// 2. pi2 quotients against the finite presentations of G / gamma_n.
void pi2_quotients(Outcome& o) {
  MarkedPresentation p = load_presentation(fixture("pi2.pres"));
  for (int n = 2; n <= 6; ++n) {
    auto q = edt0l_nilpotent_quotient(p, n - 1);
    FinitePresentation h = hall_quotient_presentation(n);
    o.require(marked_quotient_nilpotent(q.relators, h, n - 1), "pi2 -> G/gamma_" + std::to_string(n));
    o.require(marked_quotient_nilpotent(h, q.relators, n - 1), "G/gamma_" + std::to_string(n) + " -> pi2");
  }
}

// 3. Lamplighter abelianization.
void lamplighter(Outcome& o) {
  auto q = edt0l_nilpotent_quotient(load_presentation(fixture("lamplighter.pres")), 1);
  auto inv = abelianization(q.relators).invariants;
  o.require(inv == std::vector<Int>{2, 0}, "invariant factors");
  std::ostringstream s;
  for (Int x : inv) s << ' ' << x;
  o.note << "invariants" << s.str();
}

// 4. Free nilpotent ranks.
void free_ranks(Outcome& o) {
  PcPresentation f = nilpotent_quotient(FinitePresentation{{"a", "b"}, {}}, 5);
  o.require(f.layer_ranks() == std::vector<int>{2, 1, 2, 3, 6}, "layer ranks");
  o.require(consistency_check(f).empty(), "consistency");
}

// 5. pc word problem against the Magnus expansion.
void magnus(Outcome& o) {
  std::mt19937_64 rng(2024);
  int trivial = 0, disagree = 0;
  for (int c = 1; c <= 5; ++c) {
    PcPresentation f = nilpotent_quotient(FinitePresentation{{"a", "b"}, {}}, c);
    for (int t = 0; t < 200; ++t) {
      Word u;
      if (t % 2 == 0) {
        u = random_word(rng, ab(), 12);
      } else {
        std::vector<Word> xs;
        int k = (t % 4 == 1) ? c + 1 : std::max(2, c);
        for (int i = 0; i < k; ++i) xs.push_back(random_word(rng, ab(), 1 + (k < 3)));
        u = commutator(ab(), xs);
        if (u.size() > 12) u = random_word(rng, ab(), 12);
      }
      bool m = free_nilpotent_wp(ab(), u, c);
      trivial += m;
      disagree += pc_wp(f, ab(), u) != m;
    }
  }
  o.require(disagree == 0, std::to_string(disagree) + " disagreements");
  o.note << "1000 words, " << trivial << " trivial";
}

// 6. Conversions preserve languages up to the depth offsets.
void conversions(Outcome& o) {
  const int D = 6, cap = 32;
  int checks = 0;
  auto load_sys = [](const char* f) { return load_system(fixture(f)); };
  std::vector<std::pair<std::string, Edt0lSystem>> edt0l;
  for (const char* f : {"an.edt0l", "lamplighter.edt0l", "pi1.edt0l", "pi2.edt0l"})
    edt0l.push_back({f, std::get<Edt0lSystem>(load_sys(f))});
  auto c = std::get<ControlledEdt0l>(load_sys("anbn.cedt0l"));
  edt0l.push_back({"anbn.cedt0l", eliminate_control(c)});

  for (const auto& [name, s] : edt0l) {
    // edt0l_to_hdt0l: same language up to the empty word, same depth.
    Hdt0lSystem h = edt0l_to_hdt0l(s);
    for (int d = 0; d <= D; ++d) {
      auto src = drop_eps(text_set(s.terminal_alphabet(), enumerate(s, d, cap)));
      auto viah = drop_eps(text_set(h.out, enumerate(h, d, cap)));
      o.require(src == viah, "edt0l_to_hdt0l " + name + " depth " + std::to_string(d));
      ++checks;
    }
  }

  std::vector<std::pair<std::string, Hdt0lSystem>> hdt0l{{"doubling.hdt0l", std::get<Hdt0lSystem>(load_sys("doubling.hdt0l"))}};
  for (const auto& [name, s] : edt0l) hdt0l.push_back({name + " via hdt0l", edt0l_to_hdt0l(s)});
  for (const auto& [name, h] : hdt0l) {
    // hdt0l_to_edt0l: offset 1.
    Edt0lSystem e = hdt0l_to_edt0l(h);
    for (int d = 0; d < D; ++d) {
      auto src = text_set(h.out, enumerate(h, d, cap));
      o.require(subset(src, text_set(e.terminal_alphabet(), enumerate(e, d + 1, cap))),
                "hdt0l_to_edt0l " + name + " into depth " + std::to_string(d + 1));
      o.require(subset(text_set(e.terminal_alphabet(), enumerate(e, d, cap)), src),
                "hdt0l_to_edt0l " + name + " back at depth " + std::to_string(d));
      checks += 2;
    }
  }

  // eliminate_control: offset 1.
  Edt0lSystem ec = eliminate_control(c);
  for (int d = 0; d < D; ++d) {
    auto src = text_set(c.sys.terminal_alphabet(), enumerate(c, d, cap));
    o.require(subset(src, text_set(ec.terminal_alphabet(), enumerate(ec, d + 1, cap))), "eliminate_control into");
    o.require(subset(text_set(ec.terminal_alphabet(), enumerate(ec, d, cap)), src), "eliminate_control back");
    checks += 2;
  }

  // dtf0l_fin_to_edt0l: offset from dtf0l_fin_offset.
  auto f = std::get<Dtf0lSystem>(load_sys("doubling.dtf0l"));
  std::vector<std::vector<Word>> extras = {{}, {parse_word(f.alphabet, "b b")}, {parse_word(f.alphabet, "a b^-1")}};
  for (const auto& extra : extras) {
    Edt0lSystem fe = dtf0l_fin_to_edt0l(f, extra);
    int off = dtf0l_fin_offset(f, extra);
    for (int d = 0; d + off <= D; ++d) {
      WordSet src = enumerate(f, d, cap);
      src.insert(extra.begin(), extra.end());
      auto srct = text_set(f.alphabet, src);
      o.require(subset(srct, text_set(fe.terminal_alphabet(), enumerate(fe, d + off, cap))), "dtf0l_fin_to_edt0l into");
      o.require(subset(text_set(fe.terminal_alphabet(), enumerate(fe, d, cap)), srct), "dtf0l_fin_to_edt0l back");
      checks += 2;
    }
  }
  o.note << checks << " inclusion checks";
}

// 7. EDT0L -> L-presentation -> elimination of the inner generators.
MarkedPresentation eliminate_inner(const MarkedPresentation& lp, int depth) {
  const auto& L = std::get<LPresentation>(lp.source);
  Alphabet A = lp.alphabet();
  std::vector<std::pair<std::string, std::string>> defs;
  for (const Word& q : L.Q) defs.push_back({A.name(q[0]), format_word(A, inverse(A, Word(q.begin() + 1, q.end())))});
  MarkedPresentation cur = lp;
  for (const auto& [g, d] : defs) {
    Word def = d == "eps" ? Word{} : parse_word(cur.alphabet(), d);
    cur = tietze_eliminate(cur, g, def, depth, 100000);
  }
  return cur;
}

void round_trip(Outcome& o) {
  const int D = 4, slack = 2, cap = 100000;
  for (const char* f : {"lamplighter.pres", "pi1.pres", "pi2.pres"}) {
    MarkedPresentation p = load_presentation(fixture(f));
    MarkedPresentation lp = edt0l_to_lpresentation(p);
    auto images = text_set(p.alphabet(), relators(p, D, cap), true);
    auto wide = eliminate_inner(lp, D + slack);
    o.require(subset(images, text_set(wide.alphabet(), relators(wide, 0, cap), true)), std::string(f) + " images");
    auto narrow = eliminate_inner(lp, D);
    o.require(subset(text_set(narrow.alphabet(), relators(narrow, 0, cap), true),
                     text_set(p.alphabet(), relators(p, D + slack, cap), true)),
              std::string(f) + " eliminated");
  }
}

// 8. Finite quotients of the lamplighter presentation (generators a, e).
void finite_quotients(Outcome& o) {
  MarkedPresentation p = load_presentation(fixture("lamplighter.pres"));
  o.require(p.generators == std::vector<std::string>{"a", "e"}, "generator order");
  FiniteQuotientStats s2, s3;
  o.require(finite_quotient_test(p, load_finite_group(fixture("z2.group")), {0, 1}, &s2), "Z/2 accepts");
  o.require(!finite_quotient_test(p, load_finite_group(fixture("z3.group")), {0, 1}, &s3), "Z/3 rejects");
  o.require(s2.states <= s2.bound && s3.states <= s3.bound, "state bound");
  o.note << "states " << s2.states << "/" << s2.bound << ", " << s3.states << "/" << s3.bound;
}

// 9. Hall normal forms against the matrix models.
UniTriMatrix from_normal_form(const MatrixModel& mm, const HallElement& h) {
  UniTriMatrix a = mm.a, ai = mm.a.inverse(), x = mat_power(mm.a, h.m);
  auto shifted_b = [&](Int i) { return mat_power(ai, i) * mm.b * mat_power(a, i); };
  for (const auto& [i, e] : h.e) x = x * mat_power(shifted_b(i), e);
  for (const auto& [j, e] : h.c) x = x * mat_power(mat_commutator(shifted_b(0), shifted_b(j)), e);
  return x;
}

void hall_matrices(Outcome& o) {
  std::mt19937_64 rng(17);
  auto zero_shift = [&](int max_len) {
    for (;;) {
      Word x = random_word(rng, ab(), max_len);
      Int s = 0;
      for (int l : x) s += l == 0 ? 1 : l == 1 ? -1 : 0;
      if (s == 0) return x;
    }
  };
  std::vector<MatrixModel> models{matrix_model(7), matrix_model(8), matrix_model(9)};
  int central = 0, mismatches = 0;
  for (int t = 0; t < 500; ++t) {
    Word x;
    if (t % 2 == 0) {
      x = random_word(rng, ab(), 10);
    } else {
      Word u = zero_shift(3), v = zero_shift(2);
      x = concat(concat(inverse(ab(), u), inverse(ab(), v)), concat(u, v));
    }
    HallElement h = hall_from_word(x);
    central += h.is_central();
    std::vector<Int> phi = h.is_central() ? d_to_f_basis(h.c) : std::vector<Int>{};
    for (const MatrixModel& mm : models) {
      int n = mm.a.dim();
      UniTriMatrix img = matrix_image(mm, x);
      bool ok = img == from_normal_form(mm, h);
      if (h.is_central()) {
        ok = ok && img * mm.a == mm.a * img && img * mm.b == mm.b * img;
        BigInt t = 0;
        for (std::size_t k = 1; k <= phi.size() && static_cast<int>(k) <= n - 3; ++k)
          t += BigInt(phi[k - 1]) * *verify_f_k(n, static_cast<int>(k));
        UniTriMatrix want = UniTriMatrix::identity(n);
        want.set(0, n - 1, t);
        ok = ok && img == want;
      }
      mismatches += !ok;
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.require(central >= 100, "too few central words");
  o.note << "500 words, " << central << " central";
}

// 10. The group H of the halting gadget.
void halting(Outcome& o) {
  MachineList ms = load_machines(fixture("machines.tm"));
  o.require(ms.size() == 2 && run_tm(ms[0], 100).halted && run_tm(ms[0], 100).steps == 2 && !run_tm(ms[1], 100000).halted,
            "machine fixture");
  Word f3 = hall_commutator_word(3, {"b"}), f9 = hall_commutator_word(9, {"b"});
  o.require(h_wp(concat(f3, inverse(ab(), f9)), ms), "f3 f9^-1 trivial");
  HallElement f5f25 = hall_mul(hall_commutator(5, {"b"}), hall_inv(hall_commutator(25, {"b"})));
  o.require(!h_wp(f5f25, ms), "f5 f25^-1 nontrivial");
  for (int k = 1; k < 6; ++k) o.require(gamma_probe(1, k, ms, 10000) == ProbeVerdict::Trivial, "probe(1, k<6)");
  for (int k = 6; k < 12; ++k) o.require(gamma_probe(1, k, ms, 10000) == ProbeVerdict::Trivial, "probe(1, k<12) via f3=f9");
  o.require(gamma_probe(1, 12, ms, 10000) == ProbeVerdict::NontrivialUpToBudget, "probe(1, 12)");
  for (int k = 8; k <= 64; ++k)
    o.require(gamma_probe(2, k, ms, 10000) == ProbeVerdict::NontrivialUpToBudget, "probe(2, k>=8)");
}

// 11. Pumping on the a^n b^n grammar.
void pumping(Outcome& o) {
  Cfg g = load_cfg(fixture("anbn.cfg"));
  Cfg cnf = to_cnf(g);
  std::size_t p = pumping_constant(g);
  auto anbn = [&](std::size_t n) {
    Word w(n, g.terminals.at("a"));
    w.insert(w.end(), n, g.terminals.at("b"));
    return w;
  };
  Word r = anbn(p / 2);
  auto d = pumping_decompose(g, r);
  o.require(concat(concat(concat(concat(d.u, d.v), d.w), d.x), d.y) == r, "r = uvwxy");
  o.require(d.v.size() + d.x.size() >= 1, "|vx| >= 1");
  o.require(d.v.size() + d.w.size() + d.x.size() <= p, "|vwx| <= p");
  for (int i = 0; i <= 4; ++i) {
    Word w = d.u;
    for (int k = 0; k < i; ++k) w = concat(w, d.v);
    w = concat(w, d.w);
    for (int k = 0; k < i; ++k) w = concat(w, d.x);
    w = concat(w, d.y);
    o.require(i == 0 ? cyk_accepts(cnf, w) || w.empty() : cyk_accepts(cnf, w), "u v^i w x^i y in L");
  }
  int steps = 0;
  for (Word x = anbn(20); x.size() >= p; ++steps) {
    ShrinkStep s = cf_shrink_step(g, x);
    o.require(s.side.size() <= 2 * p, "|side| <= 2p");
    o.require(s.shorter.size() < x.size(), "|shorter| < |r|");
    x = s.shorter;
  }
  o.note << "p = " << p << ", " << steps << " shrink steps";
}

}  // namespace

int main() {
  criterion(1, "f_k table in M_n, 4 <= n <= 12", 1, table);
  criterion(2, "pi2 quotients vs G/gamma_n", 60, pi2_quotients);
  criterion(3, "lamplighter abelianization", 1, lamplighter);
  criterion(4, "free nilpotent layer ranks", 30, free_ranks);
  criterion(5, "Magnus vs pc word problem", 60, magnus);
  criterion(6, "conversion soundness", 30, conversions);
  criterion(7, "EDT0L / L-presentation round trip", 30, round_trip);
  criterion(8, "finite quotient decisions", 5, finite_quotients);
  criterion(9, "Hall arithmetic vs matrix models", 60, hall_matrices);
  criterion(10, "halting gadget", 5, halting);
  criterion(11, "pumping and shrinking", 1, pumping);
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
