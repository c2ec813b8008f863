#include <deque>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "lgroup/cfg.hpp"
#include "support.hpp"

using namespace lgroup;

namespace {

Word ab(const Cfg& g, int n, int m) {
  Word w(n, g.terminals.at("a"));
  w.insert(w.end(), m, g.terminals.at("b"));
  return w;
}

std::vector<int> exponent_sums(const Alphabet& a, const Word& w) {
  std::vector<int> e(a.size() / 2, 0);
  for (int x : w) e[x / 2] += (x % 2 ? -1 : 1);
  return e;
}

// Terminal words derivable by at most `steps` leftmost rewrites.
std::set<Word> derivable(const Cfg& g, int steps, std::size_t max_len) {
  std::set<Word> out;
  std::set<std::vector<CfgSymbol>> seen;
  std::deque<std::pair<std::vector<CfgSymbol>, int>> q;
  q.push_back({{CfgSymbol{true, g.start}}, 0});
  while (!q.empty()) {
    auto [form, d] = q.front();
    q.pop_front();
    std::size_t pos = form.size();
    std::size_t terms = 0;
    for (std::size_t i = 0; i < form.size(); ++i) {
      if (form[i].nonterminal && pos == form.size()) pos = i;
      if (!form[i].nonterminal) ++terms;
    }
    if (terms > max_len) continue;
    if (pos == form.size()) {
      Word w;
      for (auto s : form) w.push_back(s.id);
      out.insert(w);
      continue;
    }
    if (d == steps) continue;
    for (const auto& r : g.rules) {
      if (r.lhs != form[pos].id) continue;
      std::vector<CfgSymbol> nf(form.begin(), form.begin() + pos);
      nf.insert(nf.end(), r.rhs.begin(), r.rhs.end());
      nf.insert(nf.end(), form.begin() + pos + 1, form.end());
      if (seen.insert(nf).second) q.push_back({nf, d + 1});
    }
  }
  return out;
}

Cfg random_grammar(std::mt19937_64& rng) {
  Cfg g;
  g.terminals = group_alphabet({"a", "b"});
  g.nonterminals = {"S", "A", "B"};
  g.start = 0;
  std::uniform_int_distribution<int> nrules(3, 6), len(0, 3), kind(0, 2), nt(0, 2), t(0, 1);
  int n = nrules(rng);
  for (int i = 0; i < n; ++i) {
    CfgRule r{i < 3 ? i : nt(rng), {}};
    int l = len(rng);
    for (int k = 0; k < l; ++k) r.rhs.push_back(kind(rng) == 0 ? CfgSymbol{true, nt(rng)} : CfgSymbol{false, 2 * t(rng)});
    g.rules.push_back(r);
  }
  return g;
}

}  // namespace

TEST_CASE("to_cnf and pumping constant") {
  Cfg g = load_cfg(lgroup::testing::fixture("anbn.cfg"));
  Cfg c = to_cnf(g);
  CHECK(is_cnf(c));
  CHECK(cyk_accepts(c, ab(g, 2, 2)));
  CHECK(cyk_accepts(c, ab(g, 1, 1)));
  CHECK_FALSE(cyk_accepts(c, ab(g, 2, 1)));
  CHECK_FALSE(cyk_accepts(c, {}));
  CHECK(pumping_constant(g) == (std::size_t{1} << c.nonterminals.size()));
  CHECK(c.nonterminals.size() == 4);

  Cfg one = parse_cfg_text("[cfg]\nstart = S\nrule S -> a\n");
  CHECK(is_cnf(one));
  CHECK(to_cnf(one).rules == one.rules);
  CHECK(pumping_constant(one) == 2);

  Cfg three = parse_cfg_text("[cfg]\nstart = S\nrule S -> A B\nrule A -> a\nrule B -> b\n");
  CHECK(to_cnf(three).rules == three.rules);
  CHECK(pumping_constant(three) == 8);
}

TEST_CASE("pumping decomposition on a^n b^n") {
  Cfg g = load_cfg(lgroup::testing::fixture("anbn.cfg"));
  Cfg c = to_cnf(g);
  std::size_t p = pumping_constant(g);
  int half = static_cast<int>(p / 2);
  Word r = ab(g, half, half);
  auto d = pumping_decompose(g, r);
  CHECK(concat(concat(concat(concat(d.u, d.v), d.w), d.x), d.y) == r);
  CHECK(d.v.size() + d.x.size() >= 1);
  CHECK(d.v.size() + d.w.size() + d.x.size() <= p);
  for (int k : {0, 2, 3}) {
    Word pumped = d.u;
    for (int i = 0; i < k; ++i) pumped = concat(pumped, d.v);
    pumped = concat(pumped, d.w);
    for (int i = 0; i < k; ++i) pumped = concat(pumped, d.x);
    pumped = concat(pumped, d.y);
    CHECK(cyk_accepts(c, pumped));
  }
  CHECK(concat(concat(d.u, d.w), d.y) == ab(g, half - 1, half - 1));
  CHECK_THROWS_AS(pumping_decompose(g, ab(g, 4, 4)), Error);
  CHECK_THROWS_AS(pumping_decompose(g, ab(g, half + 1, half)), Error);
}

TEST_CASE("shrink steps") {
  Cfg g = load_cfg(lgroup::testing::fixture("anbn.cfg"));
  std::size_t p = pumping_constant(g);
  Word r = ab(g, 20, 20);
  int steps = 0;
  while (r.size() >= p) {
    auto s = cf_shrink_step(g, r);
    CHECK(s.side.size() <= 2 * p);
    CHECK(s.shorter.size() < r.size());
    auto lhs = exponent_sums(g.terminals, r);
    auto rhs = exponent_sums(g.terminals, concat(s.shorter, s.side));
    CHECK(lhs == rhs);
    r = s.shorter;
    ++steps;
  }
  CHECK(steps > 0);
  CHECK(r.size() < p);
}

TEST_CASE("property: CYK agrees with derivation search") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Cfg g = random_grammar(rng);
    Cfg c = to_cnf(g);
    REQUIRE(is_cnf(c));
    auto small = derivable(g, 8, 4);
    auto large = derivable(g, 16, 4);
    for (const auto& w : small)
      if (!w.empty()) CHECK(cyk_accepts(c, w));
    for (int len = 1; len <= 4; ++len)
      for (int bits = 0; bits < (1 << len); ++bits) {
        Word w;
        for (int i = 0; i < len; ++i) w.push_back(((bits >> i) & 1) ? 2 : 0);
        if (cyk_accepts(c, w)) CHECK(large.count(w));
      }
  }
}

TEST_CASE("cfg text format") {
  Cfg g = load_cfg(lgroup::testing::fixture("anbn.cfg"));
  Cfg h = parse_cfg_text(format_cfg(g));
  CHECK(h.rules == g.rules);
  CHECK(h.nonterminals == g.nonterminals);
  try {
    parse_cfg_text("[cfg]\nterminals = a\nstart = S\nrule S -> a c\n");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
  }
}
