#include <random>

#include "doctest.h"
#include "lgroup/automata.hpp"
#include "lgroup/lsystems.hpp"
#include "support.hpp"

using namespace lgroup;

namespace {

Dfa parity() {
  return parse_dfa_text(
      "[dfa]\nstates = 2\ninitial = 0\naccepting = 0\n"
      "trans 0 a 1\ntrans 1 a 0\n");
}

Dfa at_most_three() {
  return parse_dfa_text(
      "[dfa]\nstates = 5\ninitial = 0\naccepting = 0 1 2 3\n"
      "trans 0 a 1\ntrans 1 a 2\ntrans 2 a 3\ntrans 3 a 4\ntrans 4 a 4\n");
}

std::vector<int> as(int n) { return std::vector<int>(n, 0); }

}  // namespace

TEST_CASE("accepts") {
  Dfa p = parity();
  CHECK(accepts(p, as(0)));
  CHECK(accepts(p, as(2)));
  CHECK_FALSE(accepts(p, as(3)));
  CHECK(accepts(all_accepting_dfa({"x", "y"}), std::vector<std::string>{"x", "y", "y"}));
  CHECK_THROWS_AS(accepts(p, std::vector<std::string>{"b"}), Error);
}

TEST_CASE("product") {
  Dfa p = parity();
  Dfa both = product(p, at_most_three());
  std::vector<int> accepted;
  for (int n = 0; n <= 3; ++n)
    if (accepts(both, as(n))) accepted.push_back(n);
  CHECK(accepted == std::vector<int>{0, 2});
  CHECK(both.states <= p.states * 5);
  for (int n = 0; n <= 6; ++n) {
    CHECK(accepts(product(p, all_accepting_dfa({"a"})), as(n)) == accepts(p, as(n)));
    CHECK_FALSE(accepts(product(p, empty_language_dfa({"a"})), as(n)));
  }
  CHECK_THROWS_AS(product(p, all_accepting_dfa({"b"})), Error);
}

TEST_CASE("dfa text format") {
  Dfa p = parity();
  Dfa q = parse_dfa_text(format_dfa(p));
  CHECK(q.symbols == p.symbols);
  CHECK(q.trans == p.trans);
  CHECK(q.accepting == p.accepting);
  try {
    parse_dfa_text("[dfa]\nstates = 2\ninitial = 0\ntrans 0 a 5\n");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
  }
  CHECK_THROWS_AS(parse_dfa_text("[dfa]\nstates = 2\ninitial = 0\ntrans 0 a 1\n"), ParseError);
}

TEST_CASE("letter tracking on the a^n system") {
  auto sys = std::get<Edt0lSystem>(load_system(lgroup::testing::fixture("an.edt0l")));
  LetterTracking lt = letter_tracking(sys);
  int grow = lt.dfa.symbol("grow"), stop = lt.dfa.symbol("stop");
  CHECK_FALSE(lt.dfa.accepting[lt.dfa.initial]);
  int a = sys.alphabet.at("a");
  for (int q = 0; q < lt.dfa.states; ++q) {
    if (!lt.dfa.accepting[q]) continue;
    int used = 0;
    for (bool b : lt.letters[q]) used += b;
    CHECK((used == 0 || (used == 1 && lt.letters[q][a])));
  }
  CHECK(accepts(lt.dfa, std::vector<int>{grow, grow, stop}));
  CHECK(accepts(lt.dfa, std::vector<int>{stop}));
  CHECK_FALSE(accepts(lt.dfa, std::vector<int>{grow, grow}));
}

TEST_CASE("letter tracking: seed already terminal") {
  auto sys = parse_edt0l_text("[edt0l]\nterminals = a\nnonterminals = N\nseed = a\nmap m { N -> N }\n");
  Dfa d = letter_tracking_dfa(sys);
  CHECK(accepts(d, std::vector<int>{}));
}

TEST_CASE("letter tracking: nonerasing system accepts nothing") {
  auto sys = parse_edt0l_text("[edt0l]\nterminals = a\nnonterminals = N\nseed = N\nmap m { N -> N a }\n");
  Dfa d = letter_tracking_dfa(sys);
  for (int q = 0; q < d.states; ++q) CHECK_FALSE(d.accepting[q]);
}

TEST_CASE("property: letter tracking matches direct application") {
  std::mt19937_64 rng(21);
  auto sys = std::get<Edt0lSystem>(load_system(lgroup::testing::fixture("lamplighter.edt0l")));
  LetterTracking lt = letter_tracking(sys);
  CHECK(lt.dfa.states <= (1 << sys.alphabet.size()));
  Dfa pruned = prune(lt.dfa);
  std::uniform_int_distribution<int> len(0, 6), pick(0, static_cast<int>(sys.maps.size()) - 1);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> u(len(rng));
    for (int& x : u) x = pick(rng);
    Word cur = sys.seed;
    for (int m : u) cur = apply_morphism(sys.maps[m].map, cur);
    CHECK(accepts(lt.dfa, u) == sys.is_terminal_word(cur));
    CHECK(accepts(pruned, u) == accepts(lt.dfa, u));
  }
}
