#include <set>

#include "doctest.h"
#include "lgroup/nilpotent.hpp"
#include "lgroup/presentations.hpp"
#include "support.hpp"

using namespace lgroup;
using lgroup::testing::fixture;

namespace {

constexpr int kCap = 100000;

// Reduced nonempty relators as text, so that different generator numberings compare.
std::set<std::string> text_set(const Alphabet& a, const WordSet& ws) {
  std::set<std::string> out;
  for (const Word& w : ws) {
    Word r = free_reduce(a, w);
    if (!r.empty()) out.insert(format_word(a, r));
  }
  return out;
}

std::set<std::string> text_set(const MarkedPresentation& p, int depth) {
  return text_set(p.alphabet(), relators(p, depth, kCap));
}

bool subset(const std::set<std::string>& x, const std::set<std::string>& y) {
  for (const auto& s : x)
    if (!y.count(s)) return false;
  return true;
}

// Eliminates the first `inner` generators of an L-presentation produced by
// edt0l_to_lpresentation, reading each defining word off Q.
MarkedPresentation eliminate_inner(const MarkedPresentation& lp, int depth) {
  const auto& L = std::get<LPresentation>(lp.source);
  Alphabet A = lp.alphabet();
  std::vector<std::pair<std::string, std::string>> defs;
  for (const Word& q : L.Q) {
    Word rest(q.begin() + 1, q.end());
    defs.push_back({A.name(q[0]), format_word(A, inverse(A, rest))});
  }
  MarkedPresentation cur = lp;
  for (const auto& [g, d] : defs) {
    Alphabet B = cur.alphabet();
    Word def = d == "eps" || d.empty() ? Word{} : parse_word(B, d);
    cur = tietze_eliminate(cur, g, def, depth, kCap);
  }
  return cur;
}

FinitePresentation finite_part(const MarkedPresentation& p, int depth) {
  FinitePresentation f;
  f.generators = p.generators;
  for (const Word& w : relators(p, depth, kCap)) f.relators.push_back(w);
  return f;
}

Edt0lSystem small_language(const std::string& image) {
  return parse_edt0l_text("[edt0l]\nterminals = s t\nnonterminals = N\nseed = N\nmap stop { N -> " + image + " }\n");
}

}  // namespace

TEST_CASE("presentation files load") {
  auto lys = load_presentation(fixture("lysenok.pres"));
  CHECK(lys.generators == std::vector<std::string>{"a", "c", "d"});
  CHECK(std::string(lys.source_kind()) == "lpres");
  auto lamp = load_presentation(fixture("lamplighter.pres"));
  CHECK(std::string(lamp.source_kind()) == "edt0l");
  auto fin = parse_presentation_text("[presentation]\ngenerators = a b\nsource = finite\nrelators { a a ; a b a^-1 b^-1 }\n");
  CHECK(fin.is_finite());
  CHECK(relators(fin, 0, kCap).size() == 2);
}

TEST_CASE("presentation parse errors carry line numbers") {
  try {
    parse_presentation_text("[presentation]\ngenerators = a\nsource = finite\nrelators { a b }\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
  }
  CHECK_THROWS_AS(parse_presentation_text("[presentation]\ngenerators = a\nsource = magic\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation_text("[presentation]\nsource = finite\n"), ParseError);
}

TEST_CASE("relators examples") {
  auto lys = load_presentation(fixture("lysenok.pres"));
  Alphabet A = lys.alphabet();
  auto d1 = relators(lys, 1, kCap);
  CHECK(d1.count(parse_word(A, "a c a a c a")));
  CHECK(d1.count(parse_word(A, "a a")));
  CHECK_FALSE(relators(lys, 0, kCap).count(parse_word(A, "a c a a c a")));

  auto lamp = load_presentation(fixture("lamplighter.pres"));
  Alphabet B = lamp.alphabet();
  Word e = parse_word(B, "e");
  Word conj = parse_word(B, "a^-1 e a");
  CHECK(relators(lamp, 2, kCap).count(commutator(B, e, conj)));
  CHECK(relators(lamp, 2, kCap).count(parse_word(B, "e e")));
}

TEST_CASE("Lysenok through DTF0L+FIN matches direct iteration") {
  auto lys = load_presentation(fixture("lysenok.pres"));
  const auto& L = std::get<LPresentation>(lys.source);
  Alphabet A = lys.alphabet();
  auto direct = [&](int n) {
    WordSet out;
    for (Word w : L.R)
      for (int i = 0; i <= n; ++i) {
        out.insert(w);
        w = apply_morphism(L.endos[0].map, w);
      }
    return text_set(A, out);
  };
  auto e = lpresentation_to_dtf0l_fin(lys);
  CHECK(std::string(e.source_kind()) == "edt0l");
  for (int d = 0; d <= 6; ++d) CHECK(subset(text_set(e, d), direct(d)));
  CHECK(subset(direct(3), text_set(e, 5)));
  CHECK(direct(3) == text_set(lys, 3));
}

TEST_CASE("L-presentation with Q and the identity endomorphism") {
  auto p = parse_presentation_text(
      "[presentation]\ngenerators = x y\nsource = lpres\nQ { y y y }\nR { x x }\nendo id { }\n");
  Alphabet A = p.alphabet();
  CHECK(text_set(p, 3) == std::set<std::string>{"x x", "y y y"});
  auto e = lpresentation_to_dtf0l_fin(p);
  CHECK(text_set(e, 1).count("y y y"));
  CHECK(subset(text_set(e, 4), {"x x", "y y y"}));
}

TEST_CASE("EDT0L to L-presentation round trips through elimination") {
  for (const char* f : {"lamplighter.pres", "pi1.pres", "pi2.pres"}) {
    CAPTURE(f);
    auto p = load_presentation(fixture(f));
    auto lp = edt0l_to_lpresentation(p);
    const auto& L = std::get<LPresentation>(lp.source);
    CHECK(L.R.size() == 1);
    const std::size_t inner = lp.generators.size() - p.generators.size();
    CHECK(L.Q.size() == inner);
    CHECK(std::vector<std::string>(lp.generators.end() - p.generators.size(), lp.generators.end()) == p.generators);
    for (int d = 1; d <= 3; ++d) {
      auto back = eliminate_inner(lp, d + 2);
      CHECK(back.generators == p.generators);
      CHECK(subset(text_set(p, d), text_set(back.alphabet(), relators(back, 0, kCap))));
      auto fwd = eliminate_inner(lp, d);
      CHECK(subset(text_set(fwd.alphabet(), relators(fwd, 0, kCap)), text_set(p, d + 2)));
    }
  }
}

TEST_CASE("finite presentation encoded as EDT0L round trips") {
  auto p = parse_presentation_text(
      "[presentation]\ngenerators = a b\nsource = edt0l\n[edt0l]\nterminals = a b\nnonterminals = N\n"
      "seed = N\nmap one { N -> a a }\nmap two { N -> a b a^-1 b^-1 }\n");
  auto lp = edt0l_to_lpresentation(p);
  auto back = eliminate_inner(lp, 4);
  CHECK(text_set(back.alphabet(), relators(back, 0, kCap)) == std::set<std::string>{"a a", "a b a^-1 b^-1"});
}

TEST_CASE("empty language gives only the Q relators") {
  auto p = parse_presentation_text(
      "[presentation]\ngenerators = s\nsource = edt0l\n[edt0l]\nterminals = s\nnonterminals = N M\nseed = N\n"
      "map loop { N -> M ; M -> N }\n");
  auto lp = edt0l_to_lpresentation(p);
  auto back = eliminate_inner(lp, 4);
  CHECK(relators(back, 0, kCap).empty());
}

TEST_CASE("tietze elimination") {
  auto p = parse_presentation_text(
      "[presentation]\ngenerators = a x\nsource = finite\nrelators { x a^-1 a^-1 ; x x x ; a x a^-1 x^-1 }\n");
  Alphabet A = p.alphabet();
  auto q = tietze_eliminate(p, "x", parse_word(A, "a a"));
  CHECK(q.generators == std::vector<std::string>{"a"});
  CHECK(text_set(q, 0) == std::set<std::string>{"a a a a a a"});
  CHECK_THROWS_AS(tietze_eliminate(p, "y", {}), Error);
  CHECK_THROWS_AS(tietze_eliminate(p, "x", parse_word(A, "a x")), Error);
  CHECK_THROWS_AS(tietze_eliminate(p, "x", parse_word(A, "a")), Error);
}

TEST_CASE("change of generators") {
  auto p = parse_presentation_text("[presentation]\ngenerators = a b\nsource = finite\nrelators { a b a^-1 b^-1 }\n");
  Alphabet A = p.alphabet();
  auto same = change_generators(p, {"a", "b"}, {{0}, {2}}, {{0}, {2}});
  CHECK(text_set(same, 0) == text_set(p, 0));

  auto free1 = parse_presentation_text("[presentation]\ngenerators = a\nsource = finite\n");
  auto swapped = change_generators(free1, {"b"}, {{0}}, {{0}});
  CHECK(swapped.generators == std::vector<std::string>{"b"});
  CHECK(text_set(swapped, 0).empty());

  CHECK_THROWS_AS(change_generators(p, {"x", "y"}, {{0}}, {{0}, {0}}), Error);
  CHECK_THROWS_AS(change_generators(p, {"x"}, {{9}}, {{0}, {0}}), Error);
  CHECK_THROWS_AS(change_generators(p, {"x"}, {{0}}, {{0}, {7}}), Error);
}

TEST_CASE("change of generators preserves abelianization") {
  auto lamp = load_presentation(fixture("lamplighter.pres"));
  CHECK(abelianization(finite_part(lamp, 5)).invariants == std::vector<Int>{2, 0});
  Alphabet A = lamp.alphabet();
  Alphabet T = group_alphabet({"x", "y"});
  // x = a, y = a e; a = x, e = x^-1 y.
  auto q = change_generators(lamp, {"x", "y"}, {parse_word(A, "a"), parse_word(A, "a e")},
                             {parse_word(T, "x"), parse_word(T, "x^-1 y")});
  CHECK(q.generators == std::vector<std::string>{"x", "y"});
  CHECK(abelianization(finite_part(q, 6)).invariants == std::vector<Int>{2, 0});
  CHECK(text_set(q, 3).count("x^-1 y x^-1 y"));

  for (const char* f : {"pi1.pres", "pi2.pres", "lysenok.pres"}) {
    CAPTURE(f);
    auto p = load_presentation(fixture(f));
    std::vector<std::string> T2;
    std::vector<Word> wt, ws;
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      T2.push_back("t" + std::to_string(i));
      // t_0 = s_0, t_i = s_{i-1} s_i
      wt.push_back(i == 0 ? Word{0} : Word{2 * static_cast<int>(i) - 2, 2 * static_cast<int>(i)});
      ws.push_back(i == 0 ? Word{0} : Word{2 * static_cast<int>(i) - 1, 2 * static_cast<int>(i)});
    }
    // s_i = s_{i-1}^-1 t_i; expand recursively.
    Alphabet B = group_alphabet(T2);
    for (std::size_t i = 1; i < ws.size(); ++i) ws[i] = free_reduce(B, concat(inverse(B, ws[i - 1]), {2 * static_cast<int>(i)}));
    auto q = change_generators(p, T2, wt, ws);
    CHECK(abelianization(finite_part(q, 4)).invariants == abelianization(finite_part(p, 4)).invariants);
  }
}

TEST_CASE("amalgam gadget") {
  auto eps = amalgam_gadget(small_language("eps"));
  CHECK(eps.generators == std::vector<std::string>{"s", "t", "s_hat", "t_hat", "a", "b"});
  CHECK(text_set(eps, 3) == std::set<std::string>{"a b"});

  auto one = amalgam_gadget(small_language("s"));
  CHECK(text_set(one, 1) == std::set<std::string>{"s a s s_hat b s_hat"});

  auto lang = parse_edt0l_text(
      "[edt0l]\nterminals = s t\nnonterminals = N\nseed = N\nmap grow { N -> N s t^-1 }\n"
      "map twist { N -> t N s^-1 }\nmap stop { N -> eps }\n");
  auto g = amalgam_gadget(lang);
  Alphabet A = g.alphabet();
  const int ia = A.at("a"), ib = A.at("b");
  auto ws = relators(g, 5, kCap);
  CHECK(ws.size() > 10);
  for (const Word& r : ws) {
    CAPTURE(format_word(A, r));
    REQUIRE(r.size() % 4 == 2);
    const std::size_t n = (r.size() - 2) / 4;
    Word w(r.begin(), r.begin() + n);
    CHECK(r[n] == ia);
    CHECK(Word(r.begin() + n + 1, r.begin() + 2 * n + 1) == w);
    Word h(r.begin() + 2 * n + 1, r.begin() + 3 * n + 1);
    CHECK(r[3 * n + 1] == ib);
    CHECK(Word(r.begin() + 3 * n + 2, r.end()) == h);
    for (std::size_t i = 0; i < n; ++i) CHECK(A.name(h[i]) == hat_name(A.name(w[i])));
  }

  // Different languages give different gadgets.
  auto other = amalgam_gadget(small_language("t"));
  CHECK(text_set(one, 2) != text_set(other, 2));

  CHECK_THROWS_AS(amalgam_gadget(std::get<Edt0lSystem>(load_system(fixture("an.edt0l")))), Error);
}

TEST_CASE("normal closure search") {
  Alphabet A = group_alphabet({"a", "b"});
  std::vector<Word> rels{parse_word(A, "a b a^-1 b^-1")};
  CHECK(in_normal_closure(A, rels, parse_word(A, "b a b^-1 a^-1"), 1, 10000) == true);
  CHECK(in_normal_closure(A, rels, parse_word(A, "a^-1 b a b^-1"), 1, 10000) == true);
  CHECK(in_normal_closure(A, rels, {}, 0, 1) == true);
  CHECK(in_normal_closure(A, rels, parse_word(A, "a"), 1, 2000) == std::nullopt);
}

TEST_CASE("presentation text round trip") {
  for (const char* f : {"lysenok.pres", "lamplighter.pres", "pi1.pres"}) {
    CAPTURE(f);
    auto p = load_presentation(fixture(f));
    auto q = parse_presentation_text(format_presentation(p));
    CHECK(q.generators == p.generators);
    CHECK(text_set(q, 4) == text_set(p, 4));
  }
  auto fin = parse_presentation_text("[presentation]\ngenerators = a b\nsource = finite\nrelators { a a ; b^-1 a }\n");
  CHECK(text_set(parse_presentation_text(format_presentation(fin)), 0) == text_set(fin, 0));
  auto lp = edt0l_to_lpresentation(load_presentation(fixture("lamplighter.pres")));
  CHECK(text_set(parse_presentation_text(format_presentation(lp)), 3) == text_set(lp, 3));
}
