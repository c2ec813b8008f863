#include "lgroup/quotients.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace lgroup {

// ---------------------------------------------------------------- finite groups

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error("finite group: empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error("finite group: table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw Error("finite group: entry out of range");
  }
  FiniteGroup g;
  g.table_ = std::move(table);
  const auto& t = g.table_;
  g.identity_ = -1;
  for (int e = 0; e < n && g.identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = t[e][x] == x && t[x][e] == x;
    if (ok) g.identity_ = e;
  }
  if (g.identity_ < 0) throw Error("finite group: no identity");
  g.inverse_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (t[x][y] == g.identity_ && t[y][x] == g.identity_) g.inverse_[x] = y;
    if (g.inverse_[x] < 0) throw Error("finite group: element " + std::to_string(x) + " has no inverse");
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (t[t[x][y]][z] != t[x][t[y][z]]) throw Error("finite group: table is not associative");
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens, std::size_t max_order) {
  if (gens.empty()) throw Error("finite group: no permutations");
  const std::size_t d = gens[0].size();
  for (const auto& p : gens) {
    std::vector<int> s = p;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (p.size() != d || s[i] != static_cast<int>(i)) throw Error("finite group: not a permutation");
  }
  // x * y acts as x then y.
  auto compose = [&](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = y[x[i]];
    return r;
  };
  std::vector<int> id(d);
  for (std::size_t i = 0; i < d; ++i) id[i] = static_cast<int>(i);
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& g : gens) {
      auto y = compose(elems[k], g);
      if (!index.count(y)) {
        if (elems.size() >= max_order) throw BudgetExceeded("finite group: permutation closure too large");
        index[y] = static_cast<int>(elems.size());
        elems.push_back(y);
      }
    }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[x][y] = index.at(compose(elems[x], elems[y]));
  FiniteGroup out;
  out.table_ = std::move(table);
  out.identity_ = 0;
  out.inverse_.assign(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (out.table_[x][y] == 0) out.inverse_[x] = y;
  for (const auto& g : gens) out.gen_elements_.push_back(index.at(g));
  return out;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error("finite group: cyclic order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return from_table(std::move(t));
}

FiniteGroup parse_finite_group(const std::vector<Line>& lines) {
  std::vector<std::vector<int>> rows, perms;
  auto ints = [](const Line& ln, const std::string& s) {
    std::vector<int> v;
    for (const auto& tok : split_ws(s)) {
      try {
        std::size_t used = 0;
        int x = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(x);
      } catch (const std::exception&) {
        throw ParseError(ln.no, "expected an integer, got '" + tok + "'");
      }
    }
    return v;
  };
  for (const Line& ln : lines) {
    if (ln.text == "[group]") continue;
    if (starts_with(ln.text, "perm ")) {
      perms.push_back(ints(ln, ln.text.substr(5)));
    } else {
      rows.push_back(ints(ln, ln.text));
    }
  }
  if (!rows.empty() && !perms.empty()) throw ParseError(lines[0].no, "mix of table rows and permutations");
  try {
    return perms.empty() ? FiniteGroup::from_table(rows) : FiniteGroup::from_permutations(perms);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(lines.empty() ? 0 : lines[0].no, e.what());
  }
}

FiniteGroup load_finite_group(const std::string& path) { return parse_finite_group(read_lines_file(path)); }

int evaluate(const FiniteGroup& H, const std::vector<int>& assignment, const Word& w) {
  int x = H.identity();
  for (int l : w) {
    int g = assignment.at(l / 2);
    x = H.mul(x, l % 2 ? H.inv(g) : g);
  }
  return x;
}

bool residual_kills(const Residual& r, const Alphabet& a, const Word& w) {
  if (const auto* n = std::get_if<NilpotentClass>(&r)) return free_nilpotent_wp(a, w, n->c);
  const auto& f = std::get<FiniteTarget>(r);
  return evaluate(f.H, f.assignment, w) == f.H.identity();
}

// ---------------------------------------------------------------- relator systems

Hdt0lSystem relator_hdt0l(const MarkedPresentation& p) {
  Alphabet S = p.alphabet();
  Hdt0lSystem h;
  if (const auto* f = std::get_if<std::vector<Word>>(&p.source)) {
    // Seed Z with one map Z -> r per relator; Z itself emits the empty word.
    h.inner = S;
    std::string z = fresh_name("Z", S);
    int zi = h.inner.add(z);
    h.inner.add(inverse_name(z));
    const int n = h.inner.size();
    h.seed = {zi};
    for (std::size_t k = 0; k < f->size(); ++k) {
      Morphism m = identity_morphism(n);
      m.image[zi] = (*f)[k];
      m.image[zi + 1] = inverse(S, (*f)[k]);
      h.maps.push_back({"r" + std::to_string(k + 1), m});
    }
    h.out = S;
    h.final.codomain = S.size();
    for (int x = 0; x < S.size(); ++x) h.final.image.push_back({x});
    h.final.image.push_back({});
    h.final.image.push_back({});
    return h;
  }
  if (const auto* hh = std::get_if<Hdt0lSystem>(&p.source)) {
    h = *hh;
  } else {
    Edt0lSystem e = std::holds_alternative<Edt0lSystem>(p.source)
                        ? std::get<Edt0lSystem>(p.source)
                        : std::get<Edt0lSystem>(lpresentation_to_dtf0l_fin(p).source);
    if (!edt0l_to_hdt0l_by_emit(e, h)) h = edt0l_to_hdt0l(e);
  }
  Morphism fin;
  fin.codomain = S.size();
  for (const Word& w : h.final.image) {
    Word t;
    for (int x : w) t.push_back(S.at(h.out.name(x)));
    fin.image.push_back(t);
  }
  h.final = fin;
  h.out = S;
  return h;
}

namespace {

// The inner letter carrying each generator of the inner group.
std::vector<int> carriers(const InnerGroup& ig) {
  std::vector<int> c(ig.generators.size(), -1);
  for (std::size_t x = 0; x < ig.letter.size(); ++x) {
    const Word& w = ig.letter[x];
    if (w.size() == 1 && w[0] % 2 == 0 && c[w[0] / 2] < 0) c[w[0] / 2] = static_cast<int>(x);
  }
  return c;
}

Word inner_word(const InnerGroup& ig, const Word& w) {
  Word out;
  for (int x : w) out.insert(out.end(), ig.letter[x].begin(), ig.letter[x].end());
  return out;
}

}  // namespace

Stabilization stabilize_nonterminals(const Hdt0lSystem& h, int c, int max_n, const NqOptions& opt) {
  Stabilization st;
  st.inner = inner_group(h);
  Alphabet G = group_alphabet(st.inner.generators);
  auto carrier = carriers(st.inner);
  std::vector<Morphism> endos;
  for (const auto& nm : h.maps) {
    std::vector<Word> imgs;
    for (int x : carrier) imgs.push_back(free_reduce(G, inner_word(st.inner, nm.map.image[x])));
    endos.push_back(group_endomorphism(G, imgs));
  }
  std::set<Word> seen;
  auto add_level = [&](const std::vector<Word>& from) {
    std::vector<Word> next;
    for (const Word& w : from)
      for (const Morphism& m : endos) {
        Word y = apply_reduced(G, m, w);
        if (!y.empty() && seen.insert(y).second) next.push_back(std::move(y));
      }
    st.levels.push_back(std::move(next));
  };
  Word w0 = free_reduce(G, inner_word(st.inner, h.seed));
  st.levels.push_back({});
  if (!w0.empty()) {
    seen.insert(w0);
    st.levels[0].push_back(w0);
  }
  st.inner_presentation.generators = st.inner.generators;
  for (int n = 0; n <= max_n; ++n) {
    const auto& lv = st.levels[n];
    st.inner_presentation.relators.insert(st.inner_presentation.relators.end(), lv.begin(), lv.end());
    add_level(st.levels[n]);
    const auto& next = st.levels[n + 1];
    bool stable = true;
    if (!next.empty()) {
      PcPresentation pc = nilpotent_quotient(st.inner_presentation, c, opt);
      for (const Word& w : next)
        if (!pc_wp(pc, G, w)) {
          stable = false;
          break;
        }
    }
    if (stable) {
      st.n = n;
      return st;
    }
  }
  throw BudgetExceeded("stabilization not reached within " + std::to_string(max_n) + " iterations");
}

EdtNilpotentQuotient edt0l_nilpotent_quotient(const MarkedPresentation& p, int c, int max_n, const NqOptions& opt) {
  EdtNilpotentQuotient out;
  out.relators.generators = p.generators;
  Alphabet S = p.alphabet();
  if (const auto* f = std::get_if<std::vector<Word>>(&p.source)) {
    out.relators.relators = *f;
  } else {
    Hdt0lSystem h = relator_hdt0l(p);
    Stabilization st = stabilize_nonterminals(h, c, max_n, opt);
    out.n = st.n;
    Alphabet G = group_alphabet(st.inner.generators);
    auto carrier = carriers(st.inner);
    Morphism fin;
    fin.codomain = S.size();
    for (int x : carrier) {
      fin.image.push_back(h.final.image[x]);
      fin.image.push_back(inverse(S, h.final.image[x]));
    }
    std::set<Word> rels;
    for (const Word& w : st.inner_presentation.relators) {
      Word r = apply_reduced(S, fin, w);
      if (!r.empty()) rels.insert(r);
    }
    out.relators.relators.assign(rels.begin(), rels.end());
  }
  out.pc = nilpotent_quotient(out.relators, c, opt);
  return out;
}

bool finite_quotient_test(const MarkedPresentation& p, const FiniteGroup& H, const std::vector<int>& assignment,
                          FiniteQuotientStats* stats) {
  if (assignment.size() != p.generators.size()) throw Error("finite_quotient_test: one element per generator required");
  for (int g : assignment)
    if (g < 0 || g >= H.order()) throw Error("finite_quotient_test: element out of range");
  Hdt0lSystem h = relator_hdt0l(p);
  const int na = h.inner.size();
  std::vector<int> start(na);
  for (int x = 0; x < na; ++x) start[x] = evaluate(H, assignment, h.final.image[x]);
  auto eval = [&](const std::vector<int>& st, const Word& w) {
    int v = H.identity();
    for (int x : w) v = H.mul(v, st[x]);
    return v;
  };
  std::set<std::vector<int>> seen{start};
  std::deque<std::vector<int>> q{start};
  bool ok = true;
  while (!q.empty() && ok) {
    std::vector<int> st = q.front();
    q.pop_front();
    if (eval(st, h.seed) != H.identity()) ok = false;
    for (const auto& nm : h.maps) {
      std::vector<int> nx(na);
      for (int x = 0; x < na; ++x) nx[x] = eval(st, nm.map.image[x]);
      if (seen.insert(nx).second) q.push_back(std::move(nx));
    }
  }
  if (stats) {
    stats->states = seen.size();
    std::size_t bound = 1;
    for (int i = 0; i < na; ++i) {
      if (bound > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(H.order())) {
        bound = std::numeric_limits<std::size_t>::max();
        break;
      }
      bound *= static_cast<std::size_t>(H.order());
    }
    stats->bound = bound;
  }
  return ok;
}

bool marked_quotient_edt0l_nilpotent(const MarkedPresentation& p, const FinitePresentation& tgt, int c, int max_n,
                                     const NqOptions& opt) {
  if (tgt.generators != p.generators) throw Error("marked quotient: generator tuples differ");
  auto src = edt0l_nilpotent_quotient(p, c, max_n, opt);
  return marked_quotient_nilpotent(src.relators, tgt, c, opt);
}

}  // namespace lgroup
