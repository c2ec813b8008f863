#include "lgroup/cfg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lgroup/lsystems.hpp"

namespace lgroup {

int Cfg::nonterminal(const std::string& name) const {
  for (std::size_t i = 0; i < nonterminals.size(); ++i)
    if (nonterminals[i] == name) return static_cast<int>(i);
  return -1;
}

bool is_cnf(const Cfg& g) {
  for (const auto& r : g.rules) {
    if (r.rhs.size() == 1 && !r.rhs[0].nonterminal) continue;
    if (r.rhs.size() == 2 && r.rhs[0].nonterminal && r.rhs[1].nonterminal) continue;
    return false;
  }
  return true;
}

namespace {

std::string fresh(const Cfg& g, const std::string& want) {
  std::string n = want;
  while (g.nonterminal(n) >= 0 || g.terminals.contains(n)) n += "_";
  return n;
}

int add_nonterminal(Cfg& g, const std::string& want) {
  g.nonterminals.push_back(fresh(g, want));
  return static_cast<int>(g.nonterminals.size()) - 1;
}

void dedupe(Cfg& g) {
  std::vector<CfgRule> out;
  std::set<std::pair<int, std::vector<CfgSymbol>>> seen;
  for (auto& r : g.rules)
    if (seen.insert({r.lhs, r.rhs}).second) out.push_back(r);
  g.rules = std::move(out);
}

// Drops unproductive and unreachable nonterminals, renumbering the rest.
void trim_useless(Cfg& g) {
  const int n = static_cast<int>(g.nonterminals.size());
  std::vector<bool> productive(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      if (productive[r.lhs]) continue;
      bool ok = true;
      for (auto s : r.rhs)
        if (s.nonterminal && !productive[s.id]) ok = false;
      if (ok) productive[r.lhs] = changed = true;
    }
  }
  std::vector<bool> reach(n, false);
  reach[g.start] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      if (!reach[r.lhs] || !productive[r.lhs]) continue;
      bool ok = true;
      for (auto s : r.rhs)
        if (s.nonterminal && !productive[s.id]) ok = false;
      if (!ok) continue;
      for (auto s : r.rhs)
        if (s.nonterminal && !reach[s.id]) reach[s.id] = changed = true;
    }
  }
  std::vector<int> id(n, -1);
  Cfg out;
  out.terminals = g.terminals;
  for (int i = 0; i < n; ++i)
    if ((reach[i] && productive[i]) || i == g.start) {
      id[i] = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back(g.nonterminals[i]);
    }
  out.start = id[g.start];
  for (const auto& r : g.rules) {
    if (id[r.lhs] < 0) continue;
    CfgRule nr{id[r.lhs], {}};
    bool ok = true;
    for (auto s : r.rhs) {
      if (s.nonterminal && id[s.id] < 0) ok = false;
      nr.rhs.push_back(s.nonterminal ? CfgSymbol{true, id[s.id]} : s);
    }
    if (ok && productive[r.lhs]) out.rules.push_back(nr);
  }
  g = std::move(out);
}

}  // namespace

Cfg to_cnf(const Cfg& src) {
  Cfg g = src;
  dedupe(g);
  trim_useless(g);
  if (is_cnf(g)) return g;

  // TERM: terminals inside long right-hand sides get their own nonterminal.
  std::map<int, int> term_nt;
  for (auto& r : g.rules) {
    if (r.rhs.size() < 2) continue;
    for (auto& s : r.rhs) {
      if (s.nonterminal) continue;
      auto it = term_nt.find(s.id);
      if (it == term_nt.end()) {
        int nt = add_nonterminal(g, "T_" + sanitize_name(g.terminals.name(s.id)));
        it = term_nt.emplace(s.id, nt).first;
      }
      s = CfgSymbol{true, it->second};
    }
  }
  for (auto [t, nt] : term_nt) g.rules.push_back({nt, {CfgSymbol{false, t}}});

  // BIN: split right-hand sides longer than two.
  std::vector<CfgRule> bin;
  for (auto& r : g.rules) {
    if (r.rhs.size() <= 2) {
      bin.push_back(r);
      continue;
    }
    int lhs = r.lhs;
    for (std::size_t i = 0; i + 2 < r.rhs.size(); ++i) {
      int nt = add_nonterminal(g, g.nonterminals[r.lhs] + "_" + std::to_string(i + 1));
      bin.push_back({lhs, {r.rhs[i], CfgSymbol{true, nt}}});
      lhs = nt;
    }
    bin.push_back({lhs, {r.rhs[r.rhs.size() - 2], r.rhs.back()}});
  }
  g.rules = std::move(bin);

  // DEL: remove epsilon rules, adding every variant with nullable symbols omitted.
  const int n = static_cast<int>(g.nonterminals.size());
  std::vector<bool> nullable(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : g.rules) {
      if (nullable[r.lhs]) continue;
      bool all = true;
      for (auto s : r.rhs)
        if (!s.nonterminal || !nullable[s.id]) all = false;
      if (all) nullable[r.lhs] = changed = true;
    }
  }
  std::vector<CfgRule> del;
  for (const auto& r : g.rules) {
    if (r.rhs.empty()) continue;
    if (r.rhs.size() == 2) {
      auto [x, y] = std::make_pair(r.rhs[0], r.rhs[1]);
      del.push_back(r);
      if (x.nonterminal && nullable[x.id]) del.push_back({r.lhs, {y}});
      if (y.nonterminal && nullable[y.id]) del.push_back({r.lhs, {x}});
    } else {
      del.push_back(r);
    }
  }
  g.rules = std::move(del);
  dedupe(g);

  // UNIT: replace A -> B by A -> rhs for every non-unit rule of B.
  auto is_unit = [](const CfgRule& r) { return r.rhs.size() == 1 && r.rhs[0].nonterminal; };
  std::vector<std::set<int>> reach(n);
  for (int a = 0; a < n; ++a) {
    reach[a].insert(a);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : g.rules)
        if (is_unit(r) && reach[a].count(r.lhs) && reach[a].insert(r.rhs[0].id).second) changed = true;
    }
  }
  std::vector<CfgRule> unit;
  for (int a = 0; a < n; ++a)
    for (const auto& r : g.rules)
      if (!is_unit(r) && reach[a].count(r.lhs)) unit.push_back({a, r.rhs});
  g.rules = std::move(unit);
  dedupe(g);
  trim_useless(g);
  return g;
}

std::size_t pumping_constant(const Cfg& g) {
  Cfg c = is_cnf(g) ? g : to_cnf(g);
  std::size_t m = c.nonterminals.size();
  if (m >= 63) throw BudgetExceeded("pumping constant does not fit in 64 bits");
  return std::size_t{1} << m;
}

namespace {

struct Cyk {
  int n = 0;
  int nts = 0;
  // back[(i * (n + 1) + len) * nts + A] = rule index + 1, or 0
  std::vector<int> rule;
  std::vector<int> split;
  std::vector<int> height;

  std::size_t at(int i, int len, int a) const {
    return (static_cast<std::size_t>(i) * (n + 1) + len) * nts + a;
  }
};

// Fills the table preferring, for each cell, a derivation of maximal height.
Cyk run_cyk(const Cfg& g, const Word& r) {
  Cyk t;
  t.n = static_cast<int>(r.size());
  t.nts = static_cast<int>(g.nonterminals.size());
  std::size_t cells = static_cast<std::size_t>(t.n + 1) * (t.n + 1) * t.nts;
  t.rule.assign(cells, 0);
  t.split.assign(cells, 0);
  t.height.assign(cells, 0);
  for (int i = 0; i < t.n; ++i)
    for (std::size_t k = 0; k < g.rules.size(); ++k) {
      const auto& ru = g.rules[k];
      if (ru.rhs.size() == 1 && !ru.rhs[0].nonterminal && ru.rhs[0].id == r[i]) {
        t.rule[t.at(i, 1, ru.lhs)] = static_cast<int>(k) + 1;
        t.height[t.at(i, 1, ru.lhs)] = 1;
      }
    }
  for (int len = 2; len <= t.n; ++len)
    for (int i = 0; i + len <= t.n; ++i)
      for (int s = 1; s < len; ++s)
        for (std::size_t k = 0; k < g.rules.size(); ++k) {
          const auto& ru = g.rules[k];
          if (ru.rhs.size() != 2) continue;
          std::size_t l = t.at(i, s, ru.rhs[0].id), rr = t.at(i + s, len - s, ru.rhs[1].id);
          if (!t.rule[l] || !t.rule[rr]) continue;
          int h = 1 + std::max(t.height[l], t.height[rr]);
          std::size_t c = t.at(i, len, ru.lhs);
          if (h > t.height[c]) {
            t.rule[c] = static_cast<int>(k) + 1;
            t.split[c] = s;
            t.height[c] = h;
          }
        }
  return t;
}

ParseTree build(const Cfg& g, const Cyk& t, int i, int len, int a) {
  ParseTree node;
  node.nonterminal = a;
  node.begin = i;
  node.end = i + len;
  const auto& ru = g.rules[t.rule[t.at(i, len, a)] - 1];
  if (ru.rhs.size() == 2) {
    int s = t.split[t.at(i, len, a)];
    node.children.push_back(build(g, t, i, s, ru.rhs[0].id));
    node.children.push_back(build(g, t, i + s, len - s, ru.rhs[1].id));
  }
  return node;
}

int tree_height(const ParseTree& t) {
  int h = 0;
  for (const auto& c : t.children) h = std::max(h, tree_height(c));
  return h + 1;
}

// Nodes along a longest root-to-leaf path.
void longest_path(const ParseTree& t, std::vector<const ParseTree*>& path) {
  path.push_back(&t);
  if (t.children.empty()) return;
  const ParseTree* best = &t.children[0];
  for (const auto& c : t.children)
    if (tree_height(c) > tree_height(*best)) best = &c;
  longest_path(*best, path);
}

Word slice(const Word& r, int b, int e) { return Word(r.begin() + b, r.begin() + e); }

}  // namespace

bool cyk_accepts(const Cfg& g, const Word& r) {
  if (!is_cnf(g)) throw Error("cyk: grammar is not in Chomsky normal form");
  if (r.empty()) return false;
  Cyk t = run_cyk(g, r);
  return t.rule[t.at(0, t.n, g.start)] != 0;
}

ParseTree cyk_parse(const Cfg& g, const Word& r) {
  if (!is_cnf(g)) throw Error("cyk: grammar is not in Chomsky normal form");
  if (r.empty()) throw Error("word not in the language");
  Cyk t = run_cyk(g, r);
  if (!t.rule[t.at(0, t.n, g.start)]) throw Error("word not in the language");
  return build(g, t, 0, t.n, g.start);
}

PumpingDecomposition pumping_decompose(const Cfg& src, const Word& r) {
  Cfg g = to_cnf(src);
  std::size_t p = pumping_constant(g);
  if (r.size() < p) throw Error("word shorter than the pumping constant " + std::to_string(p));
  ParseTree tree = cyk_parse(g, r);
  std::vector<const ParseTree*> path;
  longest_path(tree, path);
  const int m = static_cast<int>(g.nonterminals.size());
  const int lo = std::max(0, static_cast<int>(path.size()) - (m + 1));
  // lowest repeated pair among the bottom m+1 nodes: scan upward for the first
  // node whose nonterminal already occurs below it
  for (int up = static_cast<int>(path.size()) - 2; up >= lo; --up)
    for (int down = static_cast<int>(path.size()) - 1; down > up; --down)
      if (path[down]->nonterminal == path[up]->nonterminal) {
        const ParseTree& U = *path[up];
        const ParseTree& D = *path[down];
        PumpingDecomposition d;
        d.u = slice(r, 0, U.begin);
        d.v = slice(r, U.begin, D.begin);
        d.w = slice(r, D.begin, D.end);
        d.x = slice(r, D.end, U.end);
        d.y = slice(r, U.end, static_cast<int>(r.size()));
        return d;
      }
  throw Error("no repeated nonterminal on the longest path");
}

ShrinkStep cf_shrink_step(const Cfg& g, const Word& r) {
  PumpingDecomposition d = pumping_decompose(g, r);
  ShrinkStep s;
  s.shorter = concat(concat(d.u, d.w), d.y);
  Word vwx = concat(concat(d.v, d.w), d.x);
  s.side = free_reduce(g.terminals, concat(vwx, inverse(g.terminals, d.w)));
  return s;
}

Cfg parse_cfg(const std::vector<Line>& lines) {
  if (lines.empty() || lines[0].text != "[cfg]") throw ParseError(lines.empty() ? 0 : lines[0].no, "expected [cfg]");
  Cfg g;
  std::string start;
  int start_line = lines[0].no;
  std::vector<std::pair<std::string, std::vector<std::string>>> raw;
  std::vector<int> raw_line;
  std::vector<std::string> gens;
  bool declared = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    if (starts_with(ln.text, "rule ")) {
      std::string body = ln.text.substr(5);
      auto arrow = body.find("->");
      if (arrow == std::string::npos) throw ParseError(ln.no, "expected 'rule N -> ...'");
      std::string lhs = trim(body.substr(0, arrow));
      if (!valid_symbol_name(lhs)) throw ParseError(ln.no, "invalid nonterminal '" + lhs + "'");
      auto rhs = split_ws(body.substr(arrow + 2));
      if (rhs.size() == 1 && rhs[0] == "eps") rhs.clear();
      raw.emplace_back(lhs, rhs);
      raw_line.push_back(ln.no);
      continue;
    }
    std::string k, v;
    if (!key_value(ln.text, k, v)) throw ParseError(ln.no, "unrecognized line '" + ln.text + "'");
    if (k == "start") {
      start = v;
      start_line = ln.no;
    } else if (k == "terminals") {
      gens = split_ws(v);
      declared = true;
    } else {
      throw ParseError(ln.no, "unknown key '" + k + "'");
    }
  }
  if (start.empty()) throw ParseError(lines[0].no, "missing 'start'");
  for (const auto& [lhs, rhs] : raw)
    if (g.nonterminal(lhs) < 0) g.nonterminals.push_back(lhs);
  if (g.nonterminal(start) < 0) g.nonterminals.push_back(start);
  if (!declared)
    for (const auto& [lhs, rhs] : raw)
      for (const auto& s : rhs)
        if (g.nonterminal(s) < 0 && std::find(gens.begin(), gens.end(), base_name(s)) == gens.end())
          gens.push_back(base_name(s));
  for (const auto& s : gens)
    if (!valid_symbol_name(s) || g.nonterminal(s) >= 0) throw ParseError(start_line, "invalid terminal '" + s + "'");
  g.terminals = group_alphabet(gens);
  g.start = g.nonterminal(start);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    CfgRule r{g.nonterminal(raw[k].first), {}};
    for (const auto& s : raw[k].second) {
      int nt = g.nonterminal(s);
      if (nt >= 0) {
        r.rhs.push_back({true, nt});
      } else {
        int t = g.terminals.find(s);
        if (t < 0) throw ParseError(raw_line[k], "unknown symbol '" + s + "'");
        r.rhs.push_back({false, t});
      }
    }
    g.rules.push_back(r);
  }
  return g;
}

Cfg parse_cfg_text(const std::string& text) {
  std::istringstream in(text);
  return parse_cfg(read_lines(in));
}

Cfg load_cfg(const std::string& path) { return parse_cfg(read_lines_file(path)); }

std::string format_cfg(const Cfg& g) {
  std::ostringstream out;
  out << "[cfg]\nterminals =";
  for (int x = 0; x < g.terminals.size(); x += 2) out << ' ' << g.terminals.name(x);
  out << "\nstart = " << g.nonterminals[g.start] << "\n";
  for (const auto& r : g.rules) {
    out << "rule " << g.nonterminals[r.lhs] << " ->";
    for (auto s : r.rhs) out << ' ' << (s.nonterminal ? g.nonterminals[s.id] : g.terminals.name(s.id));
    out << "\n";
  }
  return out.str();
}

}  // namespace lgroup
