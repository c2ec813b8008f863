#include "lgroup/automata.hpp"

#include <map>
#include <queue>
#include <sstream>

#include "lgroup/lsystems.hpp"

namespace lgroup {

int Dfa::symbol(const std::string& name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == name) return static_cast<int>(i);
  return -1;
}

void Dfa::validate() const {
  if (states <= 0) throw Error("dfa: needs at least one state");
  if (initial < 0 || initial >= states) throw Error("dfa: initial state out of range");
  if (static_cast<int>(trans.size()) != states || static_cast<int>(accepting.size()) != states)
    throw Error("dfa: table size mismatch");
  for (const auto& row : trans) {
    if (row.size() != symbols.size()) throw Error("dfa: transition not total");
    for (int t : row)
      if (t < 0 || t >= states) throw Error("dfa: transition not total");
  }
}

bool accepts(const Dfa& d, const std::vector<int>& word) {
  int q = d.initial;
  for (int s : word) {
    if (s < 0 || s >= static_cast<int>(d.symbols.size())) throw Error("dfa: letter outside alphabet");
    q = d.trans[q][s];
  }
  return d.accepting[q];
}

bool accepts(const Dfa& d, const std::vector<std::string>& word) {
  std::vector<int> w;
  for (const auto& s : word) {
    int i = d.symbol(s);
    if (i < 0) throw Error("dfa: letter '" + s + "' outside alphabet");
    w.push_back(i);
  }
  return accepts(d, w);
}

Dfa prune(const Dfa& d) {
  std::vector<int> id(d.states, -1);
  std::vector<int> order;
  std::queue<int> q;
  id[d.initial] = 0;
  order.push_back(d.initial);
  q.push(d.initial);
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int t : d.trans[s]) {
      if (id[t] < 0) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
        q.push(t);
      }
    }
  }
  Dfa out;
  out.symbols = d.symbols;
  out.states = static_cast<int>(order.size());
  out.initial = 0;
  for (int s : order) {
    std::vector<int> row;
    for (int t : d.trans[s]) row.push_back(id[t]);
    out.trans.push_back(row);
    out.accepting.push_back(d.accepting[s]);
  }
  return out;
}

Dfa product(const Dfa& d1, const Dfa& d2) {
  if (d1.symbols.size() != d2.symbols.size()) throw Error("product: alphabet mismatch");
  std::vector<int> map2;
  for (const auto& s : d1.symbols) {
    int j = d2.symbol(s);
    if (j < 0) throw Error("product: alphabet mismatch");
    map2.push_back(j);
  }
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> order;
  std::queue<std::pair<int, int>> q;
  auto start = std::make_pair(d1.initial, d2.initial);
  id[start] = 0;
  order.push_back(start);
  q.push(start);
  Dfa out;
  out.symbols = d1.symbols;
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop();
    std::vector<int> row;
    for (std::size_t s = 0; s < d1.symbols.size(); ++s) {
      auto nxt = std::make_pair(d1.trans[a][s], d2.trans[b][map2[s]]);
      auto it = id.find(nxt);
      if (it == id.end()) {
        it = id.emplace(nxt, static_cast<int>(order.size())).first;
        order.push_back(nxt);
        q.push(nxt);
      }
      row.push_back(it->second);
    }
    out.trans.push_back(row);
  }
  out.states = static_cast<int>(order.size());
  out.initial = 0;
  for (auto [a, b] : order) out.accepting.push_back(d1.accepting[a] && d2.accepting[b]);
  return out;
}

Dfa all_accepting_dfa(const std::vector<std::string>& symbols) {
  Dfa d;
  d.symbols = symbols;
  d.states = 1;
  d.trans = {std::vector<int>(symbols.size(), 0)};
  d.accepting = {true};
  return d;
}

Dfa empty_language_dfa(const std::vector<std::string>& symbols) {
  Dfa d = all_accepting_dfa(symbols);
  d.accepting = {false};
  return d;
}

Dfa parse_dfa(const std::vector<Line>& lines) {
  if (lines.empty() || lines[0].text != "[dfa]") throw ParseError(lines.empty() ? 0 : lines[0].no, "expected [dfa]");
  Dfa d;
  d.states = -1;
  std::vector<int> acc;
  struct T {
    int from, to, line;
    std::string sym;
  };
  std::vector<T> ts;
  bool have_alphabet = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& ln = lines[i];
    std::string k, v;
    if (starts_with(ln.text, "trans ")) {
      auto t = split_ws(ln.text);
      if (t.size() != 4) throw ParseError(ln.no, "expected 'trans i sym j'");
      ts.push_back({static_cast<int>(parse_int(t[1], ln.no)), static_cast<int>(parse_int(t[3], ln.no)), ln.no, t[2]});
    } else if (key_value(ln.text, k, v)) {
      if (k == "states") {
        d.states = static_cast<int>(parse_int(v, ln.no));
      } else if (k == "initial") {
        d.initial = static_cast<int>(parse_int(v, ln.no));
      } else if (k == "accepting") {
        for (const auto& t : split_ws(v)) acc.push_back(static_cast<int>(parse_int(t, ln.no)));
      } else if (k == "alphabet") {
        d.symbols = split_ws(v);
        have_alphabet = true;
      } else {
        throw ParseError(ln.no, "unknown key '" + k + "'");
      }
    } else {
      throw ParseError(ln.no, "unrecognized line");
    }
  }
  int hdr = lines[0].no;
  if (d.states <= 0) throw ParseError(hdr, "missing or invalid 'states'");
  if (!have_alphabet)
    for (const auto& t : ts)
      if (d.symbol(t.sym) < 0) d.symbols.push_back(t.sym);
  d.trans.assign(d.states, std::vector<int>(d.symbols.size(), -1));
  d.accepting.assign(d.states, false);
  for (const auto& t : ts) {
    int s = d.symbol(t.sym);
    if (s < 0) throw ParseError(t.line, "symbol '" + t.sym + "' not in alphabet");
    if (t.from < 0 || t.from >= d.states || t.to < 0 || t.to >= d.states)
      throw ParseError(t.line, "state out of range");
    if (d.trans[t.from][s] >= 0) throw ParseError(t.line, "duplicate transition");
    d.trans[t.from][s] = t.to;
  }
  for (int a : acc) {
    if (a < 0 || a >= d.states) throw ParseError(hdr, "accepting state out of range");
    d.accepting[a] = true;
  }
  if (d.initial < 0 || d.initial >= d.states) throw ParseError(hdr, "initial state out of range");
  for (int q = 0; q < d.states; ++q)
    for (std::size_t s = 0; s < d.symbols.size(); ++s)
      if (d.trans[q][s] < 0)
        throw ParseError(hdr, "transition from " + std::to_string(q) + " on '" + d.symbols[s] + "' missing");
  return d;
}

Dfa parse_dfa_text(const std::string& text) {
  std::istringstream in(text);
  return parse_dfa(read_lines(in));
}

std::string format_dfa(const Dfa& d) {
  std::ostringstream out;
  out << "[dfa]\n";
  out << "states = " << d.states << "\n";
  out << "initial = " << d.initial << "\n";
  out << "alphabet =";
  for (const auto& s : d.symbols) out << ' ' << s;
  out << "\naccepting =";
  for (int q = 0; q < d.states; ++q)
    if (d.accepting[q]) out << ' ' << q;
  out << "\n";
  for (int q = 0; q < d.states; ++q)
    for (std::size_t s = 0; s < d.symbols.size(); ++s)
      out << "trans " << q << ' ' << d.symbols[s] << ' ' << d.trans[q][s] << "\n";
  return out.str();
}

LetterTracking letter_tracking(const Edt0lSystem& sys) {
  const int n = sys.alphabet.size();
  auto letters_of = [&](const Word& w) {
    std::vector<bool> m(n, false);
    for (int x : w) m[x] = true;
    return m;
  };
  LetterTracking lt;
  for (const auto& nm : sys.maps) lt.dfa.symbols.push_back(nm.name);
  std::map<std::vector<bool>, int> id;
  std::queue<int> q;
  auto intern = [&](const std::vector<bool>& m) {
    auto it = id.find(m);
    if (it != id.end()) return it->second;
    int k = static_cast<int>(lt.letters.size());
    id[m] = k;
    lt.letters.push_back(m);
    q.push(k);
    return k;
  };
  intern(letters_of(sys.seed));
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    std::vector<int> row;
    for (const auto& nm : sys.maps) {
      std::vector<bool> m(n, false);
      for (int x = 0; x < n; ++x)
        if (lt.letters[s][x])
          for (int y : nm.map.image[x]) m[y] = true;
      row.push_back(intern(m));
    }
    if (static_cast<int>(lt.dfa.trans.size()) <= s) lt.dfa.trans.resize(s + 1);
    lt.dfa.trans[s] = row;
  }
  lt.dfa.states = static_cast<int>(lt.letters.size());
  lt.dfa.initial = 0;
  for (const auto& m : lt.letters) {
    bool ok = true;
    for (int x = 0; x < n; ++x)
      if (m[x] && !sys.terminal[x]) ok = false;
    lt.dfa.accepting.push_back(ok);
  }
  return lt;
}

Dfa letter_tracking_dfa(const Edt0lSystem& sys) { return letter_tracking(sys).dfa; }

}  // namespace lgroup
