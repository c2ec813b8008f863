#include "lgroup/halting.hpp"

#include <sstream>

#include "lgroup/hall.hpp"

namespace lgroup {

namespace {

TapeSymbol parse_symbol(int line, const std::string& s) {
  if (s == "0") return TapeSymbol::Zero;
  if (s == "1") return TapeSymbol::One;
  if (s == "_") return TapeSymbol::Blank;
  throw ParseError(line, "tape symbol must be 0, 1 or _, got '" + s + "'");
}

const char* symbol_text(TapeSymbol s) {
  switch (s) {
    case TapeSymbol::Zero: return "0";
    case TapeSymbol::One: return "1";
    default: return "_";
  }
}

int parse_int(int line, const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "expected an integer, got '" + s + "'");
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

void validate(const TuringMachine& m) {
  if (m.states < 1) throw Error("turing machine: needs at least one state");
  if (m.start < 0 || m.start >= m.states || m.halt < 0 || m.halt >= m.states)
    throw Error("turing machine: start or halt state out of range");
  for (const auto& [key, r] : m.rules) {
    if (key.first == m.halt) throw Error("turing machine: rule on the halt state");
    if (key.first < 0 || key.first >= m.states || r.next < 0 || r.next >= m.states)
      throw Error("turing machine: state out of range");
  }
  for (int q = 0; q < m.states; ++q) {
    if (q == m.halt) continue;
    for (TapeSymbol s : {TapeSymbol::Zero, TapeSymbol::One, TapeSymbol::Blank})
      if (!m.rules.count({q, s}))
        throw Error("turing machine: no rule for state " + std::to_string(q) + " on " + symbol_text(s));
  }
}

TmRun run_tm(const TuringMachine& m, std::uint64_t budget) {
  std::vector<TapeSymbol> tape;
  std::size_t head = 0;
  int q = m.start;
  TmRun run;
  while (q != m.halt) {
    if (run.steps == budget) return run;
    if (head >= tape.size()) tape.resize(head + 1, TapeSymbol::Blank);
    const TmRule& r = m.rules.at({q, tape[head]});
    tape[head] = r.write;
    if (r.move > 0)
      ++head;
    else if (head > 0)
      --head;
    q = r.next;
    ++run.steps;
  }
  run.halted = true;
  return run;
}

Int odd_prime(int n) {
  if (n < 1) throw Error("odd_prime: index must be positive");
  Int p = 1;
  for (int k = 0; k < n;) {
    p += 2;
    if (is_prime(p)) ++k;
  }
  return p;
}

std::vector<std::pair<Int, Int>> active_relations(const MachineList& ms, Int N) {
  std::vector<std::pair<Int, Int>> out;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    Int p = odd_prime(static_cast<int>(k) + 1);
    if (p > N) break;
    TmRun run = run_tm(ms[k], static_cast<std::uint64_t>(N));
    if (!run.halted) continue;
    Int q = 1;
    bool fits = true;
    for (std::uint64_t t = 0; t < run.steps && fits; ++t) {
      if (q > N / p) fits = false;
      q *= p;
    }
    if (fits && q <= N) out.push_back({p, q});
  }
  return out;
}

bool h_center_wp(const CentralWord& w, const MachineList& ms) {
  if (w.empty()) return true;
  Int N = 0;
  for (const auto& [i, e] : w) {
    if (i <= 0) throw Error("central word: indices must be positive");
    N = std::max(N, i);
  }
  std::map<Int, Int> parent;
  auto find = [&](Int x) {
    while (parent.count(x) && parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& [p, q] : active_relations(ms, N)) {
    Int a = find(p), b = find(q);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<Int, Int> sums;
  for (const auto& [i, e] : w) sums[find(i)] += e;
  for (const auto& [r, s] : sums)
    if (s != 0) return false;
  return true;
}

bool h_wp(const Word& w, const MachineList& ms) { return h_wp(hall_from_word(w), ms); }

bool h_wp(const HallElement& h, const MachineList& ms) {
  if (!h.is_central()) return false;
  auto phi = d_to_f_basis(h.c);
  CentralWord cw;
  for (std::size_t k = 0; k < phi.size(); ++k)
    if (phi[k] != 0) cw[static_cast<Int>(k) + 1] = phi[k];
  return h_center_wp(cw, ms);
}

ProbeVerdict gamma_probe(int idx, int k, const MachineList& ms, std::uint64_t budget) {
  if (idx < 1) throw Error("gamma_probe: index must be positive");
  const Int p = odd_prime(idx);
  if (k < p + 3) return ProbeVerdict::Trivial;
  if (idx <= static_cast<int>(ms.size())) {
    TmRun run = run_tm(ms[idx - 1], budget);
    if (run.halted) {
      // f_p = f_{p^t} lies in gamma_{p^t + 2}.
      Int q = 1;
      for (std::uint64_t t = 0; t < run.steps && q < k; ++t) q *= p;
      if (k < q + 3) return ProbeVerdict::Trivial;
    }
  }
  return ProbeVerdict::NontrivialUpToBudget;
}

const char* probe_name(ProbeVerdict v) {
  return v == ProbeVerdict::Trivial ? "trivial" : "nontrivial-up-to-budget";
}

MachineList parse_machines(const std::vector<Line>& lines) {
  MachineList out;
  std::vector<int> header;
  for (const Line& ln : lines) {
    if (ln.text == "[tm]") {
      out.emplace_back();
      header.push_back(ln.no);
      continue;
    }
    if (out.empty()) throw ParseError(ln.no, "expected [tm]");
    TuringMachine& m = out.back();
    if (starts_with(ln.text, "rule ")) {
      auto t = split_ws(ln.text.substr(5));
      if (t.size() != 6 || t[2] != "->") throw ParseError(ln.no, "expected 'rule q s -> q2 s2 L|R'");
      int q = parse_int(ln.no, t[0]);
      TapeSymbol s = parse_symbol(ln.no, t[1]);
      TmRule r;
      r.next = parse_int(ln.no, t[3]);
      r.write = parse_symbol(ln.no, t[4]);
      if (t[5] == "L")
        r.move = -1;
      else if (t[5] == "R")
        r.move = 1;
      else
        throw ParseError(ln.no, "move must be L or R");
      if (!m.rules.emplace(std::make_pair(q, s), r).second) throw ParseError(ln.no, "duplicate rule");
      continue;
    }
    std::string k, v;
    if (!key_value(ln.text, k, v)) throw ParseError(ln.no, "unrecognized line '" + ln.text + "'");
    if (k == "states")
      m.states = parse_int(ln.no, v);
    else if (k == "start")
      m.start = parse_int(ln.no, v);
    else if (k == "halt")
      m.halt = parse_int(ln.no, v);
    else
      throw ParseError(ln.no, "unknown key '" + k + "'");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      validate(out[i]);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(header[i], e.what());
    }
  }
  return out;
}

MachineList load_machines(const std::string& path) { return parse_machines(read_lines_file(path)); }

std::string format_machines(const MachineList& ms) {
  std::ostringstream out;
  for (const auto& m : ms) {
    out << "[tm]\nstates = " << m.states << "\nstart = " << m.start << "\nhalt = " << m.halt << "\n";
    for (const auto& [key, r] : m.rules)
      out << "rule " << key.first << ' ' << symbol_text(key.second) << " -> " << r.next << ' ' << symbol_text(r.write)
          << ' ' << (r.move < 0 ? 'L' : 'R') << "\n";
  }
  return out.str();
}

}  // namespace lgroup
