#include "lgroup/lsystems.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "lgroup/text.hpp"

namespace lgroup {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = w.size();
    for (int x : w) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

bool nonerasing(const std::vector<NamedMorphism>& maps) {
  for (const auto& nm : maps)
    for (const auto& img : nm.map.image)
      if (img.empty()) return false;
  return true;
}

bool nonerasing(const Morphism& m) {
  for (const auto& img : m.image)
    if (img.empty()) return false;
  return true;
}

// Breadth-first walk over forms reachable within `depth` steps; each distinct form
// is visited once, at the least depth it occurs.
void explore(const std::vector<Word>& seeds, const std::vector<NamedMorphism>& maps, int depth,
             std::size_t prune_above, EnumBudget b, const std::function<void(const Word&)>& visit) {
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> frontier;
  std::size_t letters = 0;
  auto add = [&](Word w, std::vector<Word>& into) {
    if (w.size() > prune_above) return;
    if (!seen.insert(w).second) return;
    letters += w.size() + 1;
    if (letters > b.max_letters) throw BudgetExceeded("enumeration exceeded its letter budget");
    visit(w);
    into.push_back(std::move(w));
  };
  for (const auto& s : seeds) add(s, frontier);
  for (int level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& nm : maps) add(apply_morphism(nm.map, w), next);
    frontier.swap(next);
  }
}

void check_total(const Morphism& m, int n, int cod, const std::string& what) {
  if (m.domain() != n) throw Error(what + ": morphism not total on the alphabet");
  if (m.codomain != cod) throw Error(what + ": morphism codomain mismatch");
  for (const auto& img : m.image)
    for (int x : img)
      if (x < 0 || x >= cod) throw Error(what + ": image letter out of range");
}

std::string unique_map_name(const std::string& want, std::set<std::string>& used) {
  std::string n = want;
  while (used.count(n)) n += "_";
  used.insert(n);
  return n;
}

// Annotated copies (x, q) of letters, allocated on demand, keeping x / x^-1 pairing.
class Annotator {
 public:
  Annotator(const Alphabet& src, Alphabet& dst, std::set<std::string>& reserved)
      : src_(src), dst_(dst), reserved_(reserved) {}

  int get(int x, int q) {
    auto key = std::make_pair(x, q);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    const std::string& nm = src_.name(x);
    auto bkey = std::make_pair(base_name(nm), q);
    auto bit = bases_.find(bkey);
    if (bit == bases_.end()) {
      std::string b = sanitize_name(base_name(nm)) + "_" + std::to_string(q);
      while (reserved_.count(b) || reserved_.count(b + "^-1")) b += "x";
      reserved_.insert(b);
      reserved_.insert(b + "^-1");
      bit = bases_.emplace(bkey, b).first;
    }
    std::string full = is_inverse_name(nm) ? bit->second + "^-1" : bit->second;
    int id = dst_.add(full);
    ids_[key] = id;
    origin_.push_back(key);
    queue_.push(id);
    return id;
  }

  Word annotate(const Word& w, int q) {
    Word out;
    out.reserve(w.size());
    for (int x : w) out.push_back(get(x, q));
    return out;
  }

  bool pending() const { return !queue_.empty(); }
  int pop() {
    int id = queue_.front();
    queue_.pop();
    return id;
  }
  std::pair<int, int> origin(int id) const { return origin_[id - first_]; }
  void set_first(int f) { first_ = f; }

 private:
  const Alphabet& src_;
  Alphabet& dst_;
  std::set<std::string>& reserved_;
  std::map<std::pair<int, int>, int> ids_;
  std::map<std::pair<std::string, int>, std::string> bases_;
  std::vector<std::pair<int, int>> origin_;
  std::queue<int> queue_;
  int first_ = 0;
};

}  // namespace

std::string sanitize_name(const std::string& s) {
  std::string out;
  std::string b = base_name(s);
  for (char c : b) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (is_inverse_name(s)) out += "_inv";
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0]))) out = "x" + out;
  return out;
}

std::string fresh_name(const std::string& want, const Alphabet& taken) {
  std::string n = sanitize_name(want);
  while (taken.contains(n) || taken.contains(n + "^-1") || n == "eps") n += "_";
  return n;
}

std::vector<std::string> format_words(const Alphabet& a, const WordSet& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(format_word(a, w));
  return out;
}

Alphabet Edt0lSystem::terminal_alphabet() const {
  Alphabet t;
  for (int x = 0; x < alphabet.size(); ++x)
    if (terminal[x]) t.add(alphabet.name(x));
  return t;
}

bool Edt0lSystem::is_terminal_word(const Word& w) const {
  for (int x : w)
    if (!terminal[x]) return false;
  return true;
}

Word Edt0lSystem::to_terminal(const Word& w) const {
  std::vector<int> idx(alphabet.size(), -1);
  int k = 0;
  for (int x = 0; x < alphabet.size(); ++x)
    if (terminal[x]) idx[x] = k++;
  Word out;
  for (int x : w) {
    if (idx[x] < 0) throw Error("to_terminal: nonterminal letter");
    out.push_back(idx[x]);
  }
  return out;
}

void validate(const Edt0lSystem& s) {
  if (static_cast<int>(s.terminal.size()) != s.alphabet.size()) throw Error("edt0l: terminal flags mismatch");
  for (const auto& nm : s.maps) check_total(nm.map, s.alphabet.size(), s.alphabet.size(), "edt0l");
  for (int x : s.seed)
    if (x < 0 || x >= s.alphabet.size()) throw Error("edt0l: seed letter out of range");
}

void validate(const Hdt0lSystem& s) {
  for (const auto& nm : s.maps) check_total(nm.map, s.inner.size(), s.inner.size(), "hdt0l");
  check_total(s.final, s.inner.size(), s.out.size(), "hdt0l final");
}

void validate(const ControlledEdt0l& s) {
  validate(s.sys);
  s.control.validate();
  if (s.control.symbols.size() != s.sys.maps.size()) throw Error("cedt0l: control alphabet must name the morphisms");
  for (const auto& nm : s.sys.maps)
    if (s.control.symbol(nm.name) < 0) throw Error("cedt0l: morphism '" + nm.name + "' missing from control");
}

std::vector<Word> sentential_forms(const Word& seed, const std::vector<NamedMorphism>& maps, int depth,
                                   EnumBudget b) {
  std::vector<Word> out;
  explore({seed}, maps, depth, static_cast<std::size_t>(-1), b, [&](const Word& w) { out.push_back(w); });
  return out;
}

WordSet enumerate(const Dtf0lSystem& s, int depth, int length_cap, EnumBudget b) {
  WordSet out;
  std::size_t cap = static_cast<std::size_t>(length_cap);
  std::size_t prune = nonerasing(s.maps) ? cap : static_cast<std::size_t>(-1);
  explore(s.seeds, s.maps, depth, prune, b, [&](const Word& w) {
    if (w.size() <= cap) out.insert(w);
  });
  return out;
}

WordSet enumerate(const Dt0lSystem& s, int depth, int length_cap, EnumBudget b) {
  return enumerate(Dtf0lSystem{s.alphabet, {s.seed}, s.maps}, depth, length_cap, b);
}

WordSet enumerate(const Edt0lSystem& s, int depth, int length_cap, EnumBudget b) {
  WordSet out;
  std::size_t cap = static_cast<std::size_t>(length_cap);
  std::size_t prune = nonerasing(s.maps) ? cap : static_cast<std::size_t>(-1);
  std::vector<int> idx(s.alphabet.size(), -1);
  int k = 0;
  for (int x = 0; x < s.alphabet.size(); ++x)
    if (s.terminal[x]) idx[x] = k++;
  explore({s.seed}, s.maps, depth, prune, b, [&](const Word& w) {
    if (w.size() > cap) return;
    Word t;
    for (int x : w) {
      if (idx[x] < 0) return;
      t.push_back(idx[x]);
    }
    out.insert(std::move(t));
  });
  return out;
}

WordSet enumerate(const Hdt0lSystem& s, int depth, int length_cap, EnumBudget b) {
  WordSet out;
  std::size_t cap = static_cast<std::size_t>(length_cap);
  std::size_t prune = (nonerasing(s.maps) && nonerasing(s.final)) ? cap : static_cast<std::size_t>(-1);
  explore({s.seed}, s.maps, depth, prune, b, [&](const Word& w) {
    Word img = apply_morphism(s.final, w);
    if (img.size() <= cap) out.insert(std::move(img));
  });
  return out;
}

WordSet enumerate(const ControlledEdt0l& c, int depth, int length_cap, EnumBudget b) {
  const auto& s = c.sys;
  std::vector<int> sym;
  for (const auto& nm : s.maps) {
    int i = c.control.symbol(nm.name);
    if (i < 0) throw Error("control alphabet does not name morphism '" + nm.name + "'");
    sym.push_back(i);
  }
  std::size_t cap = static_cast<std::size_t>(length_cap);
  std::size_t prune = nonerasing(s.maps) ? cap : static_cast<std::size_t>(-1);
  std::vector<int> idx(s.alphabet.size(), -1);
  int k = 0;
  for (int x = 0; x < s.alphabet.size(); ++x)
    if (s.terminal[x]) idx[x] = k++;
  WordSet out;
  std::set<std::pair<int, Word>> seen;
  std::vector<std::pair<int, Word>> frontier;
  std::size_t letters = 0;
  auto add = [&](int q, Word w, std::vector<std::pair<int, Word>>& into) {
    if (w.size() > prune) return;
    auto key = std::make_pair(q, w);
    if (!seen.insert(key).second) return;
    letters += w.size() + 1;
    if (letters > b.max_letters) throw BudgetExceeded("enumeration exceeded its letter budget");
    if (c.control.accepting[q] && w.size() <= cap) {
      Word t;
      bool ok = true;
      for (int x : w) {
        if (idx[x] < 0) {
          ok = false;
          break;
        }
        t.push_back(idx[x]);
      }
      if (ok) out.insert(std::move(t));
    }
    into.emplace_back(q, std::move(w));
  };
  add(c.control.initial, s.seed, frontier);
  for (int level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<std::pair<int, Word>> next;
    for (const auto& [q, w] : frontier)
      for (std::size_t m = 0; m < s.maps.size(); ++m) add(c.control.step(q, sym[m]), apply_morphism(s.maps[m].map, w), next);
    frontier.swap(next);
  }
  return out;
}

int dtf0l_fin_offset(const Dtf0lSystem& s, const std::vector<Word>& extra) {
  for (const auto& e : extra)
    for (int x : e)
      for (const auto& nm : s.maps)
        if (nm.map.image[x] != Word{x}) return 2;
  return 1;
}

Edt0lSystem dtf0l_fin_to_edt0l(const Dtf0lSystem& s, const std::vector<Word>& extra) {
  const bool protect = dtf0l_fin_offset(s, extra) == 2;
  Edt0lSystem e;
  e.alphabet = s.alphabet;
  e.terminal.assign(s.alphabet.size(), true);
  std::set<std::string> used;
  for (const auto& nm : s.maps) used.insert(nm.name);
  const int n = s.alphabet.size();

  // Working copies of the letters, used only when the extra words must be
  // shielded from the iterated maps.
  std::vector<int> work(n, -1);
  if (protect) {
    std::map<std::string, std::string> bases;
    for (int x = 0; x < n; ++x) {
      std::string b = base_name(s.alphabet.name(x));
      auto it = bases.find(b);
      if (it == bases.end()) {
        std::string f = b + "_w";
        while (e.alphabet.contains(f) || e.alphabet.contains(f + "^-1")) f += "_";
        it = bases.emplace(b, f).first;
      }
      work[x] = e.alphabet.add(is_inverse_name(s.alphabet.name(x)) ? it->second + "^-1" : it->second);
      e.terminal.push_back(false);
    }
  }
  const int N = e.alphabet.add(fresh_name("N", e.alphabet));
  e.terminal.push_back(false);
  e.seed = {N};
  const int total = e.alphabet.size();
  auto lift = [&](const Word& w) {
    if (!protect) return w;
    Word out;
    for (int x : w) out.push_back(work[x]);
    return out;
  };

  for (std::size_t i = 0; i < s.seeds.size(); ++i) {
    Morphism m = identity_morphism(total);
    m.image[N] = lift(s.seeds[i]);
    e.maps.push_back({unique_map_name("seed" + std::to_string(i), used), m});
  }
  for (std::size_t j = 0; j < extra.size(); ++j) {
    Morphism m = identity_morphism(total);
    m.image[N] = extra[j];
    e.maps.push_back({unique_map_name("extra" + std::to_string(j), used), m});
  }
  for (const auto& nm : s.maps) {
    Morphism m = identity_morphism(total);
    for (int x = 0; x < n; ++x) {
      if (protect)
        m.image[work[x]] = lift(nm.map.image[x]);
      else
        m.image[x] = nm.map.image[x];
    }
    e.maps.push_back({nm.name, m});
  }
  if (protect) {
    Morphism m = identity_morphism(total);
    for (int x = 0; x < n; ++x) m.image[work[x]] = {x};
    e.maps.push_back({unique_map_name("release", used), m});
  }
  return e;
}

Edt0lSystem hdt0l_to_edt0l(const Hdt0lSystem& s) {
  Edt0lSystem e;
  e.alphabet = s.out;
  e.terminal.assign(s.out.size(), true);
  std::vector<int> in(s.inner.size());
  std::map<std::string, std::string> renamed;
  for (int b = 0; b < s.inner.size(); ++b) {
    const std::string& nm = s.inner.name(b);
    std::string base = base_name(nm);
    auto it = renamed.find(base);
    if (it == renamed.end()) {
      std::string f = base;
      while (s.out.contains(f) || s.out.contains(f + "^-1")) f += "_";
      it = renamed.emplace(base, f).first;
    }
    in[b] = e.alphabet.add(is_inverse_name(nm) ? it->second + "^-1" : it->second);
    e.terminal.push_back(false);
  }
  const int total = e.alphabet.size();
  for (int x : s.seed) e.seed.push_back(in[x]);
  std::set<std::string> used;
  for (const auto& nm : s.maps) used.insert(nm.name);
  for (const auto& nm : s.maps) {
    Morphism m = identity_morphism(total);
    for (int b = 0; b < s.inner.size(); ++b) {
      Word img;
      for (int x : nm.map.image[b]) img.push_back(in[x]);
      m.image[in[b]] = img;
    }
    e.maps.push_back({nm.name, m});
  }
  Morphism emit = identity_morphism(total);
  for (int b = 0; b < s.inner.size(); ++b) emit.image[in[b]] = s.final.image[b];
  e.maps.push_back({unique_map_name("emit", used), emit});
  return e;
}

Hdt0lSystem edt0l_to_hdt0l(const Edt0lSystem& s, std::vector<int>* letter_state) {
  LetterTracking lt = letter_tracking(s);
  Hdt0lSystem h;
  h.out = s.terminal_alphabet();
  std::set<std::string> reserved;
  Annotator ann(s.alphabet, h.inner, reserved);
  h.seed = ann.annotate(s.seed, lt.dfa.initial);
  std::vector<std::pair<int, int>> origin;
  std::vector<std::vector<Word>> images(s.maps.size());
  while (ann.pending()) {
    int id = ann.pop();
    auto [x, q] = ann.origin(id);
    if (static_cast<int>(origin.size()) <= id) origin.resize(id + 1);
    origin[id] = {x, q};
    for (std::size_t m = 0; m < s.maps.size(); ++m) {
      if (static_cast<int>(images[m].size()) <= id) images[m].resize(id + 1);
      images[m][id] = ann.annotate(s.maps[m].map.image[x], lt.dfa.trans[q][m]);
    }
  }
  const int n = h.inner.size();
  for (std::size_t m = 0; m < s.maps.size(); ++m) {
    Morphism mm;
    mm.codomain = n;
    mm.image = images[m];
    mm.image.resize(n);
    h.maps.push_back({s.maps[m].name, mm});
  }
  h.final.codomain = h.out.size();
  h.final.image.assign(n, {});
  for (int id = 0; id < n; ++id) {
    auto [x, q] = origin[id];
    if (lt.dfa.accepting[q]) h.final.image[id] = s.to_terminal(Word{x});
  }
  if (letter_state) {
    letter_state->assign(n, -1);
    for (int id = 0; id < n; ++id) (*letter_state)[id] = origin[id].second;
  }
  return h;
}

bool edt0l_to_hdt0l_by_emit(const Edt0lSystem& s, Hdt0lSystem& out) {
  const int n = s.alphabet.size();
  auto fixes_terminals = [&](const Morphism& m) {
    for (int x = 0; x < n; ++x)
      if (s.terminal[x] && m.image[x] != Word{x}) return false;
    return true;
  };
  for (std::size_t e = 0; e < s.maps.size(); ++e) {
    const Morphism& em = s.maps[e].map;
    bool ok = fixes_terminals(em);
    for (int x = 0; x < n && ok; ++x)
      if (!s.is_terminal_word(em.image[x])) ok = false;
    for (std::size_t m = 0; m < s.maps.size() && ok; ++m)
      if (m != e && !fixes_terminals(s.maps[m].map)) ok = false;
    if (!ok) continue;
    out = Hdt0lSystem{};
    out.inner = s.alphabet;
    out.seed = s.seed;
    for (std::size_t m = 0; m < s.maps.size(); ++m)
      if (m != e) out.maps.push_back(s.maps[m]);
    out.out = s.terminal_alphabet();
    out.final.codomain = out.out.size();
    for (int x = 0; x < n; ++x) out.final.image.push_back(s.to_terminal(em.image[x]));
    return true;
  }
  return false;
}

Edt0lSystem eliminate_control(const ControlledEdt0l& c, std::vector<int>* letter_state) {
  validate(c);
  const Edt0lSystem& s = c.sys;
  const Dfa& d = c.control;
  std::vector<int> sym;
  for (const auto& nm : s.maps) sym.push_back(d.symbol(nm.name));

  Edt0lSystem e;
  std::set<std::string> reserved;
  for (int x = 0; x < s.alphabet.size(); ++x) {
    reserved.insert(s.alphabet.name(x));
    if (s.terminal[x]) {
      e.alphabet.add(s.alphabet.name(x));
      e.terminal.push_back(true);
    }
  }
  const int nterm = e.alphabet.size();
  std::vector<int> term_id(s.alphabet.size(), -1);
  for (int x = 0, k = 0; x < s.alphabet.size(); ++x)
    if (s.terminal[x]) term_id[x] = k++;

  std::string dead_name = "dead";
  while (reserved.count(dead_name)) dead_name += "_";
  reserved.insert(dead_name);
  const int dead = e.alphabet.add(dead_name);
  e.terminal.push_back(false);

  // Letter -1 of the source stands for the state marker.
  Alphabet src = s.alphabet;
  std::string marker = "Z";
  while (src.contains(marker) || reserved.count(marker)) marker += "_";
  const int marker_letter = src.add(marker);

  Annotator ann(src, e.alphabet, reserved);
  ann.set_first(dead + 1);
  Word seed = s.seed;
  seed.push_back(marker_letter);
  e.seed = ann.annotate(seed, d.initial);

  struct Lifted {
    std::size_t map;
    int q;
    std::vector<std::pair<int, Word>> images;  // annotated letter -> image
  };
  std::map<std::pair<std::size_t, int>, Lifted> lifted;
  std::vector<std::pair<int, int>> origin;
  std::set<int> states_seen;
  while (ann.pending()) {
    int id = ann.pop();
    auto [x, q] = ann.origin(id);
    if (static_cast<int>(origin.size()) <= id) origin.resize(id + 1, {-1, -1});
    origin[id] = {x, q};
    states_seen.insert(q);
    for (std::size_t m = 0; m < s.maps.size(); ++m) {
      int q2 = d.step(q, sym[m]);
      Word img = x == marker_letter ? Word{marker_letter} : s.maps[m].map.image[x];
      auto& L = lifted[{m, q}];
      L.map = m;
      L.q = q;
      L.images.emplace_back(id, ann.annotate(img, q2));
    }
  }
  const int total = e.alphabet.size();
  for (int id = static_cast<int>(e.terminal.size()); id < total; ++id) e.terminal.push_back(false);

  std::set<std::string> used;
  for (auto& [key, L] : lifted) {
    Morphism m = identity_morphism(total);
    for (int id = dead + 1; id < total; ++id) m.image[id] = {dead};
    for (auto& [id, img] : L.images) m.image[id] = img;
    e.maps.push_back({unique_map_name(sanitize_name(s.maps[L.map].name) + "_" + std::to_string(L.q), used), m});
  }
  Morphism emit = identity_morphism(total);
  for (int id = dead + 1; id < total; ++id) {
    auto [x, q] = origin[id];
    if (!d.accepting[q])
      emit.image[id] = {dead};
    else if (x == marker_letter)
      emit.image[id] = {};
    else if (s.terminal[x])
      emit.image[id] = {term_id[x]};
    else
      emit.image[id] = {dead};
  }
  e.maps.push_back({unique_map_name("emit", used), emit});
  (void)nterm;
  if (letter_state) {
    letter_state->assign(total, -1);
    for (int id = dead + 1; id < total; ++id) (*letter_state)[id] = origin[id].second;
  }
  return e;
}

ControlledEdt0l restrict_to_terminal_control(const ControlledEdt0l& c) {
  validate(c);
  ControlledEdt0l out;
  out.sys = c.sys;
  out.control = prune(product(c.control, letter_tracking_dfa(c.sys)));
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

void declare(Alphabet& a, std::vector<bool>* term, bool is_term, const std::string& list, int line) {
  for (const auto& t : split_ws(list)) {
    std::string b = base_name(t);
    if (!valid_symbol_name(b)) throw ParseError(line, "invalid symbol name '" + t + "'");
    if (a.contains(b)) throw ParseError(line, "symbol '" + b + "' declared twice");
    a.add(b);
    a.add(inverse_name(b));
    if (term) {
      term->push_back(is_term);
      term->push_back(is_term);
    }
  }
}

Word word_at(const Alphabet& a, const std::string& text, int line) {
  try {
    return parse_word(a, text);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

Morphism parse_map_entries(const Alphabet& dom, const Alphabet& cod, const BraceBlock& b, bool identity_default) {
  Morphism m;
  m.codomain = cod.size();
  m.image.assign(dom.size(), {});
  std::vector<bool> given(dom.size(), false);
  for (const auto& ent : b.entries) {
    auto arrow = ent.find("->");
    if (arrow == std::string::npos) throw ParseError(b.line, "expected 'x -> image' in '" + ent + "'");
    std::string lhs = trim(ent.substr(0, arrow));
    int x = dom.find(lhs);
    if (x < 0) throw ParseError(b.line, "unknown letter '" + lhs + "'");
    if (given[x]) throw ParseError(b.line, "letter '" + lhs + "' mapped twice");
    given[x] = true;
    m.image[x] = word_at(cod, ent.substr(arrow + 2), b.line);
  }
  for (int x = 0; x < dom.size(); ++x) {
    if (given[x]) continue;
    int y = dom.inverse(x);
    if (y >= 0 && given[y]) {
      try {
        m.image[x] = inverse(cod, m.image[y]);
      } catch (const Error& e) {
        throw ParseError(b.line, e.what());
      }
    } else if (identity_default) {
      m.image[x] = {cod.at(dom.name(x))};
    } else {
      throw ParseError(b.line, "letter '" + dom.name(x) + "' has no image");
    }
  }
  return m;
}

std::string symbols_line(const Alphabet& a, const std::function<bool(int)>& keep) {
  std::string out;
  std::set<std::string> done;
  for (int x = 0; x < a.size(); ++x) {
    if (!keep(x)) continue;
    std::string b = base_name(a.name(x));
    if (!done.insert(b).second) continue;
    out += ' ';
    out += b;
  }
  return out;
}

void format_map(std::ostringstream& out, const std::string& head, const Alphabet& dom, const Alphabet& cod,
                const Morphism& m, bool all) {
  std::vector<std::string> ents;
  for (int x = 0; x < dom.size(); ++x) {
    int y = dom.inverse(x);
    auto is_id = [&](int l) {
      return m.image[l].size() == 1 && cod.name(m.image[l][0]) == dom.name(l);
    };
    bool show = all || !is_id(x) || (y >= 0 && !is_id(y));
    if (show) ents.push_back(dom.name(x) + " -> " + format_word(cod, m.image[x]));
  }
  out << head << " {";
  for (std::size_t i = 0; i < ents.size(); ++i) out << (i ? " ; " : " ") << ents[i];
  out << " }\n";
}

}  // namespace

AnySystem parse_system(const std::vector<Line>& lines, const std::string& base_dir) {
  if (lines.empty()) throw ParseError(0, "empty system");
  const std::string hdr = lines[0].text;
  const int hl = lines[0].no;
  std::string kind;
  if (hdr == "[dt0l]" || hdr == "[dtf0l]" || hdr == "[edt0l]" || hdr == "[hdt0l]" || hdr == "[cedt0l]")
    kind = hdr.substr(1, hdr.size() - 2);
  else
    throw ParseError(hl, "unknown system header '" + hdr + "'");

  std::string terminals, nonterminals, seed, seeds, control;
  int seed_line = hl, seeds_line = hl, term_line = hl, nonterm_line = hl, control_line = hl;
  bool have_seed = false, have_seeds = false;
  std::vector<BraceBlock> maps;
  std::vector<BraceBlock> finals;
  for (std::size_t i = 1; i < lines.size();) {
    const auto& ln = lines[i];
    if (starts_with(ln.text, "map ")) {
      BraceBlock b = read_brace_block(lines, i);
      b.head = trim(b.head.substr(4));
      if (!valid_symbol_name(b.head)) throw ParseError(b.line, "invalid morphism name '" + b.head + "'");
      for (const auto& o : maps)
        if (o.head == b.head) throw ParseError(b.line, "duplicate morphism '" + b.head + "'");
      maps.push_back(b);
      continue;
    }
    if (starts_with(ln.text, "final")) {
      finals.push_back(read_brace_block(lines, i));
      continue;
    }
    std::string k, v;
    if (!key_value(ln.text, k, v)) throw ParseError(ln.no, "unrecognized line '" + ln.text + "'");
    if (k == "terminals" || k == "alphabet") {
      terminals = v;
      term_line = ln.no;
    } else if (k == "nonterminals") {
      nonterminals = v;
      nonterm_line = ln.no;
    } else if (k == "seed") {
      seed = v;
      seed_line = ln.no;
      have_seed = true;
    } else if (k == "seeds") {
      seeds = v;
      seeds_line = ln.no;
      have_seeds = true;
    } else if (k == "control") {
      control = v;
      control_line = ln.no;
    } else {
      throw ParseError(ln.no, "unknown key '" + k + "'");
    }
    ++i;
  }

  auto parse_maps = [&](const Alphabet& a) {
    std::vector<NamedMorphism> out;
    for (const auto& b : maps) out.push_back({b.head, parse_map_entries(a, a, b, true)});
    return out;
  };

  if (kind == "dt0l" || kind == "dtf0l") {
    if (!nonterminals.empty()) throw ParseError(nonterm_line, kind + " systems have no nonterminals");
    Alphabet a;
    declare(a, nullptr, true, terminals, term_line);
    std::vector<Word> ws;
    if (kind == "dt0l") {
      if (!have_seed) throw ParseError(hl, "missing 'seed'");
      ws.push_back(word_at(a, seed, seed_line));
    } else {
      if (have_seed) ws.push_back(word_at(a, seed, seed_line));
      if (have_seeds)
        for (const auto& part : split(seeds, ';')) ws.push_back(word_at(a, part, seeds_line));
      if (ws.empty()) throw ParseError(hl, "missing 'seeds'");
    }
    auto ms = parse_maps(a);
    if (kind == "dt0l") return Dt0lSystem{a, ws[0], ms};
    return Dtf0lSystem{a, ws, ms};
  }
  if (kind == "hdt0l") {
    Hdt0lSystem h;
    declare(h.inner, nullptr, false, nonterminals, nonterm_line);
    declare(h.out, nullptr, true, terminals, term_line);
    if (!have_seed) throw ParseError(hl, "missing 'seed'");
    h.seed = word_at(h.inner, seed, seed_line);
    h.maps = parse_maps(h.inner);
    if (finals.size() != 1) throw ParseError(hl, "expected exactly one 'final' block");
    h.final = parse_map_entries(h.inner, h.out, finals[0], false);
    return h;
  }
  Edt0lSystem e;
  declare(e.alphabet, &e.terminal, true, terminals, term_line);
  declare(e.alphabet, &e.terminal, false, nonterminals, nonterm_line);
  if (!have_seed) throw ParseError(hl, "missing 'seed'");
  e.seed = word_at(e.alphabet, seed, seed_line);
  e.maps = parse_maps(e.alphabet);
  if (!finals.empty()) throw ParseError(finals[0].line, "'final' only allowed in hdt0l systems");
  if (kind == "edt0l") return e;
  if (control.empty()) throw ParseError(hl, "missing 'control'");
  std::filesystem::path p(control);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  ControlledEdt0l c;
  c.sys = e;
  try {
    c.control = parse_dfa(read_lines_file(p.string()));
  } catch (const ParseError& err) {
    throw ParseError(err.line, std::string(p.string()) + ": " + err.what());
  } catch (const Error& err) {
    throw ParseError(control_line, err.what());
  }
  try {
    validate(c);
  } catch (const Error& err) {
    throw ParseError(control_line, err.what());
  }
  return c;
}

AnySystem parse_system_text(const std::string& text, const std::string& base_dir) {
  std::istringstream in(text);
  return parse_system(read_lines(in), base_dir);
}

AnySystem load_system(const std::string& path) {
  auto dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  return parse_system(read_lines_file(path), dir);
}

Edt0lSystem parse_edt0l_text(const std::string& text) {
  auto s = parse_system_text(text);
  if (auto* e = std::get_if<Edt0lSystem>(&s)) return *e;
  throw Error("expected an [edt0l] system");
}

Hdt0lSystem parse_hdt0l_text(const std::string& text) {
  auto s = parse_system_text(text);
  if (auto* e = std::get_if<Hdt0lSystem>(&s)) return *e;
  throw Error("expected an [hdt0l] system");
}

std::string format_system(const AnySystem& sys) {
  std::ostringstream out;
  auto all = [](int) { return true; };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Dt0lSystem> || std::is_same_v<T, Dtf0lSystem>) {
          out << (std::is_same_v<T, Dt0lSystem> ? "[dt0l]\n" : "[dtf0l]\n");
          out << "terminals =" << symbols_line(s.alphabet, all) << "\n";
          if constexpr (std::is_same_v<T, Dt0lSystem>) {
            out << "seed = " << format_word(s.alphabet, s.seed) << "\n";
          } else {
            out << "seeds = ";
            for (std::size_t i = 0; i < s.seeds.size(); ++i)
              out << (i ? " ; " : "") << format_word(s.alphabet, s.seeds[i]);
            out << "\n";
          }
          for (const auto& nm : s.maps) format_map(out, "map " + nm.name, s.alphabet, s.alphabet, nm.map, false);
        } else if constexpr (std::is_same_v<T, Hdt0lSystem>) {
          out << "[hdt0l]\n";
          out << "terminals =" << symbols_line(s.out, all) << "\n";
          out << "nonterminals =" << symbols_line(s.inner, all) << "\n";
          out << "seed = " << format_word(s.inner, s.seed) << "\n";
          for (const auto& nm : s.maps) format_map(out, "map " + nm.name, s.inner, s.inner, nm.map, false);
          format_map(out, "final", s.inner, s.out, s.final, true);
        } else {
          const Edt0lSystem& e = [&]() -> const Edt0lSystem& {
            if constexpr (std::is_same_v<T, ControlledEdt0l>)
              return s.sys;
            else
              return s;
          }();
          out << (std::is_same_v<T, ControlledEdt0l> ? "[cedt0l]\n" : "[edt0l]\n");
          out << "terminals =" << symbols_line(e.alphabet, [&](int x) { return e.terminal[x]; }) << "\n";
          out << "nonterminals =" << symbols_line(e.alphabet, [&](int x) { return !e.terminal[x]; }) << "\n";
          out << "seed = " << format_word(e.alphabet, e.seed) << "\n";
          for (const auto& nm : e.maps) format_map(out, "map " + nm.name, e.alphabet, e.alphabet, nm.map, false);
          if constexpr (std::is_same_v<T, ControlledEdt0l>) out << "control = control.dfa\n";
        }
      },
      sys);
  return out.str();
}

}  // namespace lgroup
