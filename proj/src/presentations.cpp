#include "lgroup/presentations.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <set>
#include <sstream>
#include <unordered_set>

namespace lgroup {

namespace {

// Letter-by-letter renaming between alphabets that share letter names.
Word translate(const Alphabet& from, const Alphabet& to, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    int y = to.find(from.name(x));
    if (y < 0) throw Error("letter '" + from.name(x) + "' is not in the target alphabet");
    out.push_back(y);
  }
  return out;
}

void check_names(const Alphabet& letters, const Alphabet& group, const char* what) {
  for (const auto& n : letters.names())
    if (!group.contains(n)) throw Error(std::string(what) + " letter '" + n + "' is not a generator or inverse");
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : w) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

Hdt0lSystem to_hdt0l(const Edt0lSystem& e) {
  Hdt0lSystem h;
  if (edt0l_to_hdt0l_by_emit(e, h)) return h;
  return edt0l_to_hdt0l(e);
}

// Adds the finite set `extra` (over terminal names) to the language of an EDT0L
// system whose maps all fix the terminals.
Edt0lSystem union_with_finite(Edt0lSystem e, const Alphabet& words_alphabet, const std::vector<Word>& extra) {
  if (extra.empty()) return e;
  std::string z = fresh_name("Z", e.alphabet);
  int zi = e.alphabet.add(z);
  e.alphabet.add(inverse_name(z));
  e.terminal.push_back(false);
  e.terminal.push_back(false);
  const int n = e.alphabet.size();
  std::set<std::string> used;
  for (auto& nm : e.maps) {
    used.insert(nm.name);
    nm.map.codomain = n;
    nm.map.image.push_back({zi});
    nm.map.image.push_back({zi + 1});
  }
  auto add_map = [&](const std::string& want, const Word& img) {
    std::string name = want;
    for (int k = 2; used.count(name); ++k) name = want + std::to_string(k);
    used.insert(name);
    Morphism m = identity_morphism(n);
    m.image[zi] = img;
    e.maps.push_back({name, m});
  };
  add_map("start", e.seed);
  for (std::size_t k = 0; k < extra.size(); ++k) add_map("extra" + std::to_string(k + 1), translate(words_alphabet, e.alphabet, extra[k]));
  e.seed = {zi};
  return e;
}

std::vector<Word> nonempty_reduced(const Alphabet& a, const std::vector<Word>& ws) {
  WordSet s;
  for (const Word& w : ws) {
    Word r = free_reduce(a, w);
    if (!r.empty()) s.insert(r);
  }
  return {s.begin(), s.end()};
}

}  // namespace

const char* MarkedPresentation::source_kind() const {
  switch (source.index()) {
    case 0: return "finite";
    case 1: return "edt0l";
    case 2: return "hdt0l";
    default: return "lpres";
  }
}

void validate(const MarkedPresentation& p) {
  Alphabet a = p.alphabet();
  for (const auto& g : p.generators)
    if (!valid_symbol_name(g) || is_inverse_name(g)) throw Error("invalid generator name '" + g + "'");
  if (const auto* f = std::get_if<std::vector<Word>>(&p.source)) {
    for (const Word& w : *f)
      for (int x : w)
        if (x < 0 || x >= a.size()) throw Error("relator letter out of range");
  } else if (const auto* e = std::get_if<Edt0lSystem>(&p.source)) {
    validate(*e);
    check_names(e->terminal_alphabet(), a, "terminal");
  } else if (const auto* h = std::get_if<Hdt0lSystem>(&p.source)) {
    validate(*h);
    check_names(h->out, a, "output");
  } else {
    const auto& l = std::get<LPresentation>(p.source);
    if (l.generators != p.generators) throw Error("L-presentation generators differ from the marking");
    for (const auto& nm : l.endos)
      if (nm.map.domain() != a.size() || nm.map.codomain != a.size() || !respects_inverses(a, a, nm.map))
        throw Error("endomorphism '" + nm.name + "' is not a group endomorphism");
  }
}

WordSet relators(const MarkedPresentation& p, int depth, int length_cap, EnumBudget b) {
  Alphabet a = p.alphabet();
  WordSet out;
  if (const auto* f = std::get_if<std::vector<Word>>(&p.source)) {
    out.insert(f->begin(), f->end());
  } else if (const auto* e = std::get_if<Edt0lSystem>(&p.source)) {
    Alphabet t = e->terminal_alphabet();
    for (const Word& w : enumerate(*e, depth, length_cap, b)) out.insert(translate(t, a, w));
  } else if (const auto* h = std::get_if<Hdt0lSystem>(&p.source)) {
    for (const Word& w : enumerate(*h, depth, length_cap, b)) out.insert(translate(h->out, a, w));
  } else {
    const auto& l = std::get<LPresentation>(p.source);
    for (const Word& q : l.Q)
      if (static_cast<int>(q.size()) <= length_cap) out.insert(q);
    std::unordered_set<Word, WordHash> seen;
    std::vector<Word> level;
    std::size_t letters = 0;
    for (const Word& r : l.R) {
      Word w = free_reduce(a, r);
      if (seen.insert(w).second) level.push_back(w);
    }
    for (int n = 0;; ++n) {
      for (const Word& w : level)
        if (static_cast<int>(w.size()) <= length_cap) out.insert(w);
      if (n == depth) break;
      std::vector<Word> next;
      for (const Word& w : level)
        for (const auto& nm : l.endos) {
          Word img = apply_reduced(a, nm.map, w);
          letters += img.size();
          if (letters > b.max_letters) throw BudgetExceeded("relator enumeration budget exhausted");
          if (seen.insert(img).second) next.push_back(std::move(img));
        }
      level = std::move(next);
    }
  }
  return out;
}

InnerGroup inner_group(const Hdt0lSystem& h, const std::vector<std::string>& avoid) {
  InnerGroup g;
  const Alphabet& in = h.inner;
  bool paired = true;
  for (int x = 0; x < in.size() && paired; ++x)
    if (in.inverse(x) < 0) paired = false;
  for (const auto& nm : h.maps)
    if (paired && !respects_inverses(in, in, nm.map)) paired = false;
  if (paired && !respects_inverses(in, h.out, h.final)) paired = false;
  g.paired = paired;
  Alphabet taken;
  for (const auto& n : avoid) {
    taken.add(n);
    taken.add(inverse_name(n));
  }
  auto claim = [&](const std::string& want) {
    std::string n = fresh_name(want, taken);
    taken.add(n);
    taken.add(inverse_name(n));
    g.generators.push_back(n);
    return static_cast<int>(g.generators.size()) - 1;
  };
  g.letter.assign(in.size(), {});
  for (int x = 0; x < in.size(); ++x) {
    if (paired) {
      if (is_inverse_name(in.name(x))) continue;
      int k = claim(in.name(x));
      g.letter[x] = {2 * k};
      g.letter[in.inverse(x)] = {2 * k + 1};
    } else {
      int k = claim(sanitize_name(in.name(x)));
      g.letter[x] = {2 * k};
    }
  }
  return g;
}

MarkedPresentation edt0l_to_lpresentation(const MarkedPresentation& p) {
  Hdt0lSystem h;
  if (const auto* e = std::get_if<Edt0lSystem>(&p.source))
    h = to_hdt0l(*e);
  else if (const auto* hh = std::get_if<Hdt0lSystem>(&p.source))
    h = *hh;
  else
    throw Error("edt0l_to_lpresentation: source must be a grammar");
  InnerGroup ig = inner_group(h, p.generators);
  LPresentation L;
  L.generators = ig.generators;
  L.generators.insert(L.generators.end(), p.generators.begin(), p.generators.end());
  Alphabet LA = L.alphabet();
  Alphabet S = p.alphabet();
  const int ni = static_cast<int>(ig.generators.size());
  auto inner_word = [&](const Word& w) {
    Word out;
    for (int x : w) out.insert(out.end(), ig.letter[x].begin(), ig.letter[x].end());
    return out;
  };
  auto terminal_word = [&](const Word& w) {
    Word out = translate(h.out, S, w);
    for (int& x : out) x += 2 * ni;
    return out;
  };
  // The inner letter carrying generator k.
  std::vector<int> carrier(ni, -1);
  for (int x = 0; x < h.inner.size(); ++x)
    if (ig.letter[x].size() == 1 && ig.letter[x][0] % 2 == 0 && carrier[ig.letter[x][0] / 2] < 0) carrier[ig.letter[x][0] / 2] = x;
  for (const auto& nm : h.maps) {
    std::vector<Word> imgs;
    for (int k = 0; k < ni; ++k) imgs.push_back(inner_word(nm.map.image[carrier[k]]));
    for (std::size_t j = 0; j < p.generators.size(); ++j) imgs.push_back({2 * (ni + static_cast<int>(j))});
    L.endos.push_back({nm.name, group_endomorphism(LA, imgs)});
  }
  for (int k = 0; k < ni; ++k) {
    Word q = concat({2 * k}, inverse(LA, terminal_word(h.final.image[carrier[k]])));
    q = free_reduce(LA, q);
    if (!q.empty()) L.Q.push_back(q);
  }
  Word seed = free_reduce(LA, inner_word(h.seed));
  if (!seed.empty()) L.R.push_back(seed);
  MarkedPresentation out;
  out.generators = L.generators;
  out.source = std::move(L);
  return out;
}

MarkedPresentation lpresentation_to_dtf0l_fin(const MarkedPresentation& p) {
  const auto* l = std::get_if<LPresentation>(&p.source);
  if (!l) throw Error("lpresentation_to_dtf0l_fin: source must be an L-presentation");
  Dtf0lSystem d;
  d.alphabet = l->alphabet();
  d.seeds = l->R;
  d.maps = l->endos;
  MarkedPresentation out;
  out.generators = p.generators;
  out.source = dtf0l_fin_to_edt0l(d, l->Q);
  return out;
}

MarkedPresentation tietze_eliminate(const MarkedPresentation& p, const std::string& gen, const Word& defining,
                                    int depth, int length_cap) {
  auto it = std::find(p.generators.begin(), p.generators.end(), gen);
  if (it == p.generators.end()) throw Error("tietze_eliminate: no generator '" + gen + "'");
  const int gi = static_cast<int>(it - p.generators.begin());
  Alphabet A = p.alphabet();
  for (int x : defining)
    if (x / 2 == gi) throw Error("tietze_eliminate: defining word uses '" + gen + "'");
  WordSet rels = relators(p, depth, length_cap);
  Word target = free_reduce(A, concat({2 * gi}, inverse(A, defining)));
  Word target_inv = inverse(A, target);
  bool found = false;
  for (const Word& r : rels) {
    Word rr = free_reduce(A, r);
    if (rr == target || rr == target_inv) {
      found = true;
      break;
    }
  }
  if (!found) throw Error("tietze_eliminate: relator " + gen + " = defining word not present");
  MarkedPresentation out;
  out.generators = p.generators;
  out.generators.erase(out.generators.begin() + gi);
  Alphabet B = out.alphabet();
  std::vector<Word> img(A.size());
  Word def_b = translate(A, B, defining);
  for (int x = 0; x < A.size(); ++x) {
    if (x / 2 == gi)
      img[x] = x % 2 ? inverse(B, def_b) : def_b;
    else
      img[x] = {B.at(A.name(x))};
  }
  std::vector<Word> words;
  for (const Word& r : rels) {
    Word w;
    for (int x : r) w.insert(w.end(), img[x].begin(), img[x].end());
    words.push_back(w);
  }
  out.source = nonempty_reduced(B, words);
  return out;
}

MarkedPresentation change_generators(const MarkedPresentation& p, const std::vector<std::string>& T,
                                     const std::vector<Word>& w_t, const std::vector<Word>& w_s) {
  Alphabet A = p.alphabet();
  MarkedPresentation out;
  out.generators = T;
  Alphabet B = out.alphabet();
  if (w_t.size() != T.size()) throw Error("change_generators: need one word per new generator");
  if (w_s.size() != p.generators.size()) throw Error("change_generators: need one witness per old generator");
  for (const Word& w : w_t)
    for (int x : w)
      if (x < 0 || x >= A.size()) throw Error("change_generators: malformed word over the old generators");
  for (const Word& w : w_s)
    for (int x : w)
      if (x < 0 || x >= B.size()) throw Error("change_generators: malformed witness over the new generators");
  Morphism pi;
  pi.codomain = B.size();
  for (int x = 0; x < A.size(); ++x) pi.image.push_back(x % 2 ? inverse(B, w_s[x / 2]) : w_s[x / 2]);
  std::vector<Word> extra;
  for (std::size_t i = 0; i < T.size(); ++i) {
    Word e = free_reduce(B, concat({2 * static_cast<int>(i)}, inverse(B, apply_reduced(B, pi, w_t[i]))));
    if (!e.empty()) extra.push_back(e);
  }
  if (const auto* f = std::get_if<std::vector<Word>>(&p.source)) {
    std::vector<Word> words = extra;
    for (const Word& r : *f) words.push_back(apply_morphism(pi, r));
    out.source = nonempty_reduced(B, words);
    return out;
  }
  Hdt0lSystem h;
  if (const auto* e = std::get_if<Edt0lSystem>(&p.source))
    h = to_hdt0l(*e);
  else if (const auto* hh = std::get_if<Hdt0lSystem>(&p.source))
    h = *hh;
  else
    h = to_hdt0l(std::get<Edt0lSystem>(lpresentation_to_dtf0l_fin(p).source));
  Morphism fin;
  fin.codomain = B.size();
  for (int x = 0; x < h.out.size(); ++x) fin.image.push_back(apply_morphism(pi, {A.at(h.out.name(x))}));
  h.final = compose(fin, h.final);
  h.out = B;
  if (extra.empty()) {
    out.source = h;
  } else {
    out.source = union_with_finite(hdt0l_to_edt0l(h), B, extra);
  }
  return out;
}

std::string hat_name(const std::string& s) {
  if (is_inverse_name(s)) return inverse_name(base_name(s) + "_hat");
  return s + "_hat";
}

MarkedPresentation amalgam_gadget(const Edt0lSystem& L) {
  validate(L);
  Alphabet T = L.terminal_alphabet();
  std::vector<std::string> S;
  for (int x = 0; x < T.size(); ++x)
    if (!is_inverse_name(T.name(x))) S.push_back(T.name(x));
  for (const auto& s : S)
    if (s == "a" || s == "b") throw Error("amalgam_gadget: generators a and b are reserved");
  Edt0lSystem g;
  const int n = L.alphabet.size();
  g.alphabet = L.alphabet;
  g.terminal = L.terminal;
  for (int x = 0; x < n; ++x) {
    std::string h = hat_name(L.alphabet.name(x));
    if (g.alphabet.contains(h)) throw Error("amalgam_gadget: name clash on '" + h + "'");
    g.alphabet.add(h);
    g.terminal.push_back(L.terminal[x]);
  }
  for (const char* c : {"a", "a^-1", "b", "b^-1"}) {
    if (g.alphabet.contains(c)) throw Error(std::string("amalgam_gadget: name clash on '") + c + "'");
    g.alphabet.add(c);
    g.terminal.push_back(true);
  }
  const int ia = 2 * n, ib = 2 * n + 2;
  auto hat = [&](const Word& w) {
    Word o;
    for (int x : w) o.push_back(x + n);
    return o;
  };
  const Word& w0 = L.seed;
  g.seed = w0;
  g.seed.push_back(ia);
  g.seed.insert(g.seed.end(), w0.begin(), w0.end());
  Word hw = hat(w0);
  g.seed.insert(g.seed.end(), hw.begin(), hw.end());
  g.seed.push_back(ib);
  g.seed.insert(g.seed.end(), hw.begin(), hw.end());
  for (const auto& nm : L.maps) {
    Morphism m = identity_morphism(g.alphabet.size());
    for (int x = 0; x < n; ++x) {
      m.image[x] = nm.map.image[x];
      m.image[x + n] = hat(nm.map.image[x]);
    }
    g.maps.push_back({nm.name, m});
  }
  MarkedPresentation out;
  out.generators = S;
  for (const auto& s : S) out.generators.push_back(hat_name(s));
  out.generators.push_back("a");
  out.generators.push_back("b");
  out.source = std::move(g);
  validate(out);
  return out;
}

std::optional<bool> in_normal_closure(const Alphabet& a, const std::vector<Word>& rels, const Word& w, int conj_len,
                                      std::size_t node_budget) {
  std::vector<Word> conjugators{{}};
  for (int len = 1; len <= conj_len; ++len) {
    std::vector<Word> more;
    for (const Word& u : conjugators)
      if (static_cast<int>(u.size()) == len - 1)
        for (int x = 0; x < a.size(); ++x)
          if (u.empty() || a.inverse(u.back()) != x) more.push_back(concat(u, {x}));
    conjugators.insert(conjugators.end(), more.begin(), more.end());
  }
  std::vector<Word> moves;
  std::set<Word> seen_moves;
  for (const Word& r : rels)
    for (const Word& rr : {r, inverse(a, r)})
      for (const Word& u : conjugators) {
        Word c = free_reduce(a, concat(concat(u, rr), inverse(a, u)));
        if (!c.empty() && seen_moves.insert(c).second) moves.push_back(c);
      }
  std::unordered_set<Word, WordHash> seen;
  std::deque<Word> q;
  Word start = free_reduce(a, w);
  if (start.empty()) return true;
  q.push_back(start);
  seen.insert(start);
  while (!q.empty()) {
    Word x = q.front();
    q.pop_front();
    for (const Word& c : moves) {
      Word y = free_reduce(a, concat(x, c));
      if (y.empty()) return true;
      if (seen.insert(y).second) {
        if (seen.size() > node_budget) return std::nullopt;
        q.push_back(std::move(y));
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- text format

namespace {

std::vector<Word> parse_word_block(const Alphabet& a, const BraceBlock& b) {
  std::vector<Word> out;
  for (const auto& e : b.entries) {
    std::string t = trim(e);
    if (t.empty()) continue;
    try {
      out.push_back(parse_word(a, t));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(b.line, err.what());
    }
  }
  return out;
}

std::string format_word_block(const Alphabet& a, const std::vector<Word>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? " ; " : " ") + format_word(a, ws[i]);
  return s + (ws.empty() ? "}" : " }");
}

}  // namespace

MarkedPresentation parse_presentation(const std::vector<Line>& lines, const std::string& base_dir) {
  if (lines.empty() || lines[0].text != "[presentation]")
    throw ParseError(lines.empty() ? 0 : lines[0].no, "expected [presentation]");
  MarkedPresentation p;
  std::string source;
  int source_line = lines[0].no;
  bool have_gens = false;
  std::vector<BraceBlock> blocks;
  std::vector<Line> system;
  for (std::size_t i = 1; i < lines.size();) {
    const Line& ln = lines[i];
    if (ln.text == "[lpres]" || ln.text == "[finite]") {
      ++i;
      continue;
    }
    if (!ln.text.empty() && ln.text[0] == '[') {
      system.assign(lines.begin() + i, lines.end());
      break;
    }
    if (ln.text.find('{') != std::string::npos) {
      blocks.push_back(read_brace_block(lines, i));
      continue;
    }
    std::string k, v;
    if (!key_value(ln.text, k, v)) throw ParseError(ln.no, "unrecognized line '" + ln.text + "'");
    if (k == "generators") {
      p.generators = split_ws(v);
      for (const auto& g : p.generators)
        if (!valid_symbol_name(g) || is_inverse_name(g)) throw ParseError(ln.no, "invalid generator '" + g + "'");
      have_gens = true;
    } else if (k == "source") {
      source = v;
      source_line = ln.no;
    } else {
      throw ParseError(ln.no, "unknown key '" + k + "'");
    }
    ++i;
  }
  if (!have_gens) throw ParseError(lines[0].no, "missing 'generators'");
  Alphabet A = p.alphabet();
  auto no_blocks = [&] {
    if (!blocks.empty()) throw ParseError(blocks[0].line, "unexpected block for source '" + source + "'");
  };
  if (source == "finite") {
    if (!system.empty()) throw ParseError(system[0].no, "unexpected system block");
    std::vector<Word> rels;
    for (const auto& b : blocks) {
      if (b.head != "relators") throw ParseError(b.line, "expected 'relators { ... }'");
      auto ws = parse_word_block(A, b);
      rels.insert(rels.end(), ws.begin(), ws.end());
    }
    p.source = rels;
  } else if (source == "lpres") {
    if (!system.empty()) throw ParseError(system[0].no, "unexpected system block");
    LPresentation L;
    L.generators = p.generators;
    for (const auto& b : blocks) {
      if (b.head == "Q") {
        auto ws = parse_word_block(A, b);
        L.Q.insert(L.Q.end(), ws.begin(), ws.end());
      } else if (b.head == "R") {
        auto ws = parse_word_block(A, b);
        L.R.insert(L.R.end(), ws.begin(), ws.end());
      } else if (starts_with(b.head, "endo ")) {
        std::string name = trim(b.head.substr(5));
        if (!valid_symbol_name(name)) throw ParseError(b.line, "invalid endomorphism name '" + name + "'");
        std::vector<Word> imgs;
        for (int g = 0; g < A.size(); g += 2) imgs.push_back({g});
        for (const auto& e : b.entries) {
          std::string t = trim(e);
          if (t.empty()) continue;
          auto arrow = t.find("->");
          if (arrow == std::string::npos) throw ParseError(b.line, "expected 'x -> word'");
          std::string lhs = trim(t.substr(0, arrow));
          auto it = std::find(p.generators.begin(), p.generators.end(), lhs);
          if (it == p.generators.end()) throw ParseError(b.line, "endomorphisms are given on generators, not '" + lhs + "'");
          try {
            imgs[it - p.generators.begin()] = parse_word(A, trim(t.substr(arrow + 2)));
          } catch (const ParseError&) {
            throw;
          } catch (const Error& err) {
            throw ParseError(b.line, err.what());
          }
        }
        L.endos.push_back({name, group_endomorphism(A, imgs)});
      } else {
        throw ParseError(b.line, "unknown block '" + b.head + "'");
      }
    }
    p.source = std::move(L);
  } else if (source == "edt0l" || source == "hdt0l") {
    no_blocks();
    if (system.empty()) throw ParseError(source_line, "missing system block");
    AnySystem s = parse_system(system, base_dir);
    if (auto* e = std::get_if<Edt0lSystem>(&s))
      p.source = *e;
    else if (auto* h = std::get_if<Hdt0lSystem>(&s))
      p.source = *h;
    else if (auto* c = std::get_if<ControlledEdt0l>(&s))
      p.source = eliminate_control(*c);
    else if (auto* d = std::get_if<Dtf0lSystem>(&s))
      p.source = dtf0l_fin_to_edt0l(*d, {});
    else {
      const auto& d0 = std::get<Dt0lSystem>(s);
      p.source = dtf0l_fin_to_edt0l(Dtf0lSystem{d0.alphabet, {d0.seed}, d0.maps}, {});
    }
  } else {
    throw ParseError(source_line, "source must be finite, edt0l, hdt0l or lpres");
  }
  try {
    validate(p);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(source_line, e.what());
  }
  return p;
}

MarkedPresentation parse_presentation_text(const std::string& text, const std::string& base_dir) {
  std::istringstream in(text);
  return parse_presentation(read_lines(in), base_dir);
}

MarkedPresentation load_presentation(const std::string& path) {
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_presentation(read_lines_file(path), dir.empty() ? "." : dir);
}

std::string format_presentation(const MarkedPresentation& p) {
  std::ostringstream out;
  Alphabet A = p.alphabet();
  out << "[presentation]\ngenerators =";
  for (const auto& g : p.generators) out << ' ' << g;
  out << "\nsource = " << p.source_kind() << "\n";
  if (const auto* f = std::get_if<std::vector<Word>>(&p.source)) {
    out << "relators {" << format_word_block(A, *f) << "\n";
  } else if (const auto* e = std::get_if<Edt0lSystem>(&p.source)) {
    out << format_system(*e);
  } else if (const auto* h = std::get_if<Hdt0lSystem>(&p.source)) {
    out << format_system(*h);
  } else {
    const auto& l = std::get<LPresentation>(p.source);
    out << "Q {" << format_word_block(A, l.Q) << "\n";
    out << "R {" << format_word_block(A, l.R) << "\n";
    for (const auto& nm : l.endos) {
      out << "endo " << nm.name << " {";
      bool first = true;
      for (int g = 0; g < A.size(); g += 2) {
        if (nm.map.image[g] == Word{g}) continue;
        out << (first ? " " : " ; ") << A.name(g) << " -> " << format_word(A, nm.map.image[g]);
        first = false;
      }
      out << (first ? "}" : " }") << "\n";
    }
  }
  return out.str();
}

}  // namespace lgroup
