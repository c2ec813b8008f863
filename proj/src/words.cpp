#include "lgroup/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lgroup {

ParseError::ParseError(int line_no, const std::string& msg)
    : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}

namespace {
const std::string kInv = "^-1";
}

bool is_inverse_name(const std::string& s) {
  return s.size() > kInv.size() && s.compare(s.size() - kInv.size(), kInv.size(), kInv) == 0;
}

std::string base_name(const std::string& s) {
  return is_inverse_name(s) ? s.substr(0, s.size() - kInv.size()) : s;
}

std::string inverse_name(const std::string& s) {
  return is_inverse_name(s) ? base_name(s) : s + kInv;
}

bool valid_symbol_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return s != "eps";
}

Alphabet::Alphabet(const std::vector<std::string>& names) {
  for (const auto& n : names) add(n);
}

int Alphabet::add(const std::string& name) {
  if (index_.count(name)) throw Error("duplicate letter '" + name + "'");
  int id = size();
  names_.push_back(name);
  index_[name] = id;
  inv_.push_back(-1);
  auto it = index_.find(inverse_name(name));
  if (it != index_.end()) {
    inv_[id] = it->second;
    inv_[it->second] = id;
  }
  return id;
}

int Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int Alphabet::at(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw Error("unknown letter '" + name + "'");
  return i;
}

Alphabet group_alphabet(const std::vector<std::string>& gens) {
  Alphabet a;
  for (const auto& g : gens) {
    a.add(g);
    a.add(inverse_name(g));
  }
  return a;
}

Word parse_word(const Alphabet& a, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Word w;
  while (in >> tok) {
    if (tok == "eps") continue;
    w.push_back(a.at(tok));
  }
  return w;
}

std::string format_word(const Alphabet& a, const Word& w) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += a.name(w[i]);
  }
  return out;
}

Word free_reduce(const Alphabet& a, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && a.inverse(out.back()) == x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

bool is_reduced(const Alphabet& a, const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (a.inverse(w[i - 1]) == w[i]) return false;
  return true;
}

Word inverse(const Alphabet& a, const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) {
    int y = a.inverse(x);
    if (y < 0) throw Error("letter '" + a.name(x) + "' has no inverse");
    x = y;
  }
  return out;
}

Word concat(const Word& x, const Word& y) {
  Word out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

Word power(const Alphabet& a, const Word& w, Int e) {
  Word base = e < 0 ? inverse(a, w) : w;
  Word out;
  for (Int i = 0; i < (e < 0 ? -e : e); ++i) out.insert(out.end(), base.begin(), base.end());
  return free_reduce(a, out);
}

Word commutator(const Alphabet& a, const Word& x, const Word& y) {
  Word w = inverse(a, x);
  Word yi = inverse(a, y);
  w.insert(w.end(), yi.begin(), yi.end());
  w.insert(w.end(), x.begin(), x.end());
  w.insert(w.end(), y.begin(), y.end());
  return free_reduce(a, w);
}

Word commutator(const Alphabet& a, const std::vector<Word>& xs) {
  if (xs.empty()) return {};
  Word acc = free_reduce(a, xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) acc = commutator(a, acc, xs[i]);
  return acc;
}

Word commutator(const Alphabet& a, std::initializer_list<Word> xs) {
  return commutator(a, std::vector<Word>(xs));
}

bool shortlex_less(const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

Morphism identity_morphism(int n) {
  Morphism m;
  m.codomain = n;
  m.image.resize(n);
  for (int i = 0; i < n; ++i) m.image[i] = {i};
  return m;
}

Word apply_morphism(const Morphism& m, const Word& w) {
  Word out;
  for (int x : w) {
    if (x < 0 || x >= m.domain()) throw Error("letter outside morphism domain");
    const Word& img = m.image[x];
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Morphism compose(const Morphism& m2, const Morphism& m1) {
  if (m1.codomain != m2.domain()) throw Error("compose: codomain/domain mismatch");
  Morphism m;
  m.codomain = m2.codomain;
  m.image.reserve(m1.image.size());
  for (const Word& img : m1.image) m.image.push_back(apply_morphism(m2, img));
  return m;
}

Word apply_sequence(const std::vector<const Morphism*>& seq, const Word& w) {
  Word cur = w;
  for (const Morphism* m : seq) cur = apply_morphism(*m, cur);
  return cur;
}

Morphism group_endomorphism(const Alphabet& a, const std::vector<Word>& gen_images) {
  Morphism m;
  m.codomain = a.size();
  m.image.assign(a.size(), {});
  std::size_t g = 0;
  for (int x = 0; x < a.size(); ++x) {
    int y = a.inverse(x);
    if (y >= 0 && y < x) continue;
    if (g >= gen_images.size()) throw Error("group_endomorphism: missing generator image");
    m.image[x] = gen_images[g++];
    if (y >= 0) m.image[y] = inverse(a, m.image[x]);
  }
  if (g != gen_images.size()) throw Error("group_endomorphism: too many generator images");
  return m;
}

bool respects_inverses(const Alphabet& dom, const Alphabet& cod, const Morphism& m) {
  for (int x = 0; x < dom.size(); ++x) {
    int y = dom.inverse(x);
    if (y < 0) continue;
    for (int l : m.image[x])
      if (cod.inverse(l) < 0) return false;
    if (free_reduce(cod, m.image[y]) != free_reduce(cod, inverse(cod, m.image[x]))) return false;
  }
  return true;
}

Word apply_reduced(const Alphabet& cod, const Morphism& m, const Word& w) {
  return free_reduce(cod, apply_morphism(m, w));
}

}  // namespace lgroup
