#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lgroup {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(int line, const std::string& msg);
  int line;
};

// Raised when an explicit computation budget (steps, sizes, integer range) runs out.
struct BudgetExceeded : Error {
  using Error::Error;
};

using Int = std::int64_t;
using Word = std::vector<int>;

// Ordered set of letter names. Declaration order is the letter order.
// A letter named "x^-1" is paired with "x" as its formal inverse.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& names);

  int add(const std::string& name);
  int find(const std::string& name) const;
  int at(const std::string& name) const;
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(names_.size()); }
  int inverse(int i) const { return inv_.at(i); }
  bool contains(const std::string& name) const { return find(name) >= 0; }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> inv_;
};

bool valid_symbol_name(const std::string& s);
std::string inverse_name(const std::string& s);
bool is_inverse_name(const std::string& s);
std::string base_name(const std::string& s);

// Letters s, s^-1 for every generator s, interleaved: letter 2i is s_i, 2i+1 is s_i^-1.
Alphabet group_alphabet(const std::vector<std::string>& gens);

Word parse_word(const Alphabet& a, const std::string& text);
std::string format_word(const Alphabet& a, const Word& w);

Word free_reduce(const Alphabet& a, const Word& w);
bool is_reduced(const Alphabet& a, const Word& w);
Word inverse(const Alphabet& a, const Word& w);
Word concat(const Word& x, const Word& y);
Word power(const Alphabet& a, const Word& w, Int e);

// [x,y] = x^-1 y^-1 x y, reduced.
Word commutator(const Alphabet& a, const Word& x, const Word& y);
// Left-normed [x1, x2, ..., xn] = [[x1, x2], ..., xn].
Word commutator(const Alphabet& a, std::initializer_list<Word> xs);
Word commutator(const Alphabet& a, const std::vector<Word>& xs);

bool shortlex_less(const Word& x, const Word& y);

struct ShortlexLess {
  bool operator()(const Word& x, const Word& y) const { return shortlex_less(x, y); }
};

using WordSet = std::set<Word, ShortlexLess>;

// Monoid morphism from the free monoid on `image.size()` letters into the free
// monoid on `codomain` letters.
struct Morphism {
  int codomain = 0;
  std::vector<Word> image;

  int domain() const { return static_cast<int>(image.size()); }
  bool operator==(const Morphism& o) const {
    return codomain == o.codomain && image == o.image;
  }
};

Morphism identity_morphism(int n);
Word apply_morphism(const Morphism& m, const Word& w);
// apply_morphism(compose(m2, m1), w) == apply_morphism(m2, apply_morphism(m1, w))
Morphism compose(const Morphism& m2, const Morphism& m1);
// Applies the morphisms named by the control word, first letter first.
Word apply_sequence(const std::vector<const Morphism*>& seq, const Word& w);

// Group endomorphism given by the images of the positive letters; inverse
// letters are sent to formal inverses.
Morphism group_endomorphism(const Alphabet& a, const std::vector<Word>& gen_images);
bool respects_inverses(const Alphabet& dom, const Alphabet& cod, const Morphism& m);
// Group-word application: apply then reduce.
Word apply_reduced(const Alphabet& cod, const Morphism& m, const Word& w);

// Finite presentation <S | R>; relators are words over group_alphabet(generators).
struct FinitePresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  Alphabet alphabet() const { return group_alphabet(generators); }
};

}  // namespace lgroup
