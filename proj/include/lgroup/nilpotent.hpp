#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgroup/intmat.hpp"
#include "lgroup/text.hpp"
#include "lgroup/words.hpp"

namespace lgroup {

// Truncated noncommutative polynomial in x_1..x_k over the integers.
// Monomials of degree >= cap are dropped.
struct TruncPoly {
  int gens = 0;
  int cap = 1;
  std::map<std::vector<int>, Int> coef;

  static TruncPoly one(int gens, int cap);
  TruncPoly operator*(const TruncPoly& o) const;
  bool operator==(const TruncPoly& o) const { return cap == o.cap && coef == o.coef; }
  // True if all coefficients of degree 1..d vanish and the constant is 1.
  bool is_one_through(int d) const;
};

// Positions of the positive letters of a group alphabet, in order.
std::vector<int> positive_letters(const Alphabet& a);

TruncPoly magnus_expand(const Alphabet& a, const Word& w, int cap);
// w = 1 in F/gamma_{c+1}(F).
bool free_nilpotent_wp(const Alphabet& a, const Word& w, int c);

// Exponent vector of a normal form.
using PcWord = std::vector<Int>;
// Sequence of (pc generator, exponent); relation right-hand sides are stored in
// this form in increasing generator order.
using PcLetters = std::vector<std::pair<int, Int>>;

struct PcDef {
  enum Kind { Image, Commutator, Power };
  Kind kind = Image;
  int a = -1;  // Image: S-generator; Commutator: g_a in [g_a, g_b]; Power: g_a
  int b = -1;
  bool operator==(const PcDef& o) const { return kind == o.kind && a == o.a && b == o.b; }
};

struct PcPresentation {
  std::vector<std::string> generators;  // the marked generators S
  std::vector<int> weight;
  std::vector<Int> order;  // relative orders, 0 = infinite
  std::vector<PcLetters> power;  // g_i^{o_i}, used when o_i is finite
  // conj[j][i], i < j: g_j^{g_i} = g_i^-1 g_j g_i. Empty (or out of range) means g_j and g_i commute.
  std::vector<std::vector<PcLetters>> conj;
  std::vector<std::vector<PcLetters>> conj_inv;  // g_j^{g_i^-1}; derived by finalize() for infinite g_i
  std::vector<PcDef> def;
  std::vector<PcLetters> epi;  // image of each S-generator
  int klass = 0;
  int first_central = 0;  // generators from here on are central; set by finalize()

  int size() const { return static_cast<int>(weight.size()); }
  int hirsch_length() const;
  // Torsion-free rank of each layer gamma_i / gamma_{i+1} read off the weights, i = 1..klass.
  std::vector<int> layer_ranks() const;
  std::vector<std::vector<Int>> layer_torsion() const;
  bool commutes(int j, int i) const;  // i < j
  const PcLetters& conjugate(int j, int i, int sign) const;

  // Derives conj_inv and first_central from the other fields.
  void finalize();
};

constexpr std::uint64_t kDefaultCollectBudget = 200'000'000;

// Collection from the left.
class Collector {
 public:
  explicit Collector(const PcPresentation& pc, std::uint64_t budget = kDefaultCollectBudget)
      : pc_(pc), budget_(budget) {}

  void multiply(PcWord& e, const PcLetters& w);
  PcWord collect(const PcLetters& w);
  std::uint64_t steps() const { return steps_; }

 private:
  void push_word(std::vector<std::pair<int, Int>>& stack, const PcLetters& w, Int times);

  const PcPresentation& pc_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
};

PcWord collect(const PcPresentation& pc, const PcLetters& w);
PcLetters to_letters(const PcWord& e);
PcLetters inverse_letters(const PcLetters& w);
bool is_identity(const PcWord& e);

struct ConsistencyViolation {
  std::string test;
  PcWord lhs, rhs;
};
std::vector<ConsistencyViolation> consistency_check(const PcPresentation& pc);

// Image of a word over S under the epimorphism record.
PcLetters epi_image(const PcPresentation& pc, const Alphabet& a, const Word& w);
bool pc_wp(const PcPresentation& pc, const Alphabet& a, const Word& w);

struct Abelianization {
  std::vector<Int> invariants;  // non-unit invariant factors ascending, then a 0 per free rank
  PcPresentation pc;
};
Abelianization abelianization(const FinitePresentation& p);

struct NqOptions {
  std::uint64_t collect_budget = kDefaultCollectBudget;
  std::size_t max_tails = 20000;  // size of the central block per step
  // Skip overlap checks g_k g_j g_i whose weights exceed the class being built.
  bool weight_shortcut = true;
};

// Consistent pc presentation of F_S / (<<R>> gamma_{c+1}).
PcPresentation nilpotent_quotient(const FinitePresentation& p, int c, const NqOptions& opt = {});

// True iff every relator of src is trivial in nilpotent_quotient(tgt, c).
bool marked_quotient_nilpotent(const FinitePresentation& src, const FinitePresentation& tgt, int c,
                               const NqOptions& opt = {});
bool marked_isomorphic_nilpotent(const FinitePresentation& x, const FinitePresentation& y, int c,
                                 const NqOptions& opt = {});

PcPresentation parse_pc(const std::vector<Line>& lines);
PcPresentation parse_pc_text(const std::string& text);
std::string format_pc(const PcPresentation& pc);

}  // namespace lgroup
