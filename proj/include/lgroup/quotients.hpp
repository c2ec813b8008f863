#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "lgroup/nilpotent.hpp"
#include "lgroup/presentations.hpp"

namespace lgroup {

// Finite group given by its multiplication table.
class FiniteGroup {
 public:
  // Validates closure, associativity, identity and inverses.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);
  // Closure of the given permutations (images of 0..d-1) under composition.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens, std::size_t max_order = 100000);
  static FiniteGroup cyclic(int n);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int x, int y) const { return table_[x][y]; }
  int inv(int x) const { return inverse_[x]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  // For groups built from permutations, the element of each generator.
  const std::vector<int>& generator_elements() const { return gen_elements_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> gen_elements_;
  int identity_ = 0;
};

// Table file: optional "identity = k" line, then one row of the table per line.
FiniteGroup parse_finite_group(const std::vector<Line>& lines);
FiniteGroup load_finite_group(const std::string& path);

struct NilpotentClass {
  int c = 1;
};
struct FiniteTarget {
  FiniteGroup H;
  std::vector<int> assignment;  // element for each marked generator
};
using Residual = std::variant<NilpotentClass, FiniteTarget>;

// Whether w lies in kappa(F_S) for the residual: gamma_{c+1}(F_S), or the kernel of the assignment.
bool residual_kills(const Residual& r, const Alphabet& a, const Word& w);

// Any grammar or L-presentation source as an HDT0L system whose output alphabet is
// the group alphabet of p.
Hdt0lSystem relator_hdt0l(const MarkedPresentation& p);

struct Stabilization {
  int n = 0;
  InnerGroup inner;
  std::vector<std::vector<Word>> levels;  // Phi^i(w0), i = 0..n+1, reduced words over the inner group
  FinitePresentation inner_presentation;  // union of levels 0..n
};

// Least n <= max_n such that every word of Phi^{n+1}(w0) is trivial in the class-c
// quotient of the inner group by the levels up to n. Throws BudgetExceeded otherwise.
Stabilization stabilize_nonterminals(const Hdt0lSystem& h, int c, int max_n, const NqOptions& opt = {});

struct EdtNilpotentQuotient {
  PcPresentation pc;
  FinitePresentation relators;  // f applied to the stabilized levels
  int n = 0;
};
EdtNilpotentQuotient edt0l_nilpotent_quotient(const MarkedPresentation& p, int c, int max_n = 32,
                                              const NqOptions& opt = {});

struct FiniteQuotientStats {
  std::size_t states = 0;
  std::size_t bound = 0;  // |H|^|A|, saturated at SIZE_MAX
};
// True iff every relator of p maps to the identity under the assignment S -> H.
bool finite_quotient_test(const MarkedPresentation& p, const FiniteGroup& H, const std::vector<int>& assignment,
                          FiniteQuotientStats* stats = nullptr);

// Evaluates a word over group_alphabet(S) in H.
int evaluate(const FiniteGroup& H, const std::vector<int>& assignment, const Word& w);

// Whether (tgt, S) is a marked quotient of (p, S) at class c.
bool marked_quotient_edt0l_nilpotent(const MarkedPresentation& p, const FinitePresentation& tgt, int c,
                                     int max_n = 32, const NqOptions& opt = {});

}  // namespace lgroup
