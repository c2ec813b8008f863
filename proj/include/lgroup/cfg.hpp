#pragma once

#include <string>
#include <vector>

#include "lgroup/text.hpp"
#include "lgroup/words.hpp"

namespace lgroup {

struct CfgSymbol {
  bool nonterminal = false;
  int id = 0;
  bool operator==(const CfgSymbol& o) const { return nonterminal == o.nonterminal && id == o.id; }
  bool operator<(const CfgSymbol& o) const {
    return nonterminal != o.nonterminal ? nonterminal < o.nonterminal : id < o.id;
  }
};

struct CfgRule {
  int lhs = 0;
  std::vector<CfgSymbol> rhs;  // empty = epsilon
  bool operator==(const CfgRule& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

// Terminals form a group alphabet so that relator words can be inverted.
struct Cfg {
  Alphabet terminals;
  std::vector<std::string> nonterminals;
  std::vector<CfgRule> rules;
  int start = 0;

  int nonterminal(const std::string& name) const;  // -1 if absent
};

struct PumpingDecomposition {
  Word u, v, w, x, y;
};

bool is_cnf(const Cfg& g);
// Every rule becomes N -> B C or N -> a; the empty word is dropped.
Cfg to_cnf(const Cfg& g);
std::size_t pumping_constant(const Cfg& g);

struct ParseTree {
  int nonterminal = 0;
  int begin = 0, end = 0;  // span in the input
  std::vector<ParseTree> children;  // empty for N -> a
};

// CYK over the CNF form; the empty word is never accepted.
bool cyk_accepts(const Cfg& cnf, const Word& r);
// Parse tree of r in a CNF grammar; throws if r is not in the language.
ParseTree cyk_parse(const Cfg& cnf, const Word& r);

PumpingDecomposition pumping_decompose(const Cfg& g, const Word& r);

struct ShrinkStep {
  Word shorter;  // u w y
  Word side;     // v w x w^-1, reduced
};
ShrinkStep cf_shrink_step(const Cfg& g, const Word& r);

Cfg parse_cfg(const std::vector<Line>& lines);
Cfg parse_cfg_text(const std::string& text);
Cfg load_cfg(const std::string& path);
std::string format_cfg(const Cfg& g);

}  // namespace lgroup
