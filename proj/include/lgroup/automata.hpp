#pragma once

#include <istream>
#include <string>
#include <vector>

#include "lgroup/text.hpp"
#include "lgroup/words.hpp"

namespace lgroup {

// Complete deterministic automaton over named symbols. States are 0..states-1.
struct Dfa {
  std::vector<std::string> symbols;
  int states = 0;
  int initial = 0;
  std::vector<std::vector<int>> trans;  // trans[state][symbol]
  std::vector<bool> accepting;

  int symbol(const std::string& name) const;  // -1 if absent
  int step(int q, int sym) const { return trans[q][sym]; }
  void validate() const;
};

bool accepts(const Dfa& d, const std::vector<int>& word);
bool accepts(const Dfa& d, const std::vector<std::string>& word);

// Reachable part only; state 0 is the initial state.
Dfa prune(const Dfa& d);
// Intersection. d2's symbols are matched to d1's by name.
Dfa product(const Dfa& d1, const Dfa& d2);
Dfa all_accepting_dfa(const std::vector<std::string>& symbols);
Dfa empty_language_dfa(const std::vector<std::string>& symbols);

Dfa parse_dfa(const std::vector<Line>& lines);
Dfa parse_dfa_text(const std::string& text);
std::string format_dfa(const Dfa& d);

struct Edt0lSystem;

// Subset automaton over morphism names: a state is the set of letters used by
// the current sentential form; accepting iff that set lies inside the terminals.
struct LetterTracking {
  Dfa dfa;
  std::vector<std::vector<bool>> letters;  // letters[state][letter]
};

LetterTracking letter_tracking(const Edt0lSystem& sys);
Dfa letter_tracking_dfa(const Edt0lSystem& sys);

}  // namespace lgroup
