#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lgroup/automata.hpp"
#include "lgroup/words.hpp"

namespace lgroup {

struct NamedMorphism {
  std::string name;
  Morphism map;
};

struct Dt0lSystem {
  Alphabet alphabet;
  Word seed;
  std::vector<NamedMorphism> maps;
};

struct Dtf0lSystem {
  Alphabet alphabet;
  std::vector<Word> seeds;
  std::vector<NamedMorphism> maps;
};

struct Edt0lSystem {
  Alphabet alphabet;           // terminals and nonterminals together
  std::vector<bool> terminal;  // per letter
  Word seed;
  std::vector<NamedMorphism> maps;

  Alphabet terminal_alphabet() const;
  bool is_terminal_word(const Word& w) const;
  // Word over the full alphabet -> word over terminal_alphabet(); requires a terminal word.
  Word to_terminal(const Word& w) const;
};

struct Hdt0lSystem {
  Alphabet inner;
  Word seed;
  std::vector<NamedMorphism> maps;
  Alphabet out;
  Morphism final;  // inner -> out
};

struct ControlledEdt0l {
  Edt0lSystem sys;
  Dfa control;  // symbols are morphism names
};

// Every morphism of a system must be total on its alphabet.
void validate(const Edt0lSystem& s);
void validate(const Hdt0lSystem& s);
void validate(const ControlledEdt0l& s);

// Budget for enumeration: exceeding `max_letters` stored letters throws BudgetExceeded.
struct EnumBudget {
  std::size_t max_letters = 200'000'000;
};

WordSet enumerate(const Dt0lSystem& s, int depth, int length_cap, EnumBudget b = {});
WordSet enumerate(const Dtf0lSystem& s, int depth, int length_cap, EnumBudget b = {});
// Words are over s.terminal_alphabet().
WordSet enumerate(const Edt0lSystem& s, int depth, int length_cap, EnumBudget b = {});
// Words are over s.out.
WordSet enumerate(const Hdt0lSystem& s, int depth, int length_cap, EnumBudget b = {});
WordSet enumerate(const ControlledEdt0l& s, int depth, int length_cap, EnumBudget b = {});

// All sentential forms reachable in at most `depth` steps (no filtering).
std::vector<Word> sentential_forms(const Word& seed, const std::vector<NamedMorphism>& maps, int depth,
                                   EnumBudget b = {});

Edt0lSystem dtf0l_fin_to_edt0l(const Dtf0lSystem& s, const std::vector<Word>& extra);
// Number of extra steps the EDT0L system of dtf0l_fin_to_edt0l needs to reach a
// word of depth d of the DTF0L system (1, or 2 when extra words are not fixed by the maps).
int dtf0l_fin_offset(const Dtf0lSystem& s, const std::vector<Word>& extra);

Edt0lSystem hdt0l_to_edt0l(const Hdt0lSystem& s);

// `letter_state`, when given, receives for each inner letter the tracking state
// it carries.
Hdt0lSystem edt0l_to_hdt0l(const Edt0lSystem& s, std::vector<int>* letter_state = nullptr);

// When one morphism sends every nonterminal to a terminal word and fixes the
// terminals, and all other morphisms fix the terminals, the language is the image
// of the nonterminal iteration under that morphism. Returns false otherwise.
bool edt0l_to_hdt0l_by_emit(const Edt0lSystem& s, Hdt0lSystem& out);

// `letter_state`, when given, receives the control state of each annotated letter
// (-1 for terminals and the dead letter).
Edt0lSystem eliminate_control(const ControlledEdt0l& s, std::vector<int>* letter_state = nullptr);
ControlledEdt0l restrict_to_terminal_control(const ControlledEdt0l& s);

// Text format.
using AnySystem = std::variant<Dt0lSystem, Dtf0lSystem, Edt0lSystem, Hdt0lSystem, ControlledEdt0l>;
AnySystem parse_system(const std::vector<Line>& lines, const std::string& base_dir = ".");
AnySystem parse_system_text(const std::string& text, const std::string& base_dir = ".");
AnySystem load_system(const std::string& path);
Edt0lSystem parse_edt0l_text(const std::string& text);
Hdt0lSystem parse_hdt0l_text(const std::string& text);
std::string format_system(const AnySystem& s);

// Helpers shared by the conversions.
std::string fresh_name(const std::string& want, const Alphabet& taken);
std::string sanitize_name(const std::string& s);
std::vector<std::string> format_words(const Alphabet& a, const WordSet& ws);

}  // namespace lgroup
