#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lgroup/lsystems.hpp"
#include "lgroup/text.hpp"
#include "lgroup/words.hpp"

namespace lgroup {

// Finite L-presentation: relators Q together with Phi^n(R) for every composite Phi
// of the endomorphisms. Words are over group_alphabet(generators); each endomorphism
// is a monoid morphism on that alphabet that respects inverses.
struct LPresentation {
  std::vector<std::string> generators;
  std::vector<Word> Q;
  std::vector<NamedMorphism> endos;
  std::vector<Word> R;

  Alphabet alphabet() const { return group_alphabet(generators); }
};

using RelatorSource = std::variant<std::vector<Word>, Edt0lSystem, Hdt0lSystem, LPresentation>;

// The marked group (F_S / <<R>>, S). Terminal letters of a grammar source must be
// named after S and S^-1.
struct MarkedPresentation {
  std::vector<std::string> generators;
  RelatorSource source;

  Alphabet alphabet() const { return group_alphabet(generators); }
  bool is_finite() const { return std::holds_alternative<std::vector<Word>>(source); }
  const char* source_kind() const;
};

void validate(const MarkedPresentation& p);

// Words of the relator language found within the budget, over p.alphabet().
// Grammar sources yield the words as produced; L-presentation images are reduced.
WordSet relators(const MarkedPresentation& p, int depth, int length_cap, EnumBudget b = {});

// Group-alphabet view of an HDT0L inner alphabet: paired letters become one generator
// when every map and the final map respect the pairing, otherwise each letter is its
// own generator.
struct InnerGroup {
  std::vector<std::string> generators;
  std::vector<Word> letter;  // inner letter -> word over group_alphabet(generators)
  bool paired = false;
};
InnerGroup inner_group(const Hdt0lSystem& h, const std::vector<std::string>& avoid = {});

// Inner letters become generators; R = {seed}, Q = {s f(s)^-1}.
MarkedPresentation edt0l_to_lpresentation(const MarkedPresentation& p);
MarkedPresentation lpresentation_to_dtf0l_fin(const MarkedPresentation& p);

// Removes `gen`, replacing it by `defining` in every relator. Grammar and
// L-presentation sources are first enumerated to the given depth.
MarkedPresentation tietze_eliminate(const MarkedPresentation& p, const std::string& gen, const Word& defining,
                                    int depth = 4, int length_cap = 256);

// <T | R(w_s), t = w_t(w_s)>. `w_t[i]` is a word over S for T[i]; `w_s[j]` a word over T for S[j].
MarkedPresentation change_generators(const MarkedPresentation& p, const std::vector<std::string>& T,
                                     const std::vector<Word>& w_t, const std::vector<Word>& w_s);

// <S, S^, a, b | w a w w^ b w^, w in L>.
MarkedPresentation amalgam_gadget(const Edt0lSystem& L);
std::string hat_name(const std::string& s);

// Breadth-first search for w as a product of conjugates of relators (conjugators of
// length <= conj_len). Returns true when found, nullopt when the node budget runs out.
std::optional<bool> in_normal_closure(const Alphabet& a, const std::vector<Word>& rels, const Word& w,
                                      int conj_len, std::size_t node_budget);

// Presentation files.
MarkedPresentation parse_presentation(const std::vector<Line>& lines, const std::string& base_dir = ".");
MarkedPresentation parse_presentation_text(const std::string& text, const std::string& base_dir = ".");
MarkedPresentation load_presentation(const std::string& path);
std::string format_presentation(const MarkedPresentation& p);

}  // namespace lgroup
