#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgroup/text.hpp"
#include "lgroup/words.hpp"

namespace lgroup {

// Tape symbols: 0, 1 and blank.
enum class TapeSymbol : int { Zero = 0, One = 1, Blank = 2 };

struct TmRule {
  int next = 0;
  TapeSymbol write = TapeSymbol::Blank;
  int move = 1;  // -1 left, +1 right
};

// Single one-way infinite tape; a left move on the first cell stays put.
struct TuringMachine {
  int states = 1;
  int start = 0;
  int halt = 0;
  std::map<std::pair<int, TapeSymbol>, TmRule> rules;
};

using MachineList = std::vector<TuringMachine>;

void validate(const TuringMachine& m);

struct TmRun {
  bool halted = false;
  std::uint64_t steps = 0;  // steps taken; the halting time when halted
};
// Runs from the empty tape for at most `budget` steps.
TmRun run_tm(const TuringMachine& m, std::uint64_t budget);

// p_1 = 3, p_2 = 5, p_3 = 7, ...
Int odd_prime(int n);

// Pairs (p_k, p_k^t) with p_k^t <= N for machines k that halt in t steps.
std::vector<std::pair<Int, Int>> active_relations(const MachineList& ms, Int N);

// Central element as exponents in the f-basis; no zero entries.
using CentralWord = std::map<Int, Int>;

bool h_center_wp(const CentralWord& w, const MachineList& ms);
// Words over group_alphabet({"a", "b"}).
bool h_wp(const Word& w, const MachineList& ms);
struct HallElement;
bool h_wp(const HallElement& g, const MachineList& ms);

enum class ProbeVerdict { Trivial, NontrivialUpToBudget };
// Whether f_{p_idx} is known trivial in H / gamma_k from runs of at most `budget` steps.
ProbeVerdict gamma_probe(int idx, int k, const MachineList& ms, std::uint64_t budget);
const char* probe_name(ProbeVerdict v);

MachineList parse_machines(const std::vector<Line>& lines);
MachineList load_machines(const std::string& path);
std::string format_machines(const MachineList& ms);

}  // namespace lgroup
