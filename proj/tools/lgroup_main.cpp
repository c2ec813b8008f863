// lgroup: command-line front end to the library.
// Exit codes: 0 success or true, 1 false, 2 usage or input error, 3 budget exceeded.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgroup/cfg.hpp"
#include "lgroup/hall.hpp"
#include "lgroup/halting.hpp"
#include "lgroup/lsystems.hpp"
#include "lgroup/nilpotent.hpp"
#include "lgroup/presentations.hpp"
#include "lgroup/quotients.hpp"

using namespace lgroup;
using json = nlohmann::ordered_json;

namespace {

constexpr int kTrue = 0, kFalse = 1, kUsage = 2, kBudget = 3;

struct UsageError : Error {
  using Error::Error;
};

// Words are written without separators when every generator name is one character.
bool compact(const Alphabet& a) {
  return std::all_of(a.names().begin(), a.names().end(),
                     [](const std::string& n) { return base_name(n).size() == 1; });
}

std::string show(const Alphabet& a, const Word& w) {
  if (w.empty() || !compact(a)) return format_word(a, w);
  std::string out;
  for (int x : w) out += a.name(x);
  return out;
}

std::vector<std::string> show_all(const Alphabet& a, const WordSet& ws) {
  std::vector<std::string> out;
  for (const Word& w : ws) out.push_back(show(a, w));
  return out;
}

json base(const char* command) { return json{{"schema", 1}, {"command", command}}; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

bool is_presentation(const std::vector<Line>& lines) { return !lines.empty() && lines.front().text == "[presentation]"; }

std::string dir_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? "." : path.substr(0, slash);
}

MarkedPresentation load_pres(const std::string& path) {
  auto lines = read_lines_file(path);
  if (!is_presentation(lines)) throw UsageError(path + ": expected a [presentation] file");
  return parse_presentation(lines, dir_of(path));
}

// --- enum ---------------------------------------------------------------

struct EnumArgs {
  std::string file;
  int depth = 0;
  int cap = 64;
  bool as_json = false;
};

int run_enum(const EnumArgs& a) {
  auto lines = read_lines_file(a.file);
  Alphabet al;
  WordSet ws;
  if (is_presentation(lines)) {
    MarkedPresentation p = parse_presentation(lines, dir_of(a.file));
    al = p.alphabet();
    ws = relators(p, a.depth, a.cap);
  } else {
    AnySystem s = parse_system(lines, dir_of(a.file));
    std::visit(
        [&](const auto& sys) {
          using T = std::decay_t<decltype(sys)>;
          if constexpr (std::is_same_v<T, Edt0lSystem>)
            al = sys.terminal_alphabet();
          else if constexpr (std::is_same_v<T, ControlledEdt0l>)
            al = sys.sys.terminal_alphabet();
          else if constexpr (std::is_same_v<T, Hdt0lSystem>)
            al = sys.out;
          else
            al = sys.alphabet;
          ws = enumerate(sys, a.depth, a.cap);
        },
        s);
  }
  auto words = show_all(al, ws);
  if (a.as_json) {
    json j = base("enum");
    j["depth"] = a.depth;
    j["cap"] = a.cap;
    j["words"] = words;
    emit(j);
  } else {
    for (const auto& w : words) std::cout << w << "\n";
  }
  return kTrue;
}

// --- convert ------------------------------------------------------------

struct ConvertArgs {
  std::string file, to;
};

int run_convert(const ConvertArgs& a) {
  auto lines = read_lines_file(a.file);
  if (is_presentation(lines)) {
    MarkedPresentation p = parse_presentation(lines, dir_of(a.file));
    if (a.to == "lpres")
      std::cout << format_presentation(edt0l_to_lpresentation(p));
    else if (a.to == "dtf0l")
      std::cout << format_presentation(lpresentation_to_dtf0l_fin(p));
    else
      throw UsageError("a presentation converts --to lpres or --to dtf0l");
    return kTrue;
  }
  AnySystem s = parse_system(lines, dir_of(a.file));
  AnySystem out;
  if (a.to == "edt0l") {
    if (auto* h = std::get_if<Hdt0lSystem>(&s))
      out = hdt0l_to_edt0l(*h);
    else if (auto* c = std::get_if<ControlledEdt0l>(&s))
      out = eliminate_control(*c);
    else if (auto* d = std::get_if<Dtf0lSystem>(&s))
      out = dtf0l_fin_to_edt0l(*d, {});
    else if (auto* e = std::get_if<Edt0lSystem>(&s))
      out = *e;
    else
      throw UsageError("no conversion of this system to edt0l");
  } else if (a.to == "hdt0l") {
    if (auto* e = std::get_if<Edt0lSystem>(&s))
      out = edt0l_to_hdt0l(*e);
    else if (auto* c = std::get_if<ControlledEdt0l>(&s))
      out = edt0l_to_hdt0l(eliminate_control(*c));
    else if (auto* h = std::get_if<Hdt0lSystem>(&s))
      out = *h;
    else
      throw UsageError("no conversion of this system to hdt0l");
  } else {
    throw UsageError("a system converts --to edt0l or --to hdt0l");
  }
  std::cout << format_system(out);
  return kTrue;
}

// --- nq / stab / finq ---------------------------------------------------

struct NqArgs {
  std::string file;
  int klass = 1;
  int max_n = 32;
  bool as_json = false;
};

int run_nq(const NqArgs& a) {
  MarkedPresentation p = load_pres(a.file);
  EdtNilpotentQuotient q = edt0l_nilpotent_quotient(p, a.klass, a.max_n);
  Abelianization ab = abelianization(q.relators);
  if (a.as_json) {
    json j = base("nq");
    j["class"] = a.klass;
    j["stabilized_at"] = q.n;
    j["generators"] = p.generators;
    j["pc_generators"] = q.pc.size();
    j["hirsch_length"] = q.pc.hirsch_length();
    j["layer_ranks"] = q.pc.layer_ranks();
    j["layer_torsion"] = q.pc.layer_torsion();
    j["invariant_factors"] = ab.invariants;
    j["pc"] = format_pc(q.pc);
    emit(j);
    return kTrue;
  }
  std::cout << "class = " << a.klass << "\nstabilized at n = " << q.n << "\npc generators = " << q.pc.size()
            << "\nhirsch length = " << q.pc.hirsch_length() << "\n";
  auto ranks = q.pc.layer_ranks();
  auto tors = q.pc.layer_torsion();
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    std::cout << "layer " << i + 1 << ": rank " << ranks[i] << " torsion [";
    for (std::size_t k = 0; k < tors[i].size(); ++k) std::cout << (k ? ", " : "") << tors[i][k];
    std::cout << "]\n";
  }
  std::cout << "invariant factors = [";
  for (std::size_t k = 0; k < ab.invariants.size(); ++k) std::cout << (k ? ", " : "") << ab.invariants[k];
  std::cout << "]\n" << format_pc(q.pc);
  return kTrue;
}

struct StabArgs {
  std::string file;
  int klass = 1;
  int max_n = 32;
  bool as_json = false;
};

int run_stab(const StabArgs& a) {
  MarkedPresentation p = load_pres(a.file);
  Stabilization s = stabilize_nonterminals(relator_hdt0l(p), a.klass, a.max_n);
  Alphabet inner = group_alphabet(s.inner.generators);
  std::vector<std::size_t> sizes;
  for (const auto& lv : s.levels) sizes.push_back(lv.size());
  if (a.as_json) {
    json j = base("stab");
    j["class"] = a.klass;
    j["n"] = s.n;
    j["inner_generators"] = s.inner.generators;
    j["level_sizes"] = sizes;
    WordSet rels(s.inner_presentation.relators.begin(), s.inner_presentation.relators.end());
    j["inner_relators"] = show_all(inner, rels);
    emit(j);
    return kTrue;
  }
  std::cout << "n = " << s.n << "\ninner generators =";
  for (const auto& g : s.inner.generators) std::cout << ' ' << g;
  std::cout << "\nlevel sizes =";
  for (auto z : sizes) std::cout << ' ' << z;
  std::cout << "\n";
  return kTrue;
}

struct FinqArgs {
  std::string file, group, map;
  bool as_json = false;
};

std::vector<int> parse_assignment(const MarkedPresentation& p, const FiniteGroup& H, const std::string& text) {
  std::vector<int> asg(p.generators.size(), -1);
  for (const auto& item : split(text, ',')) {
    std::string k, v;
    if (!key_value(item, k, v)) throw UsageError("--map entries look like name=element");
    auto it = std::find(p.generators.begin(), p.generators.end(), k);
    if (it == p.generators.end()) throw UsageError("--map: unknown generator '" + k + "'");
    int x = -1;
    try {
      if (!v.empty() && v[0] == 'g') {
        std::size_t i = std::stoul(v.substr(1));
        if (i < 1 || i > H.generator_elements().size()) throw UsageError("--map: no generator " + v);
        x = H.generator_elements()[i - 1];
      } else {
        std::size_t used = 0;
        x = std::stoi(v, &used);
        if (used != v.size()) x = -1;
      }
    } catch (const std::logic_error&) {
      x = -1;
    }
    if (x < 0 || x >= H.order()) throw UsageError("--map: bad element '" + v + "'");
    asg[it - p.generators.begin()] = x;
  }
  for (std::size_t i = 0; i < asg.size(); ++i)
    if (asg[i] < 0) throw UsageError("--map: no element for generator '" + p.generators[i] + "'");
  return asg;
}

int run_finq(const FinqArgs& a) {
  MarkedPresentation p = load_pres(a.file);
  FiniteGroup H = load_finite_group(a.group);
  auto asg = parse_assignment(p, H, a.map);
  FiniteQuotientStats st;
  bool ok = finite_quotient_test(p, H, asg, &st);
  if (a.as_json) {
    json j = base("finq");
    j["quotient"] = ok;
    j["group_order"] = H.order();
    j["assignment"] = asg;
    j["states"] = st.states;
    j["bound"] = st.bound;
    emit(j);
  } else {
    std::cout << (ok ? "true" : "false") << "\nstates = " << st.states << "\nbound = " << st.bound << "\n";
  }
  return ok ? kTrue : kFalse;
}

// --- hall ---------------------------------------------------------------

int run_hall_verify(int n, bool as_json) {
  if (n < 4) throw UsageError("--n must be at least 4");
  bool all = true;
  json rows = json::array();
  std::ostringstream text;
  for (int k = 1; k <= n - 3; ++k) {
    auto t = verify_f_k(n, k);
    BigInt pred = predicted_f_k(n, k);
    bool ok = t && *t == pred;
    all = all && ok;
    std::string exp = t ? t->str() : "none";
    text << "k=" << k << " exp=" << exp << " predicted=" << pred.str() << (ok ? " ok" : " MISMATCH") << "\n";
    rows.push_back({{"k", k}, {"exp", exp}, {"predicted", pred.str()}, {"ok", ok}});
  }
  if (as_json) {
    json j = base("hall verify");
    j["n"] = n;
    j["rows"] = rows;
    j["all_match"] = all;
    emit(j);
  } else {
    std::cout << "n=" << n << "\n" << text.str();
  }
  return all ? kTrue : kFalse;
}

json map_json(const std::map<Int, Int>& m) {
  json out = json::array();
  for (const auto& [i, e] : m) out.push_back({i, e});
  return out;
}

int run_hall_eval(const std::string& word, bool as_json) {
  Alphabet ab = group_alphabet({"a", "b"});
  HallElement h = hall_from_word(parse_word(ab, word));
  if (as_json) {
    json j = base("hall eval");
    j["m"] = h.m;
    j["b"] = map_json(h.e);
    j["d"] = map_json(h.c);
    j["central"] = h.is_central();
    if (h.is_central()) j["f"] = d_to_f_basis(h.c);
    emit(j);
  } else {
    std::cout << format_hall(h);
  }
  return kTrue;
}

// --- halting ------------------------------------------------------------

int run_halting_wp(const std::string& machines, const std::string& word, bool as_json) {
  MachineList ms = load_machines(machines);
  bool triv = h_wp(parse_word(group_alphabet({"a", "b"}), word), ms);
  if (as_json) {
    json j = base("halting wp");
    j["trivial"] = triv;
    emit(j);
  } else {
    std::cout << (triv ? "true" : "false") << "\n";
  }
  return triv ? kTrue : kFalse;
}

int run_halting_probe(const std::string& machines, int idx, int k, std::uint64_t budget, bool as_json) {
  MachineList ms = load_machines(machines);
  ProbeVerdict v = gamma_probe(idx, k, ms, budget);
  if (as_json) {
    json j = base("halting probe");
    j["idx"] = idx;
    j["p"] = odd_prime(idx);
    j["class"] = k;
    j["budget"] = budget;
    j["verdict"] = probe_name(v);
    emit(j);
  } else {
    std::cout << probe_name(v) << "\n";
  }
  return v == ProbeVerdict::Trivial ? kTrue : kFalse;
}

int run_halting_run(const std::string& machines, std::uint64_t budget, bool as_json) {
  MachineList ms = load_machines(machines);
  json rows = json::array();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    TmRun r = run_tm(ms[i], budget);
    if (as_json)
      rows.push_back({{"machine", i + 1}, {"halted", r.halted}, {"steps", r.steps}});
    else
      std::cout << "machine " << i + 1 << ": " << (r.halted ? "halts after " + std::to_string(r.steps) + " steps"
                                                            : "running after " + std::to_string(r.steps) + " steps")
                << "\n";
  }
  if (as_json) {
    json j = base("halting run");
    j["budget"] = budget;
    j["machines"] = rows;
    emit(j);
  }
  return kTrue;
}

// --- cfg ----------------------------------------------------------------

int run_cfg(const std::string& action, const std::string& file, const std::string& word, bool as_json) {
  Cfg g = load_cfg(file);
  const Alphabet& al = g.terminals;
  if (action == "cnf") {
    std::cout << format_cfg(to_cnf(g));
    return kTrue;
  }
  Word r = parse_word(al, word);
  json j = base(("cfg " + action).c_str());
  j["word"] = show(al, r);
  int rc = kTrue;
  std::ostringstream text;
  if (action == "accepts") {
    bool ok = cyk_accepts(to_cnf(g), r);
    j["accepts"] = ok;
    text << (ok ? "true" : "false") << "\n";
    rc = ok ? kTrue : kFalse;
  } else if (action == "pump") {
    PumpingDecomposition d = pumping_decompose(g, r);
    j["pumping_constant"] = pumping_constant(g);
    text << "p = " << pumping_constant(g) << "\n";
    for (auto [name, part] : {std::pair<const char*, const Word*>{"u", &d.u}, {"v", &d.v}, {"w", &d.w}, {"x", &d.x}, {"y", &d.y}}) {
      j[name] = show(al, *part);
      text << name << " = " << show(al, *part) << "\n";
    }
  } else {
    ShrinkStep s = cf_shrink_step(g, r);
    j["shorter"] = show(al, s.shorter);
    j["side"] = show(al, s.side);
    text << "shorter = " << show(al, s.shorter) << "\nside = " << show(al, s.side) << "\n";
  }
  if (as_json)
    emit(j);
  else
    std::cout << text.str();
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lgroup: marked groups given by L-systems"};
  app.require_subcommand(1);
  int rc = kTrue;
  std::function<int()> action;

  EnumArgs ea;
  auto* en = app.add_subcommand("enum", "list words of a system or relators of a presentation");
  en->add_option("--depth", ea.depth, "number of map applications")->required()->check(CLI::NonNegativeNumber);
  en->add_option("--cap", ea.cap, "maximum word length")->check(CLI::NonNegativeNumber);
  en->add_flag("--json", ea.as_json);
  en->add_option("file", ea.file)->required()->check(CLI::ExistingFile);
  en->callback([&] { action = [&] { return run_enum(ea); }; });

  ConvertArgs ca;
  auto* cv = app.add_subcommand("convert", "convert between system and presentation forms");
  cv->add_option("--to", ca.to, "edt0l, hdt0l, lpres or dtf0l")
      ->required()
      ->check(CLI::IsMember({"edt0l", "hdt0l", "lpres", "dtf0l"}));
  cv->add_option("file", ca.file)->required()->check(CLI::ExistingFile);
  cv->callback([&] { action = [&] { return run_convert(ca); }; });

  NqArgs na;
  auto* nq = app.add_subcommand("nq", "nilpotent quotient of a marked presentation");
  nq->add_option("--class", na.klass)->required()->check(CLI::PositiveNumber);
  nq->add_option("--max-n", na.max_n, "stabilization bound")->check(CLI::NonNegativeNumber);
  nq->add_flag("--json", na.as_json);
  nq->add_option("file", na.file)->required()->check(CLI::ExistingFile);
  nq->callback([&] { action = [&] { return run_nq(na); }; });

  StabArgs sa;
  auto* st = app.add_subcommand("stab", "stabilization index of the nonterminal relators");
  st->add_option("--class", sa.klass)->required()->check(CLI::PositiveNumber);
  st->add_option("--max-n", sa.max_n)->check(CLI::NonNegativeNumber);
  st->add_flag("--json", sa.as_json);
  st->add_option("file", sa.file)->required()->check(CLI::ExistingFile);
  st->callback([&] { action = [&] { return run_stab(sa); }; });

  FinqArgs fa;
  auto* fq = app.add_subcommand("finq", "decide whether an assignment into a finite group is a quotient");
  fq->add_option("--group", fa.group, "table or permutation file")->required()->check(CLI::ExistingFile);
  fq->add_option("--map", fa.map, "generator=element, comma separated")->required();
  fq->add_flag("--json", fa.as_json);
  fq->add_option("file", fa.file)->required()->check(CLI::ExistingFile);
  fq->callback([&] { action = [&] { return run_finq(fa); }; });

  auto* hall = app.add_subcommand("hall", "Hall's group");
  hall->require_subcommand(1);
  int hn = 0;
  bool hjson = false;
  std::string hword;
  auto* hv = hall->add_subcommand("verify", "f_k in the matrix model M_n");
  hv->add_option("--n", hn)->required();
  hv->add_flag("--json", hjson);
  hv->callback([&] { action = [&] { return run_hall_verify(hn, hjson); }; });
  auto* he = hall->add_subcommand("eval", "normal form of a word in a, b");
  he->add_option("--word", hword)->required();
  he->add_flag("--json", hjson);
  he->callback([&] { action = [&] { return run_hall_eval(hword, hjson); }; });

  auto* halt = app.add_subcommand("halting", "the group H built from Turing machines");
  halt->require_subcommand(1);
  std::string machines, tword;
  int idx = 1, klass = 1;
  std::uint64_t budget = 10000;
  bool tjson = false;
  auto* hw = halt->add_subcommand("wp", "word problem in H");
  hw->add_option("--machines", machines)->required()->check(CLI::ExistingFile);
  hw->add_option("--word", tword)->required();
  hw->add_flag("--json", tjson);
  hw->callback([&] { action = [&] { return run_halting_wp(machines, tword, tjson); }; });
  auto* hp = halt->add_subcommand("probe", "whether f_p is trivial in H / gamma_k");
  hp->add_option("--machines", machines)->required()->check(CLI::ExistingFile);
  hp->add_option("--idx", idx)->required()->check(CLI::PositiveNumber);
  hp->add_option("--class", klass)->required()->check(CLI::PositiveNumber);
  hp->add_option("--budget", budget);
  hp->add_flag("--json", tjson);
  hp->callback([&] { action = [&] { return run_halting_probe(machines, idx, klass, budget, tjson); }; });
  auto* hr = halt->add_subcommand("run", "run each machine from the empty tape");
  hr->add_option("--machines", machines)->required()->check(CLI::ExistingFile);
  hr->add_option("--budget", budget);
  hr->add_flag("--json", tjson);
  hr->callback([&] { action = [&] { return run_halting_run(machines, budget, tjson); }; });

  auto* cfg = app.add_subcommand("cfg", "context-free relator grammars");
  cfg->require_subcommand(1);
  std::string cfile, cword;
  bool cjson = false;
  for (const char* name : {"cnf", "accepts", "pump", "shrink"}) {
    auto* sub = cfg->add_subcommand(name);
    if (std::string(name) != "cnf") {
      sub->add_option("--word", cword)->required();
      sub->add_flag("--json", cjson);
    }
    sub->add_option("file", cfile)->required()->check(CLI::ExistingFile);
    sub->callback([&, name] { action = [&, name] { return run_cfg(name, cfile, cword, cjson); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kTrue : kUsage;
  }
  try {
    rc = action();
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}
