#pragma once

// Command-line front end. run() never calls exit(); it returns the exit code
// (0 pass, 1 usage or input error, 2 verification failure, 3 resource cap).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agt/agt.hpp"
#include "agt/testing/mutants.hpp"
#include "json.hpp"

namespace agt::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kFail = 2, kCap = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Presets aleshin, f4 (four-state F member) and f6 (its F' twin);
/// anything else is read as an automaton file.
inline Mealy load_automaton(const std::string& source) {
  if (source == "aleshin") return aleshin();
  if (source == "f4") return family_f(FamilySpec::four_state());
  if (source == "f6") return family_f_prime(FamilySpec::four_state());
  return parse_mealy(read_file(source));
}

struct SpecArgs {
  int n = 0;
  std::string active;
  bool unchecked_parity = false;

  bool given() const { return n != 0 || !active.empty(); }

  FamilySpec resolve() const {
    if (!given()) return FamilySpec::four_state();
    if (n == 0) throw Error("--active needs --n");
    if (!unchecked_parity) return FamilySpec::from_active_list(n, active);
    // Negative control: same list syntax, no parity rule.
    std::vector<bool> flags(static_cast<std::size_t>(n) + 1, false);
    std::istringstream in(active);
    for (std::string item; std::getline(in, item, ',');) {
      if (item.empty()) continue;
      if (item == "c") flags[0] = true;
      else if (item.size() > 1 && item[0] == 'd') flags.at(std::stoul(item.substr(1))) = true;
      else throw Error("'" + item + "' is not one of c, d1..dn");
    }
    return agt::testing::unchecked_family_spec(n, std::move(flags));
  }
};

inline void add_spec_options(CLI::App* app, SpecArgs& s) {
  app->add_option("--n", s.n, "family parameter (odd)");
  app->add_option("--active", s.active, "active states among c,d1..dn, comma separated");
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string format_letters(const Alphabet& a, const Word& w) { return a.format(w, a.single_char_letters()); }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"agt: automaton groups, duals, orbits and freeness checks", "agt"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string source;
  detail::SpecArgs spec;
  bool prime = false;

  auto* check = app.add_subcommand("check", "report invertibility, reversibility and bireversibility");
  auto* invert = app.add_subcommand("invert", "print the inverse automaton");
  auto* pm = app.add_subcommand("pm", "print the union of an automaton with its inverse");
  auto* dualc = app.add_subcommand("dual", "print the dual (right-to-left) automaton");
  auto* dot = app.add_subcommand("dot", "print the Moore diagram as DOT");
  auto* actc = app.add_subcommand("act", "apply a state or a state word to an input word");
  auto* sectionc = app.add_subcommand("section", "section of a state word at an input word");
  auto* minimizec = app.add_subcommand("minimize", "minimal automaton of a state or state word");
  auto* trivialc = app.add_subcommand("trivial", "decide whether a state word is the identity");
  auto* orbitc = app.add_subcommand("orbit", "orbit of a state word under the dual of A^±");
  auto* familyc = app.add_subcommand("family", "print a member of the binary family");
  auto* verifyc = app.add_subcommand("verify", "run a verification suite");

  bool with_pm = false;
  std::string state, input, word, at, gens = "all";
  bool with_inverses = false, wreath = false;

  for (auto* sub : {check, invert, pm, dualc, dot, actc, sectionc, minimizec, trivialc, orbitc}) {
    sub->add_option("automaton", source, "preset (aleshin, f4, f6) or automaton file; or use --n/--active");
    detail::add_spec_options(sub, spec);
    sub->add_flag("--prime", prime, "with --n/--active: the twisted family member");
  }
  dualc->add_flag("--pm", with_pm, "dualize A^± instead of A");
  actc->add_option("--state", state, "start state");
  actc->add_option("--word", word, "state word such as \"a b^-1\" (rightmost applied first)");
  actc->add_option("--input", input, "input word over the alphabet")->required();
  sectionc->add_option("--word", word, "state word")->required();
  sectionc->add_option("--at", at, "input word")->required();
  minimizec->add_option("--state", state, "start state");
  minimizec->add_option("--word", word, "state word");
  trivialc->add_option("--word", word, "state word")->required();
  orbitc->add_option("--word", word, "seed state word")->required();
  orbitc->add_option("--gens", gens, "all, or a comma separated list of dual states");
  orbitc->add_flag("--with-inverses", with_inverses, "also use the inverse dual states");
  detail::add_spec_options(familyc, spec);
  familyc->add_flag("--prime", prime, "apply the letter swap after every output");
  familyc->add_flag("--wreath", wreath, "print wreath coordinates instead of the file format");

  std::string what;
  std::size_t max_pattern = 0, max_len = 0, trials = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string automaton = "aleshin", pattern;
  bool corrupt = false, cross_check = false;
  verifyc->add_option("suite", what, "lemmas|transitivity|freeness|c2|dual-theorem|section4|aleshin")
      ->required()
      ->check(CLI::IsMember({"lemmas", "transitivity", "freeness", "c2", "dual-theorem", "section4", "aleshin"}));
  detail::add_spec_options(verifyc, spec);
  verifyc->add_option("--max-pattern", max_pattern, "longest pattern");
  verifyc->add_option("--max-len", max_len, "longest word");
  verifyc->add_option("--trials", trials, "random cases");
  verifyc->add_option("--seed", seed, "random seed");
  verifyc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verifyc->add_option("--automaton", automaton, "automaton for dual-theorem");
  verifyc->add_option("--pattern", pattern, "single pattern for transitivity, e.g. ++-");
  verifyc->add_flag("--cross-check", cross_check, "freeness: also run the relation search");
  verifyc->add_flag("--unchecked-parity", spec.unchecked_parity,
                    "negative control: accept an even number of active states");
  verifyc->add_flag("--corrupt-dual", corrupt, "negative control: flip one output of the dual");

  std::vector<const char*> argv{"agt"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }
  const bool json = format == "json";

  auto emit_report = [&](const Report& r) {
    if (json) out << r.to_json().dump(2) << '\n';
    else out << r.to_text();
    return r.passed() ? kPass : kFail;
  };
  auto emit_certificate = [&](const Certificate& c) {
    if (json) out << c.to_json().dump(2) << '\n';
    else out << c.to_text();
    return c.pass ? kPass : kFail;
  };

  try {
    auto load = [&]() -> Mealy {
      if (!source.empty() && spec.given()) throw Error("give either an automaton or --n/--active, not both");
      if (source.empty() && !spec.given()) throw Error("an automaton (preset or file) or --n/--active is required");
      if (!source.empty()) return detail::load_automaton(source);
      return prime ? family_f_prime(spec.resolve()) : family_f(spec.resolve());
    };
    if (check->parsed()) {
      const Mealy m = load();
      const bool inv = is_invertible(m);
      const bool rev = is_reversible(m);
      const bool bi = inv && is_bireversible(m);
      const bool bi_dual = inv && is_bireversible_via_dual(m);
      if (json) {
        nlohmann::ordered_json j{{"states", m.num_states()},
                                 {"letters", m.num_letters()},
                                 {"invertible", inv},
                                 {"reversible", rev},
                                 {"bireversible", bi},
                                 {"bireversible_via_dual", bi_dual}};
        out << j.dump(2) << '\n';
      } else {
        out << "states: " << m.num_states() << "\nletters: " << m.num_letters() << "\ninvertible: "
            << detail::yes_no(inv) << "\nreversible: " << detail::yes_no(rev) << "\nbireversible: "
            << detail::yes_no(bi) << "\nbireversible (dual test): " << detail::yes_no(bi_dual) << '\n';
      }
      return kPass;
    }
    if (invert->parsed()) {
      out << serialize_mealy(inverse_mealy(load()));
      return kPass;
    }
    if (pm->parsed()) {
      out << serialize_mealy(pm_union(load()));
      return kPass;
    }
    if (dualc->parsed()) {
      const Mealy m = load();
      out << serialize_dual(with_pm ? dual_of_pm(m) : dual(m));
      return kPass;
    }
    if (dot->parsed()) {
      out << to_dot(load());
      return kPass;
    }

    // Either a single state (--state) or a state word (--word).
    auto pick = [&](const Mealy& m) -> Transformation {
      if (!state.empty() && !word.empty()) throw Error("give either --state or --word, not both");
      if (!state.empty()) return Transformation(m, state);
      if (word.empty()) throw Error("--state or --word is required");
      return word_to_transformation(m, parse_signed_word(word));
    };

    if (actc->parsed()) {
      const Mealy m = load();
      const Transformation t = pick(m);
      const Word u = m.alphabet().encode_text(input);
      const Word v = act(t, u);
      if (json) out << nlohmann::ordered_json{{"input", detail::format_letters(m.alphabet(), u)}, {"output", detail::format_letters(m.alphabet(), v)}}.dump(2) << '\n';
      else out << detail::format_letters(m.alphabet(), v) << '\n';
      return kPass;
    }
    if (sectionc->parsed()) {
      const Mealy m = load();
      const AutomatonGroup group(m);
      Word states = group.encode(parse_signed_word(word));
      Word u = m.alphabet().encode_text(at);
      // Rightmost state first: each state reads what the previous ones wrote.
      for (std::size_t i = states.size(); i-- > 0;) {
        Transformation t(group.pm_ptr(), states[i]);
        states[i] = section(t, u).start();
        u = act(t, u);
      }
      const SignedWord sec = group.decode(states);
      if (json) out << nlohmann::ordered_json{{"word", word}, {"at", at}, {"section", format_signed_word(sec)}}.dump(2) << '\n';
      else out << format_signed_word(sec) << '\n';
      return kPass;
    }
    if (minimizec->parsed()) {
      const Mealy m = load();
      const Transformation t = minimize(pick(m));
      if (json) out << nlohmann::ordered_json{{"states", t.machine().num_states()}, {"start", t.start_token()}, {"automaton", serialize_mealy(t.machine())}}.dump(2) << '\n';
      else out << "# start " << t.start_token() << '\n' << serialize_mealy(t.machine());
      return kPass;
    }
    if (trivialc->parsed()) {
      const Mealy m = load();
      const bool triv = triviality(m, parse_signed_word(word));
      if (json) out << nlohmann::ordered_json{{"word", word}, {"trivial", triv}}.dump(2) << '\n';
      else out << (triv ? "trivial" : "nontrivial") << '\n';
      return kPass;
    }
    if (orbitc->parsed()) {
      const DualMachine d = dual_of_pm(load());
      std::vector<std::string> labels;
      if (gens != "all") {
        std::istringstream in(gens);
        for (std::string g; std::getline(in, g, ',');)
          if (!g.empty()) labels.push_back(g);
      }
      const auto r = orbit(select_generators(d, labels, with_inverses), d.alphabet(),
                           encode_signed(d.alphabet(), parse_signed_word(word)));
      if (json) out << r.to_json().dump(2) << '\n';
      else out << r.to_text();
      return kPass;
    }
    if (familyc->parsed()) {
      const FamilySpec s = spec.resolve();
      const Mealy m = prime ? family_f_prime(s) : family_f(s);
      if (wreath) out << format_wreath(wreath_coords(m));
      else out << serialize_mealy(m);
      return kPass;
    }
    if (verifyc->parsed()) {
      auto or_default = [](std::size_t v, std::size_t d) { return v ? v : d; };
      if (what == "lemmas") return emit_report(verify_structural_lemmas(spec.resolve()));
      if (what == "transitivity") {
        const FamilySpec s = spec.resolve();
        Report r;
        r.title = "transitivity " + s.describe();
        std::vector<Pattern> patterns;
        if (!pattern.empty()) {
          patterns.push_back(parse_pattern(pattern));
        } else {
          for (std::size_t len = 1; len <= or_default(max_pattern, 6); ++len)
            for (auto& p : all_patterns(len)) patterns.push_back(std::move(p));
        }
        const DualMachine D = machine_D(s);
        for (const auto& p : patterns) {
          auto t = pattern_transitivity(D, s.state_names(), p);
          r.add("pattern " + format_pattern(p), t.transitive,
                "orbit " + std::to_string(t.orbit_size) + ", class " + std::to_string(t.class_size));
        }
        return emit_report(r);
      }
      if (what == "freeness") {
        FreenessOptions o;
        o.cross_check = cross_check;
        o.jobs = jobs;
        return emit_certificate(freeness_certificate(spec.resolve(), or_default(max_pattern, 6), o));
      }
      if (what == "c2") return emit_certificate(c2_certificate(spec.resolve(), or_default(max_len, 6), jobs));
      if (what == "dual-theorem") {
        const Mealy m = detail::load_automaton(automaton);
        DualMachine d = dual_of_pm(m);
        if (corrupt) d = corrupt_dual(d);
        // Small cases exhaustively first, so a corrupted edge cannot hide.
        Report r = verify_dual_theorem_exhaustive(m, d, 2);
        Report rnd = verify_dual_theorem(m, d, trials ? trials : 1000, or_default(max_len, 8), seed);
        r.title = "dual-theorem " + automaton + (corrupt ? " (corrupted dual)" : "");
        for (auto& e : rnd.entries) r.entries.push_back(e);
        return emit_report(r);
      }
      if (what == "section4")
        return emit_report(verify_section4_lemmas(spec.resolve(), or_default(max_len, 4), trials ? trials : 50, seed));
      if (what == "aleshin") return emit_report(verify_aleshin_results(or_default(max_pattern, 5)));
    }
  } catch (const OrbitCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace agt::cli
