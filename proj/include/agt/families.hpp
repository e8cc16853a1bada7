#pragma once

// Concrete automata: Aleshin's automaton and its right-to-left companion E,
// the binary families F and F', and the two-state right-to-left machines
// D, E, F, G that act on words over Q^±.

#include <sstream>
#include <string>
#include <vector>

#include "agt/dual.hpp"
#include "agt/mealy.hpp"
#include "agt/report.hpp"
#include "agt/transform.hpp"

namespace agt {

class FamilySpec;
namespace testing {
FamilySpec unchecked_family_spec(int n, std::vector<bool> active);
}

/// Odd n >= 1 and activity flags for (c, d1, ..., dn), an odd number of
/// them set.
class FamilySpec {
 public:
  static FamilySpec make(int n, std::vector<bool> active) {
    if (n < 1) throw Error("family spec: n must be at least 1");
    if (n % 2 == 0) throw Error("family spec: n must be odd");
    if (active.size() != static_cast<std::size_t>(n) + 1)
      throw Error("family spec: need " + std::to_string(n + 1) + " activity flags (c, d1..dn)");
    if (std::count(active.begin(), active.end(), true) % 2 == 0)
      throw Error("family spec: the number of active states among c, d1..dn must be odd");
    return FamilySpec(n, std::move(active));
  }

  /// "c,d1" style list of the active states among c, d1..dn.
  static FamilySpec from_active_list(int n, std::string_view list) {
    if (n < 1) throw Error("family spec: n must be at least 1");
    std::vector<bool> active(static_cast<std::size_t>(n) + 1, false);
    std::string item;
    std::istringstream in{std::string(list)};
    while (std::getline(in, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (item.empty()) continue;
      std::size_t idx = 0;
      if (item == "c") {
        idx = 0;
      } else if (item.size() > 1 && item[0] == 'd' &&
                 std::all_of(item.begin() + 1, item.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        idx = std::stoul(item.substr(1));
        if (idx < 1 || idx > static_cast<std::size_t>(n)) throw Error("family spec: no state '" + item + "' when n = " + std::to_string(n));
      } else {
        throw Error("family spec: '" + item + "' is not one of c, d1..dn");
      }
      if (active[idx]) throw Error("family spec: '" + item + "' listed twice");
      active[idx] = true;
    }
    return make(n, std::move(active));
  }

  /// n = 1, d1 active, c inactive (four states).
  static FamilySpec four_state() { return make(1, {false, true}); }
  /// n = 3, only d3 active (six states).
  static FamilySpec six_state() { return make(3, {false, false, false, true}); }

  int n() const noexcept { return n_; }
  const std::vector<bool>& active() const noexcept { return active_; }

  /// a, b, c, d1, ..., dn
  std::vector<std::string> state_names() const {
    std::vector<std::string> names{"a", "b", "c"};
    for (int i = 1; i <= n_; ++i) names.push_back("d" + std::to_string(i));
    return names;
  }

  /// Activity of every state in state_names() order (a and b are active).
  std::vector<bool> state_activity() const {
    std::vector<bool> out{true, true};
    out.insert(out.end(), active_.begin(), active_.end());
    return out;
  }

  std::string active_list() const {
    std::string out;
    auto names = state_names();
    for (std::size_t i = 0; i < active_.size(); ++i) {
      if (!active_[i]) continue;
      if (!out.empty()) out += ',';
      out += names[i + 2];
    }
    return out;
  }

  std::string describe() const { return "n=" + std::to_string(n_) + " active=" + active_list(); }

  bool operator==(const FamilySpec&) const = default;

 private:
  FamilySpec(int n, std::vector<bool> active) : n_(n), active_(std::move(active)) {}
  friend FamilySpec testing::unchecked_family_spec(int, std::vector<bool>);

  int n_;
  std::vector<bool> active_;
};

namespace detail {

inline Alphabet binary_alphabet() { return Alphabet({"0", "1"}); }

inline Mealy build_mealy(const std::vector<std::string>& states, const Alphabet& alphabet,
                         const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& rows) {
  // rows[q] = (successor per letter, output per letter)
  Alphabet qs(states, "state");
  std::vector<std::uint32_t> delta, lambda;
  for (const auto& [succ, out] : rows) {
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      delta.push_back(qs.at(succ[a]));
      lambda.push_back(alphabet.at(out[a]));
    }
  }
  return Mealy(std::move(qs), alphabet, std::move(delta), std::move(lambda));
}

/// Tokens x..., x^-1... for the given state names.
inline Alphabet signed_alphabet(const std::vector<std::string>& names) {
  std::vector<std::string> toks = names;
  for (const auto& q : names) toks.push_back(inverse_token(q));
  return Alphabet(std::move(toks));
}

/// A two-state right-to-left machine over a signed alphabet. `switches[x]`
/// says whether signed letter x moves 0 <-> 1; out0/out1 are the output
/// permutations in states 0 and 1.
inline DualMachine two_state_dual(const Alphabet& signed_letters, const std::vector<bool>& switches,
                                  const StateAutomorphism& out0, const StateAutomorphism& out1) {
  const auto k = static_cast<std::uint32_t>(signed_letters.size());
  std::vector<std::uint32_t> delta, lambda;
  for (std::uint32_t s = 0; s < 2; ++s) {
    const auto& out = s == 0 ? out0 : out1;
    for (std::uint32_t x = 0; x < k; ++x) {
      delta.push_back(switches[x] ? 1 - s : s);
      lambda.push_back(out(x));
    }
  }
  return DualMachine(Mealy(Alphabet({"0", "1"}, "state"), signed_letters, std::move(delta), std::move(lambda)));
}

inline StateAutomorphism signed_cycles(const Alphabet& signed_letters, const std::vector<std::vector<std::string>>& cycles) {
  return StateAutomorphism::from_cycles(signed_letters, cycles);
}

inline std::vector<std::string> inverted(const std::vector<std::string>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(inverse_token(t));
  return out;
}

}  // namespace detail

/// a = (01)(c,b), b = (01)(b,c), c = (a,a)
inline Mealy aleshin() {
  return detail::build_mealy({"a", "b", "c"}, detail::binary_alphabet(),
                             {{{"c", "b"}, {"1", "0"}}, {{"b", "c"}, {"1", "0"}}, {{"a", "a"}, {"0", "1"}}});
}

/// The family automaton over {0,1}: a = (01)(c,b), b = (01)(b,c),
/// c = s0(d1,d1), di = si(d(i+1),d(i+1)), dn = sn(a,a), where sk swaps
/// the letters exactly when the k-th activity flag is set.
inline Mealy family_f(const FamilySpec& spec) {
  const auto names = spec.state_names();
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> rows;
  rows.push_back({{"c", "b"}, {"1", "0"}});
  rows.push_back({{"b", "c"}, {"1", "0"}});
  for (int k = 0; k <= spec.n(); ++k) {
    const std::string& next = (k == spec.n()) ? names[0] : names[3 + k];
    const bool swaps = spec.active()[k];
    rows.push_back({{next, next}, swaps ? std::vector<std::string>{"1", "0"} : std::vector<std::string>{"0", "1"}});
  }
  return detail::build_mealy(names, detail::binary_alphabet(), rows);
}

/// (01)[F]: the same transitions with the letters swapped after output.
inline Mealy family_f_prime(const FamilySpec& spec) {
  auto alphabet = detail::binary_alphabet();
  return twist_outputs(StateAutomorphism::from_cycles(alphabet, {{"0", "1"}}), family_f(spec));
}

/// sigma^± for a permutation of the state names given in cycle notation,
/// as a one-state machine on the signed alphabet.
inline Transformation letter_automorphism(const std::vector<std::string>& names,
                                          const std::vector<std::vector<std::string>>& cycles) {
  auto sigma = StateAutomorphism::from_cycles(Alphabet(names, "state"), cycles);
  std::string label;
  for (const auto& c : cycles) {
    label += '(';
    for (std::size_t i = 0; i < c.size(); ++i) label += (i ? "," : "") + c[i];
    label += ')';
  }
  return automorphism_transformation(sigma.lift_signed(), label.empty() ? "id" : label);
}

/// The companion of Aleshin's automaton over {a,b,c}^±: a^±, b^± switch
/// state, c^± loop; state 0 outputs (a^-1 b^-1), state 1 outputs (ab).
inline DualMachine aleshin_e() {
  auto sig = detail::signed_alphabet({"a", "b", "c"});
  std::vector<bool> sw{true, true, false, true, true, false};
  return detail::two_state_dual(sig, sw, detail::signed_cycles(sig, {{"a^-1", "b^-1"}}),
                                detail::signed_cycles(sig, {{"a", "b"}}));
}

namespace detail {

struct FamilyLetters {
  Alphabet sig;
  std::vector<bool> active_switch;  // a, b and the active c/di switch, both signs
  std::vector<std::string> names;
  std::vector<std::string> tail;  // c, d1, ..., dn
};

inline FamilyLetters family_letters(const FamilySpec& spec) {
  auto names = spec.state_names();
  auto activity = spec.state_activity();
  std::vector<bool> sw = activity;
  sw.insert(sw.end(), activity.begin(), activity.end());
  std::vector<std::string> tail(names.begin() + 2, names.end());
  return {signed_alphabet(names), std::move(sw), names, tail};
}

inline std::vector<std::string> concat(std::vector<std::string> x, const std::vector<std::string>& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

}  // namespace detail

/// The dual of F^±, written down directly: state 0 outputs
/// (a c d1..dn)(a^-1 b^-1 c^-1 d1^-1..dn^-1), state 1 outputs
/// (a b c d1..dn)(a^-1 c^-1 d1^-1..dn^-1); active letters switch state.
inline DualMachine machine_D(const FamilySpec& spec) {
  auto L = detail::family_letters(spec);
  auto cyc0 = detail::concat({"a"}, L.tail);
  auto cyc0i = detail::inverted(detail::concat({"a", "b"}, L.tail));
  auto cyc1 = detail::concat({"a", "b"}, L.tail);
  auto cyc1i = detail::inverted(detail::concat({"a"}, L.tail));
  return detail::two_state_dual(L.sig, L.active_switch, detail::signed_cycles(L.sig, {cyc0, cyc0i}),
                                detail::signed_cycles(L.sig, {cyc1, cyc1i}));
}

/// Same diagram as D; outputs (a^-1 b^-1) in state 0 and (ab) in state 1.
inline DualMachine machine_E(const FamilySpec& spec) {
  auto L = detail::family_letters(spec);
  return detail::two_state_dual(L.sig, L.active_switch, detail::signed_cycles(L.sig, {{"a^-1", "b^-1"}}),
                                detail::signed_cycles(L.sig, {{"a", "b"}}));
}

/// Same diagram as D; outputs (a^-1 b^-1) and (ab), each followed by the
/// signed cycle (c d1 .. dn).
inline DualMachine machine_F(const FamilySpec& spec) {
  auto L = detail::family_letters(spec);
  auto tail_inv = detail::inverted(L.tail);
  return detail::two_state_dual(L.sig, L.active_switch,
                                detail::signed_cycles(L.sig, {{"a^-1", "b^-1"}, L.tail, tail_inv}),
                                detail::signed_cycles(L.sig, {{"a", "b"}, L.tail, tail_inv}));
}

/// Loops on {a,b}^±, switches on every other letter; state 0 outputs the
/// identity, state 1 swaps a <-> b and a^-1 <-> b^-1.
inline DualMachine machine_G(const FamilySpec& spec) {
  auto L = detail::family_letters(spec);
  std::vector<bool> sw(L.sig.size(), true);
  const auto n = L.names.size();
  sw[0] = sw[1] = sw[n] = sw[n + 1] = false;
  return detail::two_state_dual(L.sig, sw, StateAutomorphism::identity(L.sig),
                                detail::signed_cycles(L.sig, {{"a", "b"}, {"a^-1", "b^-1"}}));
}

// ---------------------------------------------------------------------------
// Identity checks for the right-to-left machines

/// Runs every identity among D, E, F, G and the letter automorphisms that
/// the freeness argument relies on. Products are in right-action order
/// (leftmost factor applied first).
inline Report verify_structural_lemmas(const FamilySpec& spec) {
  Report r;
  r.title = "structural-lemmas " + spec.describe();
  const auto D = machine_D(spec), E = machine_E(spec), F = machine_F(spec), G = machine_G(spec);
  const auto Dinv = inverse_dual(D);
  const auto names = spec.state_names();
  std::vector<std::string> tail(names.begin() + 2, names.end());

  auto d = [&](int i) { return as_transformation(D, static_cast<std::uint32_t>(i)); };
  auto di = [&](int i) { return as_transformation(Dinv, static_cast<std::uint32_t>(i)); };
  auto e = [&](int i) { return as_transformation(E, static_cast<std::uint32_t>(i)); };
  auto f = [&](int i) { return as_transformation(F, static_cast<std::uint32_t>(i)); };
  auto g = [&](int i) { return as_transformation(G, static_cast<std::uint32_t>(i)); };
  const auto ab = letter_automorphism(names, {{"a", "b"}});
  const auto bc = letter_automorphism(names, {{"b", "c"}});
  const auto ac = letter_automorphism(names, {{"a", "c"}});
  const auto acd = letter_automorphism(names, {detail::concat({"a"}, tail)});
  const auto abcd = letter_automorphism(names, {detail::concat({"a", "b"}, tail)});
  const auto cd = letter_automorphism(names, {tail});
  const auto id = identity_transformation(D.alphabet());

  auto check = [&](const std::string& name, const std::vector<Transformation>& lhs, const std::vector<Transformation>& rhs) {
    auto diff = find_difference(rtl_product(lhs), rtl_product(rhs));
    std::string msg;
    if (diff) {
      // The underlying maps read words reversed; report the word as written.
      Word w(diff->rbegin(), diff->rend());
      msg = "differ on \"" + D.alphabet().format(w, false) + "\"";
    }
    r.add(name, !diff, msg);
  };

  check("D0 = E0 (a c d..)", {d(0)}, {e(0), acd});
  check("D1 = E1 (a c d..)", {d(1)}, {e(1), acd});
  check("D0 = E1 (a b c d..)", {d(0)}, {e(1), abcd});
  check("D1 = E0 (a b c d..)", {d(1)}, {e(0), abcd});
  check("E0 E0 = 1", {e(0), e(0)}, {id});
  check("E1 E1 = 1", {e(1), e(1)}, {id});
  check("E0 E1 = (ab)", {e(0), e(1)}, {ab});
  check("E1 E0 = (ab)", {e(1), e(0)}, {ab});
  check("D0^-1 D1 = (bc)", {di(0), d(1)}, {bc});
  check("D0 D1^-1 = (ab)", {d(0), di(1)}, {ab});
  check("F0 = E0 (c d..)", {f(0)}, {e(0), cd});
  check("F1 = E1 (c d..)", {f(1)}, {e(1), cd});
  check("F0 = D0 (ac)", {f(0)}, {d(0), ac});
  check("F1 = D1 (ac)", {f(1)}, {d(1), ac});
  // (ac) = (ab)(bc)(ab), each factor a product of D-states.
  check("F0 = D0 (D0 D1^-1)(D0^-1 D1)(D0 D1^-1)", {f(0)}, {d(0), d(0), di(1), di(0), d(1), d(0), di(1)});
  check("F1 = D1 (D0 D1^-1)(D0^-1 D1)(D0 D1^-1)", {f(1)}, {d(1), d(0), di(1), di(0), d(1), d(0), di(1)});
  check("F0 F1 = F1 F0", {f(0), f(1)}, {f(1), f(0)});
  check("F0 = F1 (ab)", {f(0)}, {f(1), ab});
  check("F0 = (ab) F1", {f(0)}, {ab, f(1)});
  check("F1 = F0 (ab)", {f(1)}, {f(0), ab});
  check("F1 = (ab) F0", {f(1)}, {ab, f(0)});

  const auto n = static_cast<std::size_t>(spec.n());
  std::vector<Transformation> f0_pow(n + 1, f(0));
  check("F0^(n+1) = G0", f0_pow, {g(0)});
  std::vector<Transformation> f0n_f1(n, f(0));
  f0n_f1.push_back(f(1));
  check("F0^n F1 = G1", f0n_f1, {g(1)});

  const std::size_t expected = 2 * (n + 1);
  const auto order = transformation_order(f(0), 4 * (n + 1));
  r.add("order of F0 is 2(n+1)", order && *order == expected,
        "expected " + std::to_string(expected) + ", found " + (order ? std::to_string(*order) : std::string("none within cap")));

  AutomatonGroup prime(family_f_prime(spec));
  std::string bad;
  for (std::uint32_t q = 0; q < prime.base().num_states(); ++q) {
    const std::uint32_t qi = q;
    if (!is_trivial(prime.element(Word{qi, qi}))) bad += (bad.empty() ? "" : " ") + prime.base().states()[q];
  }
  r.add("every state of F' squares to 1", bad.empty(), bad.empty() ? std::string() : "non-involutions: " + bad);
  return r;
}

/// The group generated by E0 and E1, closed under composition.
inline std::size_t e_closure_size(const FamilySpec& spec, std::size_t cap = 64) {
  const auto E = machine_E(spec);
  return transformation_closure({as_transformation(E, 0u), as_transformation(E, 1u)}, cap).size();
}

}  // namespace agt
