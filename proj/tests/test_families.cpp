#include <catch2/catch_amalgamated.hpp>

#include "agt/testing/mutants.hpp"
#include "support.hpp"

using namespace agt;

namespace {

/// Every valid spec for one n: odd subsets of {c, d1..dn}.
std::vector<FamilySpec> all_specs(int n) {
  std::vector<FamilySpec> out;
  for (unsigned bits = 0; bits < (1u << (n + 1)); ++bits) {
    std::vector<bool> flags(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) flags[static_cast<std::size_t>(i)] = (bits >> i) & 1;
    if (std::count(flags.begin(), flags.end(), true) % 2 == 1) out.push_back(FamilySpec::make(n, flags));
  }
  return out;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(FamilySpec::make(2, {false, false, true}), Error);
  CHECK_THROWS_AS(FamilySpec::make(1, {true, true}), Error);
  CHECK_THROWS_AS(FamilySpec::make(1, {false, false}), Error);
  CHECK_THROWS_AS(FamilySpec::make(0, {true}), Error);
  CHECK_THROWS_AS(FamilySpec::make(3, {true, false}), Error);
  CHECK_THROWS_AS(FamilySpec::from_active_list(1, "c,d2"), Error);
  CHECK_THROWS_AS(FamilySpec::from_active_list(1, "x"), Error);
  CHECK(FamilySpec::from_active_list(1, "d1").describe() == FamilySpec::four_state().describe());
  CHECK(FamilySpec::from_active_list(3, " d3 ").describe() == FamilySpec::six_state().describe());
  CHECK(FamilySpec::four_state().describe() == "n=1 active=d1");
  CHECK(FamilySpec::six_state().state_names() == std::vector<std::string>{"a", "b", "c", "d1", "d2", "d3"});
  CHECK(all_specs(1).size() == 2);
  CHECK(all_specs(3).size() == 8);
}

TEST_CASE("family members: wreath coordinates from the definition") {
  for (int n : {1, 3, 5}) {
    for (const auto& spec : all_specs(n)) {
      const Mealy m = family_f(spec);
      const auto& S = m.states();
      REQUIRE(m.num_states() == static_cast<std::size_t>(n) + 3);
      auto chk = [&](const std::string& q, bool active, const std::string& s0, const std::string& s1) {
        const auto i = S.at(q);
        CHECK(m.output(i, 0) == (active ? 1u : 0u));
        CHECK(m.next(i, 0) == S.at(s0));
        CHECK(m.next(i, 1) == S.at(s1));
      };
      chk("a", true, "c", "b");
      chk("b", true, "b", "c");
      chk("c", spec.active()[0], "d1", "d1");
      for (int i = 1; i <= n; ++i) {
        const std::string next = i == n ? "a" : "d" + std::to_string(i + 1);
        chk("d" + std::to_string(i), spec.active()[static_cast<std::size_t>(i)], next, next);
      }
      CHECK(is_bireversible(m));
      // The twisted member swaps every output.
      const Mealy p = family_f_prime(spec);
      for (std::uint32_t q = 0; q < m.num_states(); ++q)
        for (std::uint32_t x = 0; x < 2; ++x) {
          CHECK(p.output(q, x) == 1 - m.output(q, x));
          CHECK(p.next(q, x) == m.next(q, x));
        }
      CHECK(is_bireversible(p));
    }
  }
}

TEST_CASE("the two-state machine D is the dual of the pm union") {
  for (int n : {1, 3}) {
    for (const auto& spec : all_specs(n)) {
      CHECK(isomorphic(machine_D(spec).machine(), dual_of_pm(family_f(spec)).machine()));
      CHECK(arrow_reversal_symmetric(machine_D(spec)));
    }
  }
}

TEST_CASE("Aleshin's E machine") {
  const DualMachine e = aleshin_e();
  CHECK(e.num_states() == 2);
  CHECK(e.alphabet().tokens() == std::vector<std::string>{"a", "b", "c", "a^-1", "b^-1", "c^-1"});
  // E0 on single letters swaps a^-1 and b^-1.
  CHECK(e.act_rtl("0", parse_signed_word("a^-1")) == parse_signed_word("b^-1"));
  CHECK(e.act_rtl("1", parse_signed_word("a")) == parse_signed_word("b"));
  CHECK(e.act_rtl("0", parse_signed_word("c")) == parse_signed_word("c"));
}

TEST_CASE("letter automorphisms act letterwise") {
  const auto ab = letter_automorphism({"a", "b", "c"}, {{"a", "b"}});
  const Word w = ab.alphabet().encode(std::vector<std::string>{"a", "b^-1", "c"});
  CHECK(ab.alphabet().decode(act(ab, w)) == std::vector<std::string>{"b", "a^-1", "c"});
  CHECK(letter_automorphism({"a", "b"}, {}).start_token() == "id");
}

TEST_CASE("structural lemmas pass for every valid spec up to n = 3") {
  for (int n : {1, 3}) {
    for (const auto& spec : all_specs(n)) {
      const Report r = verify_structural_lemmas(spec);
      INFO(r.to_text());
      CHECK(r.passed());
      CHECK(r.entries.size() == 25);
    }
  }
  const Report r = verify_structural_lemmas(FamilySpec::six_state());
  REQUIRE(r.find("order of F0 is 2(n+1)"));
  CHECK(r.find("order of F0 is 2(n+1)")->detail == "expected 8, found 8");
}

TEST_CASE("structural lemmas: independent checks of selected identities") {
  const FamilySpec spec = FamilySpec::four_state();
  const DualMachine D = machine_D(spec), E = machine_E(spec), F = machine_F(spec);
  std::mt19937_64 rng(41);
  const auto& L = D.alphabet();
  const auto swap_ab = StateAutomorphism::from_cycles(L, {{"a", "b"}, {"a^-1", "b^-1"}});
  const auto swap_bc = StateAutomorphism::from_cycles(L, {{"b", "c"}, {"b^-1", "c^-1"}});
  for (int i = 0; i < 300; ++i) {
    const Word w = agt_test::random_word(rng, L.size(), rng() % 7);
    // E0 E0 = 1 and E0 E1 = (ab) letterwise.
    CHECK(E.act_rtl(0, E.act_rtl(0, w)) == w);
    CHECK(E.act_rtl(1, E.act_rtl(0, w)) == swap_ab.apply(w));
    // D0^-1 D1 = (bc): first D0^-1, then D1 (right action).
    const DualMachine Dinv = inverse_dual(D);
    CHECK(D.act_rtl(1, Dinv.act_rtl(0, w)) == swap_bc.apply(w));
    CHECK(Dinv.act_rtl(1, D.act_rtl(0, w)) == swap_ab.apply(w));
    // F0 and F1 commute.
    CHECK(F.act_rtl(1, F.act_rtl(0, w)) == F.act_rtl(0, F.act_rtl(1, w)));
  }
}

TEST_CASE("E generates a Klein four-group") {
  CHECK(e_closure_size(FamilySpec::four_state()) == 4);
  CHECK(e_closure_size(FamilySpec::six_state()) == 4);
}

TEST_CASE("even-active mutant breaks the G identities and the order") {
  const auto mutant = agt::testing::even_active_mutant();
  const Report r = verify_structural_lemmas(mutant);
  CHECK_FALSE(r.passed());
  REQUIRE(r.find("F0^(n+1) = G0"));
  CHECK_FALSE(r.find("F0^(n+1) = G0")->pass);
  CHECK_FALSE(r.find("order of F0 is 2(n+1)")->pass);
  // Plain identities that do not use the parity still hold.
  CHECK(r.find("E0 E0 = 1")->pass);
}

TEST_CASE("states of the twisted member are involutions") {
  for (const auto& spec : all_specs(3)) {
    const Mealy m = family_f_prime(spec);
    for (const auto& q : m.states().tokens()) {
      const Transformation t(m, q);
      CHECK(is_trivial(compose({t, t})));
      CHECK_FALSE(is_trivial(t));
    }
  }
}
