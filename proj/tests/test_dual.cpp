#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace agt;

namespace {

/// Right-to-left run straight from the original automaton's tables: dual
/// state a reading q writes q_a and moves to q(a).
Word oracle_dual_act(const Mealy& m, std::uint32_t letter, const Word& states) {
  Word out(states.size());
  std::uint32_t a = letter;
  for (std::size_t i = states.size(); i-- > 0;) {
    out[i] = m.next(states[i], a);
    a = m.output(states[i], a);
  }
  return out;
}

}  // namespace

TEST_CASE("dual swaps roles and undual inverts it") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Mealy m = agt_test::random_mealy(rng, 1 + rng() % 4, 2 + rng() % 3, rng() % 2);
    const DualMachine d = dual(m);
    CHECK(d.num_states() == m.num_letters());
    CHECK(d.alphabet().tokens() == m.states().tokens());
    CHECK(undual(d) == m);
    for (int j = 0; j < 10; ++j) {
      const auto a = static_cast<std::uint32_t>(rng() % m.num_letters());
      const Word w = agt_test::random_word(rng, m.num_states(), rng() % 7);
      CHECK(d.act_rtl(a, w) == oracle_dual_act(m, a, w));
    }
  }
}

TEST_CASE("dual reads from the right") {
  // Aleshin dual state 0 on the word "a c": c is read first.
  const Mealy m = aleshin();
  const DualMachine d = dual(m);
  const Word w{m.states().at("a"), m.states().at("c")};
  const auto run = d.run_rtl(0, w);
  // c(0) = 0 and c_0 = a; then a(0) = 1 and a_0 = c.
  CHECK(run.output == Word{m.states().at("c"), m.states().at("a")});
  CHECK(run.end == 1);
  CHECK(as_transformation(d, "0").machine() == d.machine());
}

TEST_CASE("dual outputs of the four-state family member") {
  const DualMachine d = dual_of_pm(family_f(FamilySpec::four_state()));
  const auto& L = d.alphabet();
  auto perm_of = [&](std::uint32_t s) {
    std::vector<std::uint32_t> p(L.size());
    for (std::uint32_t x = 0; x < L.size(); ++x) p[x] = d.machine().output(s, x);
    return StateAutomorphism(L, p).to_cycle_string();
  };
  CHECK(perm_of(0) == StateAutomorphism::from_cycles(L, {{"a", "c", "d1"}, {"a^-1", "b^-1", "c^-1", "d1^-1"}}).to_cycle_string());
  CHECK(perm_of(1) == StateAutomorphism::from_cycles(L, {{"a", "b", "c", "d1"}, {"a^-1", "c^-1", "d1^-1"}}).to_cycle_string());
  CHECK(isomorphic(d.machine(), machine_D(FamilySpec::four_state()).machine()));
}

TEST_CASE("bireversibility: both definitions agree on random automata") {
  std::mt19937_64 rng(32);
  int bi = 0;
  for (int i = 0; i < 100; ++i) {
    const Mealy m = (i % 2) ? agt_test::random_mealy(rng, 1 + rng() % 4, 2 + rng() % 2)
                            : agt_test::random_bireversible(rng, 1 + rng() % 4, 2 + rng() % 2);
    const bool rev = agt_test::oracle_reversible(m);
    const bool inv_rev = agt_test::oracle_inverse_reversible(m);
    CHECK(is_reversible(m) == rev);
    CHECK(is_bireversible(m) == (rev && inv_rev));
    CHECK(is_bireversible_via_dual(m) == (rev && inv_rev));
    bi += rev && inv_rev;
  }
  CHECK(bi >= 50);
}

TEST_CASE("odometer: neither definition calls it bireversible") {
  const Mealy odo = parse_mealy("alphabet 0 1\nstates a e\ntrans a 0 e 1\ntrans a 1 a 0\ntrans e 0 e 0\ntrans e 1 e 1\n");
  CHECK(is_invertible(odo));
  CHECK_FALSE(is_reversible(odo));
  CHECK_FALSE(is_bireversible(odo));
  CHECK_FALSE(is_bireversible_via_dual(odo));
}

TEST_CASE("presets are bireversible") {
  CHECK(is_bireversible(aleshin()));
  CHECK(is_bireversible(family_f(FamilySpec::four_state())));
  CHECK(is_bireversible(family_f(FamilySpec::six_state())));
  CHECK(is_bireversible(family_f_prime(FamilySpec::four_state())));
}

TEST_CASE("dual identities hold on random bireversible and invertible automata") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 30; ++i) {
    const Mealy m = (i % 2) ? agt_test::random_mealy(rng, 1 + rng() % 3, 2)
                            : agt_test::random_bireversible(rng, 1 + rng() % 3, 2 + rng() % 2);
    const Report r = verify_dual_theorem(m, 100, 5, rng());
    INFO(r.to_text());
    CHECK(r.passed());
  }
  CHECK(verify_dual_theorem_exhaustive(aleshin(), dual_of_pm(aleshin()), 3).passed());
}

TEST_CASE("every single corrupted edge is caught by the exhaustive check") {
  const Mealy m = aleshin();
  const DualMachine d = dual_of_pm(m);
  for (std::uint32_t s = 0; s < d.num_states(); ++s) {
    for (std::uint32_t x = 0; x < d.alphabet().size(); ++x) {
      const Report r = verify_dual_theorem_exhaustive(m, corrupt_dual(d, s, x), 2);
      CHECK_FALSE(r.passed());
    }
  }
  CHECK_FALSE(verify_dual_theorem(m, corrupt_dual(d), 1000, 8).passed());
  CHECK(verify_dual_theorem(m, 0, 8).passed());
}

TEST_CASE("dual of a wrong automaton is rejected") {
  CHECK_THROWS_AS(verify_dual_theorem(aleshin(), dual(aleshin()), 10, 3), Error);
}

TEST_CASE("inverse dual undoes the dual action") {
  std::mt19937_64 rng(34);
  const DualMachine d = dual_of_pm(aleshin());
  const DualMachine inv = inverse_dual(d);
  for (int i = 0; i < 200; ++i) {
    const auto s = static_cast<std::uint32_t>(rng() % d.num_states());
    const Word w = agt_test::random_word(rng, d.alphabet().size(), rng() % 7);
    CHECK(inv.act_rtl(s, d.act_rtl(s, w)) == w);
  }
}

TEST_CASE("rtl_product applies its first factor first") {
  const DualMachine d = dual_of_pm(aleshin());
  const auto t0 = as_transformation(d, 0u), t1 = as_transformation(d, 1u);
  const auto p = rtl_product({t0, t1});
  std::mt19937_64 rng(35);
  for (int i = 0; i < 100; ++i) {
    const Word w = agt_test::random_word(rng, d.alphabet().size(), rng() % 6);
    Word rev(w.rbegin(), w.rend());
    Word out = act(p, rev);
    CHECK(Word(out.rbegin(), out.rend()) == d.act_rtl(1, d.act_rtl(0, w)));
  }
}

TEST_CASE("two-state machines of the family are symmetric under arrow reversal") {
  for (const auto& spec : {FamilySpec::four_state(), FamilySpec::six_state()}) {
    CHECK(arrow_reversal_symmetric(machine_D(spec)));
    CHECK(arrow_reversal_symmetric(machine_E(spec)));
  }
  CHECK_THROWS_AS(arrow_reversal_symmetric(dual_of_pm(parse_mealy("alphabet 0 1 2\nstates a\ntrans a 0 a 0\ntrans a 1 a 1\ntrans a 2 a 2\n"))), Error);
}

TEST_CASE("dual text format round-trips and needs its header") {
  const DualMachine d = dual_of_pm(family_f(FamilySpec::four_state()));
  const auto text = serialize_dual(d);
  CHECK(text.rfind("scan rtl\n", 0) == 0);
  CHECK(parse_dual(text) == d);
  CHECK(serialize_dual(parse_dual(text)) == text);
  CHECK_THROWS_AS(parse_dual(serialize_mealy(d.machine())), ParseError);
}
