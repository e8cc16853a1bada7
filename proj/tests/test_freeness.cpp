#include <catch2/catch_amalgamated.hpp>

#include "agt/testing/mutants.hpp"
#include "support.hpp"

using namespace agt;

namespace {

/// Freely reduced words of length 1..L over Q^±, one of each inverse pair
/// (smaller index sequence), as pm indices.
std::vector<Word> oracle_candidates(std::size_t n, std::size_t L) {
  std::vector<Word> out;
  auto inv = [n](std::uint32_t x) { return static_cast<std::uint32_t>(x < n ? x + n : x - n); };
  for (std::size_t len = 1; len <= L; ++len) {
    for (const auto& w : agt_test::words_of_length(2 * n, len)) {
      bool reduced = true;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) reduced = reduced && inv(w[i]) != w[i + 1];
      if (!reduced) continue;
      Word wi(w.rbegin(), w.rend());
      for (auto& x : wi) x = inv(x);
      if (w <= wi) out.push_back(w);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("triviality on small examples") {
  const Mealy f4 = family_f(FamilySpec::four_state());
  CHECK(triviality(f4, parse_signed_word("a a^-1")));
  CHECK(triviality(f4, parse_signed_word("")));
  CHECK_FALSE(triviality(f4, parse_signed_word("a b")));
  CHECK_FALSE(triviality(f4, parse_signed_word("a")));
  const Mealy f6 = family_f_prime(FamilySpec::four_state());
  CHECK(triviality(f6, parse_signed_word("d1 d1")));
  CHECK_FALSE(triviality(f6, parse_signed_word("a b a")));
}

TEST_CASE("relation search agrees with a brute-force oracle") {
  for (const Mealy& m : {family_f(FamilySpec::four_state()), family_f_prime(FamilySpec::four_state()), aleshin()}) {
    const std::size_t L = 3;
    const AutomatonGroup g(m);
    const auto cands = oracle_candidates(m.num_states(), L);
    std::set<SignedWord> expect;
    for (const auto& w : cands)
      if (is_trivial(g.element(w))) expect.insert(g.decode(w));
    const auto rs = relation_search(m, L);
    CHECK(rs.candidates == cands.size());
    CHECK(std::set<SignedWord>(rs.relations.begin(), rs.relations.end()) == expect);
    CHECK(relation_search(m, L, 3).relations == rs.relations);
  }
}

TEST_CASE("relations of the twisted member at length two are the squares") {
  const auto rs = relation_search(family_f_prime(FamilySpec::four_state()), 2);
  std::vector<std::string> got;
  for (const auto& w : rs.relations) got.push_back(format_signed_word(w));
  CHECK(got == std::vector<std::string>{"a a", "b b", "c c", "d1 d1"});
}

TEST_CASE("relation search finds nothing for the four-state member up to length 4") {
  const auto rs = relation_search(family_f(FamilySpec::four_state()), 4);
  CHECK(rs.relations.empty());
  CHECK(rs.candidates == oracle_candidates(4, 4).size());
}

TEST_CASE("freeness certificates") {
  FreenessOptions o;
  o.cross_check = true;
  const Certificate c = freeness_certificate(FamilySpec::four_state(), 4, o);
  CHECK(c.pass);
  CHECK(c.patterns.size() == 30);
  REQUIRE(c.search);
  CHECK(c.search->relations.empty());
  const auto text = c.to_text();
  CHECK(text.rfind("certificate v1\nsubject: family_f n=1 active=d1\nbound: 4\nmethod: PATTERN_STRATEGY\n", 0) == 0);
  CHECK(text.find("scope: bounded evidence, words of length <= 4 only\n") != std::string::npos);
  CHECK(text.substr(text.size() - 14) == "verdict: pass\n");
  CHECK(c.to_json()["verdict"] == "pass");
  CHECK(freeness_certificate(FamilySpec::six_state(), 3).pass);
  CHECK_THROWS_AS(freeness_certificate(FamilySpec::four_state(), 0), Error);
}

TEST_CASE("freeness certificate fails loudly for the even-active mutant") {
  const Certificate c = freeness_certificate(agt::testing::even_active_mutant(), 2);
  CHECK_FALSE(c.pass);
  CHECK(c.failure == "pattern ++ has no verified level-1 witness");
  CHECK(c.to_text().find("verdict: fail (pattern ++") != std::string::npos);
}

TEST_CASE("C2 certificate") {
  const Certificate c = c2_certificate(FamilySpec::four_state(), 4);
  CHECK(c.pass);
  CHECK(c.facts.size() == 4);
  REQUIRE(c.search);
  // 4 * 3^(k-1) words of length k with no repeated neighbour.
  CHECK(c.search->candidates == 4 + 12 + 36 + 108);
  CHECK(c2_certificate(FamilySpec::four_state(), 4, 2).to_text() == c.to_text());
}

TEST_CASE("triviality criterion coherence on random words") {
  std::mt19937_64 rng(61);
  const auto spec = FamilySpec::four_state();
  const auto names = spec.state_names();
  int trivial = 0;
  for (int i = 0; i < 40; ++i) {
    SignedWord w = agt_test::random_signed_word(rng, names, rng() % 4);
    if (i % 4 == 0) w = concat(w, inverse_word(w));
    const Report r = verify_triviality_criterion(spec, w);
    INFO(r.to_text());
    CHECK(r.passed());
    trivial += r.find("verdict")->detail == "trivial";
  }
  CHECK(trivial >= 10);
}

TEST_CASE("section-4 lemma instances") {
  for (const auto& spec : {FamilySpec::four_state(), FamilySpec::six_state()}) {
    const Report r = verify_section4_lemmas(spec, 4, 30, 7);
    INFO(r.to_text());
    CHECK(r.passed());
    CHECK(r.entries.size() == 4);
  }
}

TEST_CASE("Aleshin results") {
  const Report r = verify_aleshin_results(4);
  INFO(r.to_text());
  CHECK(r.passed());
  CHECK(r.find("D0 is a product of E0, (ab), (bc)")->detail == "D0 = E0 (ab) (bc) (ab)");
}
