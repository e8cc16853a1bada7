#pragma once

// Triviality of group words, bounded relation search, and bounded
// certificates that the family automata generate free groups (F) and free
// products of order-2 groups (F').

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "agt/dual.hpp"
#include "agt/families.hpp"
#include "agt/orbits.hpp"
#include "agt/report.hpp"
#include "agt/transform.hpp"
#include "json.hpp"

namespace agt {

/// Decided by minimization of the composite.
inline bool triviality(const Mealy& m, const SignedWord& w) { return is_trivial(word_to_transformation(m, w)); }

/// The three verdicts must agree: the word itself, each of its sections at
/// input words of length <= 3, and each member of its orbit under D.
inline Report verify_triviality_criterion(const FamilySpec& spec, const SignedWord& w, const OrbitOptions& opts = {}) {
  Report r;
  r.title = "triviality-criterion \"" + format_signed_word(w) + "\"";
  const AutomatonGroup group(family_f(spec));
  const Transformation t = group.element(w);
  const bool verdict = minimal_size(t) == 1 && is_trivial(t);
  r.add("verdict", true, verdict ? "trivial" : "nontrivial");

  std::size_t sections = 0, section_mismatch = 0;
  std::vector<Word> frontier{Word{}};
  for (std::size_t depth = 0; depth <= 3; ++depth) {
    std::vector<Word> next;
    for (const auto& u : frontier) {
      ++sections;
      if (is_trivial(section(t, u)) != verdict) ++section_mismatch;
      for (std::uint32_t a = 0; a < group.alphabet().size(); ++a) {
        Word v = u;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    }
    frontier = std::move(next);
  }
  r.add("sections at depth <= 3 agree", section_mismatch == 0,
        std::to_string(sections) + " sections, " + std::to_string(section_mismatch) + " disagree");

  const DualMachine D = machine_D(spec);
  auto tree = detail::orbit_bfs(generators_of(D), encode_signed(D.alphabet(), w), opts.cap);
  std::size_t orbit_mismatch = 0;
  for (const auto& member : tree.words)
    if (group.is_trivial(member) != verdict) ++orbit_mismatch;
  r.add("orbit members agree", orbit_mismatch == 0,
        std::to_string(tree.words.size()) + " members, " + std::to_string(orbit_mismatch) + " disagree");
  return r;
}

// ---------------------------------------------------------------------------
// Relation search

struct RelationSearch {
  std::size_t max_len = 0;
  std::uint64_t candidates = 0;          // canonical freely reduced words tested
  std::vector<SignedWord> relations;     // sorted by length, then letter order
};

namespace detail {

/// Depth-first over words whose first letter is fixed; `extend(w, x)`
/// decides whether x may follow w, `visit(w)` sees every word.
template <class Extend, class Visit>
void dfs_words(Word& w, std::size_t max_len, std::uint32_t k, Extend extend, Visit visit) {
  visit(w);
  if (w.size() == max_len) return;
  for (std::uint32_t x = 0; x < k; ++x) {
    if (!extend(w, x)) continue;
    w.push_back(x);
    dfs_words(w, max_len, k, extend, visit);
    w.pop_back();
  }
}

/// Runs `work(first_letter)` for each first letter on up to `jobs` threads.
template <class Work>
void for_each_first_letter(std::uint32_t k, unsigned jobs, Work work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, k));
  if (jobs == 1) {
    for (std::uint32_t x = 0; x < k; ++x) work(x);
    return;
  }
  std::atomic<std::uint32_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::uint32_t x; (x = next.fetch_add(1)) < k;) work(x);
    });
  }
  for (auto& t : pool) t.join();
}

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace detail

/// Every freely reduced word of length 1..max_len that is trivial, keeping
/// one of w and w^-1 (the one with the smaller letter sequence).
inline RelationSearch relation_search(const Mealy& m, std::size_t max_len, unsigned jobs = 1) {
  require_invertible(m, "relation_search");
  const AutomatonGroup group(m);
  const auto n = static_cast<std::uint32_t>(m.num_states());
  const std::uint32_t k = 2 * n;
  auto inv = [n](std::uint32_t x) { return x < n ? x + n : x - n; };

  RelationSearch out;
  out.max_len = max_len;
  if (max_len == 0) return out;
  std::vector<std::vector<Word>> found(k);
  std::vector<std::uint64_t> counts(k, 0);
  detail::for_each_first_letter(k, jobs, [&](std::uint32_t first) {
    Word w{first};
    Word winv;
    detail::dfs_words(
        w, max_len, k, [&](const Word& cur, std::uint32_t x) { return inv(cur.back()) != x; },
        [&](const Word& cur) {
          winv.assign(cur.rbegin(), cur.rend());
          for (auto& x : winv) x = inv(x);
          if (winv < cur) return;
          ++counts[first];
          if (detail::product_is_identity(group.pm(), cur)) found[first].push_back(cur);
        });
  });
  std::vector<Word> all;
  for (std::uint32_t x = 0; x < k; ++x) {
    out.candidates += counts[x];
    all.insert(all.end(), found[x].begin(), found[x].end());
  }
  std::sort(all.begin(), all.end(), detail::shortlex_less);
  for (const auto& w : all) out.relations.push_back(group.decode(w));
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

enum class Method { RelationSearch, PatternStrategy };

inline std::string method_name(Method m) {
  return m == Method::RelationSearch ? "RELATION_SEARCH" : "PATTERN_STRATEGY";
}

struct PatternEvidence {
  Pattern pattern;
  std::size_t orbit_size = 0;
  std::size_t class_size = 0;
  bool transitive = false;
  SignedWord witness;
  bool witness_verified = false;
};

struct SearchEvidence {
  std::string description;
  std::uint64_t candidates = 0;
  std::vector<SignedWord> relations;
};

struct Certificate {
  std::string subject;
  std::size_t bound = 0;
  Method method = Method::PatternStrategy;
  std::vector<PatternEvidence> patterns;
  std::vector<std::pair<std::string, bool>> facts;
  std::optional<SearchEvidence> search;
  bool pass = false;
  std::string failure;

  std::string to_text() const {
    std::ostringstream o;
    o << "certificate v1\n";
    o << "subject: " << subject << '\n';
    o << "bound: " << bound << '\n';
    o << "method: " << method_name(method) << '\n';
    if (!patterns.empty()) {
      o << "patterns: " << patterns.size() << '\n';
      o << "pattern orbit class transitive witness verified\n";
      for (const auto& p : patterns) {
        o << format_pattern(p.pattern) << ' ' << p.orbit_size << ' ' << p.class_size << ' '
          << (p.transitive ? "yes" : "no") << " \"" << format_signed_word(p.witness) << "\" "
          << (p.witness_verified ? "yes" : "no") << '\n';
      }
    }
    for (const auto& [name, ok] : facts) o << "check: " << name << ' ' << (ok ? "yes" : "no") << '\n';
    if (search) {
      o << "search: " << search->description << ", " << search->candidates << " candidates, "
        << search->relations.size() << " relations\n";
      for (const auto& w : search->relations) o << "relation: " << format_signed_word(w) << '\n';
    }
    o << "scope: bounded evidence, words of length <= " << bound << " only\n";
    o << "verdict: " << (pass ? "pass" : "fail");
    if (!pass && !failure.empty()) o << " (" << failure << ")";
    o << '\n';
    return o.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["certificate"] = "v1";
    j["subject"] = subject;
    j["bound"] = bound;
    j["method"] = method_name(method);
    j["patterns"] = nlohmann::ordered_json::array();
    for (const auto& p : patterns) {
      j["patterns"].push_back({{"pattern", format_pattern(p.pattern)},
                               {"orbit", p.orbit_size},
                               {"class", p.class_size},
                               {"transitive", p.transitive},
                               {"witness", format_signed_word(p.witness)},
                               {"verified", p.witness_verified}});
    }
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& [name, ok] : facts) j["checks"].push_back({{"name", name}, {"pass", ok}});
    if (search) {
      nlohmann::ordered_json s;
      s["description"] = search->description;
      s["candidates"] = search->candidates;
      s["relations"] = nlohmann::ordered_json::array();
      for (const auto& w : search->relations) s["relations"].push_back(format_signed_word(w));
      j["search"] = s;
    } else {
      j["search"] = nullptr;
    }
    j["scope"] = "bounded evidence, words of length <= " + std::to_string(bound) + " only";
    j["verdict"] = pass ? "pass" : "fail";
    j["failure"] = failure;
    return j;
  }
};

struct FreenessOptions {
  bool cross_check = false;  // also run relation_search and require it to be empty
  unsigned jobs = 1;
  OrbitOptions orbit{};
};

/// For every pattern of length 1..L: the orbit of the first irreducible
/// word under D covers the whole class, and the level-1 witness moves 0.
inline Certificate freeness_certificate(const FamilySpec& spec, std::size_t L, const FreenessOptions& opts = {}) {
  if (L < 1) throw Error("freeness_certificate: bound must be at least 1");
  Certificate c;
  c.subject = "family_f " + spec.describe();
  c.bound = L;
  c.method = Method::PatternStrategy;
  const DualMachine D = machine_D(spec);
  const auto names = spec.state_names();
  for (std::size_t len = 1; len <= L; ++len) {
    for (const auto& p : all_patterns(len)) {
      auto t = pattern_transitivity(D, names, p, opts.orbit);
      auto w = level1_witness(spec, p);
      c.patterns.push_back({p, t.orbit_size, t.class_size, t.transitive, w.word, w.verified});
      if (c.failure.empty()) {
        if (!t.transitive) c.failure = "pattern " + format_pattern(p) + " is not a single orbit";
        else if (!w.verified) c.failure = "pattern " + format_pattern(p) + " has no verified level-1 witness";
      }
    }
  }
  c.pass = c.failure.empty();
  if (opts.cross_check) {
    auto rs = relation_search(family_f(spec), L, opts.jobs);
    c.search = SearchEvidence{"freely reduced words up to inversion", rs.candidates, rs.relations};
    if (c.pass && !rs.relations.empty()) {
      c.pass = false;
      c.failure = "relation search found " + format_signed_word(rs.relations.front()) +
                  " although every pattern passed";
    }
  }
  return c;
}

/// Over F': every q q is trivial, and no positive word of length 1..L with
/// no two equal adjacent letters is.
inline Certificate c2_certificate(const FamilySpec& spec, std::size_t L, unsigned jobs = 1) {
  Certificate c;
  c.subject = "family_f_prime " + spec.describe();
  c.bound = L;
  c.method = Method::RelationSearch;
  const AutomatonGroup group(family_f_prime(spec));
  const auto n = static_cast<std::uint32_t>(group.base().num_states());
  for (std::uint32_t q = 0; q < n; ++q) {
    const bool ok = group.is_trivial(Word{q, q});
    const std::string& name = group.base().states()[q];
    c.facts.emplace_back(name + " " + name + " is trivial", ok);
    if (!ok && c.failure.empty()) c.failure = name + " is not an involution";
  }
  std::vector<std::vector<Word>> found(n);
  std::vector<std::uint64_t> counts(n, 0);
  if (L >= 1) {
    detail::for_each_first_letter(n, jobs, [&](std::uint32_t first) {
      Word w{first};
      detail::dfs_words(
          w, L, n, [](const Word& cur, std::uint32_t x) { return cur.back() != x; },
          [&](const Word& cur) {
            ++counts[first];
            if (group.is_trivial(cur)) found[first].push_back(cur);
          });
    });
  }
  SearchEvidence s{"positive words with no two equal adjacent letters", 0, {}};
  std::vector<Word> all;
  for (std::uint32_t x = 0; x < n; ++x) {
    s.candidates += counts[x];
    all.insert(all.end(), found[x].begin(), found[x].end());
  }
  std::sort(all.begin(), all.end(), detail::shortlex_less);
  for (const auto& w : all) s.relations.push_back(group.decode(w));
  if (!s.relations.empty() && c.failure.empty())
    c.failure = "relation " + format_signed_word(s.relations.front());
  c.search = std::move(s);
  c.pass = c.failure.empty();
  return c;
}

// ---------------------------------------------------------------------------
// Orbit facts behind the transitivity argument

namespace detail {

struct HGroup {
  std::vector<DualGenerator> gens;  // G0, G1, (ab), (bc)
};

inline HGroup h_generators(const FamilySpec& spec) {
  const auto G = machine_G(spec);
  const auto names = spec.state_names();
  auto ab = letter_automorphism(names, {{"a", "b"}});
  auto bc = letter_automorphism(names, {{"b", "c"}});
  return {{{G.machine_ptr(), 0, "G0"}, {G.machine_ptr(), 1, "G1"}, {ab.machine_ptr(), 0, "(a,b)"},
           {bc.machine_ptr(), 0, "(b,c)"}}};
}

inline Word replay(const std::vector<DualGenerator>& gens, Word w, const std::vector<std::uint32_t>& path) {
  for (auto g : path) w = gens[g].apply(w);
  return w;
}

struct Tally {
  std::size_t cases = 0, failures = 0;
  std::string first;
  void fail(std::string why) {
    if (failures++ == 0) first = std::move(why);
  }
  std::string summary() const {
    return std::to_string(cases) + " cases, " + std::to_string(failures) + " failures" +
           (first.empty() ? std::string() : "; first: " + first);
  }
};

/// Checks that `to` is reachable from `from` and that the witness replays.
inline bool reach(const std::vector<DualGenerator>& gens, const Word& from, const Word& to, const OrbitOptions& opts) {
  auto path = orbit_path(gens, from, to, opts);
  return path && replay(gens, from, *path) == to;
}

}  // namespace detail

/// Desk-scale instances of the orbit facts behind the transitivity proof:
///  (a) random words L a_m^e_m y_(m-1) ... y_1 a_1^e_1 R with a_i in {a,b,c},
///      L, R words and y_i single letters over (Q \ {a,b,c})^±, reach the
///      same word with any other choice of the a_i under
///      H = <G0, G1, (ab), (bc)>;
///  (b) a^e w, b^e w, c^e w (and di^e w, i > 1) share a D-orbit for every
///      w = d1^e_m a_m ... d1^e_1 a_1 d1^k with a_j in {a,b}^±;
///  (c) b^e u, c^e u (and di^e u, i > 1) share a D-orbit for u over {a,d1}^±;
///  (d) for the (a) instances with R empty, ending in a letter x of {a,b,c}^±: if w x
///      reaches u y under H then w x x reaches u y y.
inline Report verify_section4_lemmas(const FamilySpec& spec, std::size_t max_len, std::size_t instances = 50,
                                     std::uint64_t seed = 1, const OrbitOptions& opts = {}) {
  Report r;
  r.title = "orbit-lemmas " + spec.describe() + " max_len=" + std::to_string(max_len);
  const auto D = machine_D(spec);
  const Alphabet& sig = D.alphabet();
  const auto H = detail::h_generators(spec);
  const auto Dgens = generators_of(D);
  const auto names = spec.state_names();
  auto letter = [&](const std::string& q, int e) { return sig.at(e > 0 ? q : inverse_token(q)); };
  std::vector<std::string> outer(names.begin() + 3, names.end());  // Q \ {a,b,c}
  const std::vector<std::string> abc{"a", "b", "c"};
  auto fmt = [&](const Word& w) { return "\"" + sig.format(w, false) + "\""; };

  // (a) and (d)
  struct Shape {
    std::size_t m, left, right;
  };
  std::vector<Shape> shapes;
  for (std::size_t m = 1; m <= max_len; ++m) {
    const std::size_t core = 2 * m - 1;
    if (core > max_len) break;
    for (std::size_t left = 0; core + left <= max_len; ++left)
      for (std::size_t right = 0; core + left + right <= max_len; ++right) shapes.push_back({m, left, right});
  }
  std::mt19937_64 rng(seed);
  auto pick_outer = [&] { return letter(outer[rng() % outer.size()], rng() % 2 ? 1 : -1); };
  detail::Tally crit, doubling;
  for (std::size_t t = 0; t < instances && !shapes.empty(); ++t) {
    const Shape s = shapes[rng() % shapes.size()];
    Word src, dst;
    auto push_both = [&](std::uint32_t x) {
      src.push_back(x);
      dst.push_back(x);
    };
    for (std::size_t i = 0; i < s.left; ++i) push_both(pick_outer());
    for (std::size_t i = s.m; i >= 1; --i) {
      const int e = rng() % 2 ? 1 : -1;
      src.push_back(letter(abc[rng() % 3], e));
      dst.push_back(letter(abc[rng() % 3], e));
      if (i > 1) push_both(pick_outer());
    }
    for (std::size_t i = 0; i < s.right; ++i) push_both(pick_outer());
    ++crit.cases;
    if (!detail::reach(H.gens, src, dst, opts)) {
      crit.fail(fmt(src) + " does not reach " + fmt(dst));
      continue;
    }
    if (s.right == 0) {
      Word src2 = src, dst2 = dst;
      src2.push_back(src.back());
      dst2.push_back(dst.back());
      ++doubling.cases;
      if (!detail::reach(H.gens, src2, dst2, opts)) doubling.fail(fmt(src2) + " does not reach " + fmt(dst2));
    }
  }
  r.add("H moves the {a,b,c} letters freely (random instances)", crit.failures == 0 && crit.cases > 0,
        crit.summary());

  // (b)
  detail::Tally ford;
  std::vector<std::string> extra(names.begin() + 4, names.end());  // d2..dn
  const std::vector<std::uint32_t> ab_signed{letter("a", 1), letter("b", 1), letter("a", -1), letter("b", -1)};
  if (max_len >= 1) {
    for (std::size_t m = 0; 1 + 2 * m <= max_len; ++m) {
      const std::size_t room = max_len - 1 - 2 * m;
      // every choice of e_j (2 ways) and a_j (4 ways) per block
      std::size_t blocks = 1;
      for (std::size_t j = 0; j < m; ++j) blocks *= 8;
      for (std::size_t code = 0; code < blocks; ++code) {
        Word body;
        std::size_t c = code;
        for (std::size_t j = 0; j < m; ++j, c /= 8) {
          body.push_back(letter("d1", (c % 8) / 4 ? -1 : 1));
          body.push_back(ab_signed[c % 4]);
        }
        for (int k = -static_cast<int>(room); k <= static_cast<int>(room); ++k) {
          Word w = body;
          for (int i = 0; i < std::abs(k); ++i) w.push_back(letter("d1", k > 0 ? 1 : -1));
          for (int e : {1, -1}) {
            auto with = [&](const std::string& q) {
              Word v{letter(q, e)};
              v.insert(v.end(), w.begin(), w.end());
              return v;
            };
            const Word base = with("a");
            std::vector<std::string> others{"b", "c"};
            others.insert(others.end(), extra.begin(), extra.end());
            for (const auto& q : others) {
              ++ford.cases;
              if (!detail::reach(Dgens, base, with(q), opts)) ford.fail(fmt(base) + " and " + fmt(with(q)));
            }
          }
        }
      }
    }
  }
  r.add("a^e w, b^e w, c^e w share a D-orbit (w = d1^e a ... d1^k)", ford.failures == 0 && ford.cases > 0,
        ford.summary());

  // (c)
  detail::Tally hard;
  const std::vector<std::uint32_t> ad{letter("a", 1), letter("d1", 1), letter("a", -1), letter("d1", -1)};
  if (max_len >= 1) {
    for (std::size_t len = 0; len + 1 <= max_len; ++len) {
      for (auto u : detail::all_words(4, len)) {
        for (auto& x : u) x = ad[x];
        for (int e : {1, -1}) {
          auto with = [&](const std::string& q) {
            Word v{letter(q, e)};
            v.insert(v.end(), u.begin(), u.end());
            return v;
          };
          const Word base = with("b");
          std::vector<std::string> others{"c"};
          others.insert(others.end(), extra.begin(), extra.end());
          for (const auto& q : others) {
            ++hard.cases;
            if (!detail::reach(Dgens, base, with(q), opts)) hard.fail(fmt(base) + " and " + fmt(with(q)));
          }
        }
      }
    }
  }
  r.add("b^e u, c^e u share a D-orbit (u over {a,d1})", hard.failures == 0 && hard.cases > 0, hard.summary());

  r.add("doubling the last letter keeps H-reachability", doubling.failures == 0, doubling.summary());
  return r;
}

/// Facts about Aleshin's automaton A and its dual on (A^±):
///  (i) the dual is transitive on every pattern class up to max_pattern;
///  (ii) E1 = E0 (ab);
///  (iii) the dual states D0, D1 are products of E0, (ab), (bc) of length
///       at most 4.
inline Report verify_aleshin_results(std::size_t max_pattern, const OrbitOptions& opts = {}) {
  Report r;
  r.title = "aleshin max_pattern=" + std::to_string(max_pattern);
  const Mealy A = aleshin();
  const DualMachine D = dual_of_pm(A);
  const std::vector<std::string> names{"a", "b", "c"};

  std::size_t patterns = 0;
  std::string bad;
  for (std::size_t len = 1; len <= max_pattern; ++len) {
    for (const auto& p : all_patterns(len)) {
      ++patterns;
      auto t = pattern_transitivity(D, names, p, opts);
      if (!t.transitive && bad.empty())
        bad = "pattern " + format_pattern(p) + ": orbit " + std::to_string(t.orbit_size) + " of " +
              std::to_string(t.class_size);
    }
  }
  r.add("dual transitive on every pattern class", bad.empty(),
        bad.empty() ? std::to_string(patterns) + " patterns up to length " + std::to_string(max_pattern) : bad);

  const DualMachine E = aleshin_e();
  const auto ab = letter_automorphism(names, {{"a", "b"}});
  const auto bc = letter_automorphism(names, {{"b", "c"}});
  const auto e0 = as_transformation(E, 0u);
  r.add("E1 = E0 (ab)", equivalent(as_transformation(E, 1u), rtl_product({e0, ab})));

  const std::vector<std::pair<std::string, Transformation>> gens{{"E0", e0}, {"(ab)", ab}, {"(bc)", bc}};
  for (std::uint32_t s = 0; s < 2; ++s) {
    const auto target = as_transformation(D, s);
    std::optional<std::vector<std::size_t>> hit;
    std::vector<std::vector<std::size_t>> layer{{}};
    for (std::size_t len = 1; len <= 4 && !hit; ++len) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& seq : layer) {
        for (std::size_t g = 0; g < gens.size() && !hit; ++g) {
          auto cand = seq;
          cand.push_back(g);
          std::vector<Transformation> factors;
          for (auto i : cand) factors.push_back(gens[i].second);
          if (equivalent(rtl_product(factors), target)) hit = cand;
          next.push_back(std::move(cand));
        }
      }
      layer = std::move(next);
    }
    std::string expr;
    if (hit)
      for (auto i : *hit) expr += (expr.empty() ? "" : " ") + gens[i].first;
    r.add("D" + std::to_string(s) + " is a product of E0, (ab), (bc)", hit.has_value(),
          hit ? "D" + std::to_string(s) + " = " + expr : "no product of length <= 4");
  }
  return r;
}

}  // namespace agt
