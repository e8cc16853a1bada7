#pragma once

// Generators and brute-force oracles shared by the test suites. The oracles
// only read the raw tables; they never call the library's algorithms.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "agt/agt.hpp"

namespace agt_test {

using agt::Alphabet;
using agt::Mealy;
using agt::SignedLetter;
using agt::SignedWord;
using agt::Word;

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Random automaton; every output row is a permutation when `invertible`.
inline Mealy random_mealy(std::mt19937_64& rng, std::size_t nq, std::size_t k, bool invertible = true) {
  std::vector<std::uint32_t> delta(nq * k), lambda(nq * k);
  for (std::size_t q = 0; q < nq; ++q) {
    std::vector<std::uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0u);
    if (invertible) std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t a = 0; a < k; ++a) {
      delta[q * k + a] = static_cast<std::uint32_t>(rng() % nq);
      lambda[q * k + a] = invertible ? perm[a] : static_cast<std::uint32_t>(rng() % k);
    }
  }
  std::vector<std::string> letters;
  for (std::size_t a = 0; a < k; ++a) letters.push_back(std::to_string(a));
  return Mealy(Alphabet(names("q", nq), "state"), Alphabet(letters), delta, lambda);
}

/// Column-wise bijections of delta (q -> q_a) for every letter.
inline bool oracle_reversible(const Mealy& m) {
  for (std::uint32_t a = 0; a < m.num_letters(); ++a) {
    std::set<std::uint32_t> img;
    for (std::uint32_t q = 0; q < m.num_states(); ++q) img.insert(m.next(q, a));
    if (img.size() != m.num_states()) return false;
  }
  return true;
}

/// Reversibility of the inverse automaton, read off the original tables:
/// the inverse of q reads y = lambda_q(x) and moves to the inverse of q_x.
inline bool oracle_inverse_reversible(const Mealy& m) {
  for (std::uint32_t y = 0; y < m.num_letters(); ++y) {
    std::set<std::uint32_t> img;
    for (std::uint32_t q = 0; q < m.num_states(); ++q)
      for (std::uint32_t x = 0; x < m.num_letters(); ++x)
        if (m.output(q, x) == y) img.insert(m.next(q, x));
    if (img.size() != m.num_states()) return false;
  }
  return true;
}

/// Random bireversible automaton: reversible by construction (each letter
/// permutes the states), rejected until its inverse is reversible too.
inline Mealy random_bireversible(std::mt19937_64& rng, std::size_t nq, std::size_t k) {
  std::vector<std::string> letters;
  for (std::size_t a = 0; a < k; ++a) letters.push_back(std::to_string(a));
  while (true) {
    std::vector<std::uint32_t> delta(nq * k), lambda(nq * k);
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<std::uint32_t> col(nq);
      std::iota(col.begin(), col.end(), 0u);
      std::shuffle(col.begin(), col.end(), rng);
      for (std::size_t q = 0; q < nq; ++q) delta[q * k + a] = col[q];
    }
    for (std::size_t q = 0; q < nq; ++q) {
      std::vector<std::uint32_t> row(k);
      std::iota(row.begin(), row.end(), 0u);
      std::shuffle(row.begin(), row.end(), rng);
      for (std::size_t a = 0; a < k; ++a) lambda[q * k + a] = row[a];
    }
    Mealy m(Alphabet(names("q", nq), "state"), Alphabet(letters), delta, lambda);
    if (oracle_inverse_reversible(m)) return m;
  }
}

inline Word random_word(std::mt19937_64& rng, std::size_t k, std::size_t len) {
  Word w(len);
  for (auto& x : w) x = static_cast<std::uint32_t>(rng() % k);
  return w;
}

inline SignedWord random_signed_word(std::mt19937_64& rng, const std::vector<std::string>& states, std::size_t len) {
  SignedWord w;
  for (std::size_t i = 0; i < len; ++i)
    w.letters.push_back({states[rng() % states.size()], rng() % 2 ? 1 : -1});
  return w;
}

/// Every word of length exactly len over k letters.
inline std::vector<Word> words_of_length(std::size_t k, std::size_t len) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (std::uint32_t x = 0; x < k; ++x) {
        auto v = w;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    out.swap(next);
  }
  return out;
}

inline std::vector<Word> words_up_to(std::size_t k, std::size_t len) {
  std::vector<Word> out;
  for (std::size_t l = 0; l <= len; ++l)
    for (auto& w : words_of_length(k, l)) out.push_back(std::move(w));
  return out;
}

/// Recursive definition of the action: q(x u) = lambda_q(x) q_x(u).
inline Word oracle_act(const Mealy& m, std::uint32_t q, const Word& u, std::size_t from = 0) {
  if (from == u.size()) return {};
  Word rest = oracle_act(m, m.next(q, u[from]), u, from + 1);
  rest.insert(rest.begin(), m.output(q, u[from]));
  return rest;
}

/// State word (leftmost written first) applied rightmost first.
inline Word oracle_act_word(const Mealy& m, const Word& states, Word u) {
  for (std::size_t i = states.size(); i-- > 0;) u = oracle_act(m, states[i], u);
  return u;
}

/// Inverse of a letter state by search over permutations of each row.
inline Word oracle_inverse_act(const Mealy& m, std::uint32_t q, const Word& v) {
  // Solve q(u) = v letter by letter.
  Word u;
  std::uint32_t s = q;
  for (auto y : v) {
    std::uint32_t x = 0;
    while (m.output(s, x) != y) ++x;
    u.push_back(x);
    s = m.next(s, x);
  }
  return u;
}

/// Number of behaviourally distinct states reachable from q, with
/// distinguishing words bounded by the state count (Moore's bound).
inline std::size_t oracle_minimal_size(const Mealy& m, std::uint32_t q) {
  std::set<std::uint32_t> reach{q};
  std::vector<std::uint32_t> stack{q};
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (std::uint32_t a = 0; a < m.num_letters(); ++a)
      if (reach.insert(m.next(s, a)).second) stack.push_back(m.next(s, a));
  }
  const auto probes = words_up_to(m.num_letters(), m.num_states());
  std::set<std::vector<Word>> behaviours;
  for (auto s : reach) {
    std::vector<Word> sig;
    for (const auto& w : probes) sig.push_back(oracle_act(m, s, w));
    behaviours.insert(sig);
  }
  return behaviours.size();
}

/// Cancel the leftmost adjacent inverse pair until none is left.
inline SignedWord oracle_free_reduce(SignedWord w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
      if (w.letters[i].state == w.letters[i + 1].state && w.letters[i].exponent == -w.letters[i + 1].exponent) {
        w.letters.erase(w.letters.begin() + static_cast<std::ptrdiff_t>(i), w.letters.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

/// All freely irreducible words with the sign sequence p, by filtering
/// every signed word of that length.
inline std::set<SignedWord> oracle_following(const agt::Pattern& p, const std::vector<std::string>& states) {
  std::set<SignedWord> out;
  std::vector<SignedWord> all{{}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<SignedWord> next;
    for (const auto& w : all)
      for (const auto& s : states)
        for (int e : {1, -1}) {
          auto v = w;
          v.letters.push_back({s, e});
          next.push_back(std::move(v));
        }
    all.swap(next);
  }
  for (const auto& w : all) {
    bool follows = true;
    for (std::size_t i = 0; i < p.size(); ++i)
      follows = follows && (w.letters[i].exponent > 0) == (p[i] == agt::Sign::Pos);
    if (follows && oracle_free_reduce(w) == w) out.insert(w);
  }
  return out;
}

}  // namespace agt_test
