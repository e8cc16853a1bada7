#pragma once

// Initial automata A_q as length-preserving maps on finite words.

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "agt/mealy.hpp"
#include "agt/word.hpp"

namespace agt {

class Transformation {
 public:
  Transformation(std::shared_ptr<const Mealy> machine, std::uint32_t start)
      : machine_(std::move(machine)), start_(start) {
    if (!machine_) throw Error("transformation without a machine");
    if (start_ >= machine_->num_states()) throw Error("start state out of range");
  }
  Transformation(std::shared_ptr<const Mealy> machine, std::string_view start)
      : Transformation(machine, machine->states().at(start)) {}
  Transformation(const Mealy& machine, std::string_view start)
      : Transformation(std::make_shared<const Mealy>(machine), start) {}

  const Mealy& machine() const noexcept { return *machine_; }
  const std::shared_ptr<const Mealy>& machine_ptr() const noexcept { return machine_; }
  std::uint32_t start() const noexcept { return start_; }
  const std::string& start_token() const { return machine_->states()[start_]; }
  const Alphabet& alphabet() const noexcept { return machine_->alphabet(); }

 private:
  std::shared_ptr<const Mealy> machine_;
  std::uint32_t start_;
};

namespace detail {

inline void check_word(const Alphabet& alphabet, const Word& u) {
  for (auto a : u)
    if (a >= alphabet.size()) throw Error("letter index out of range for the alphabet");
}

inline void require_same_alphabet(const Alphabet& x, const Alphabet& y, std::string_view op) {
  if (!(x == y)) throw Error(std::string(op) + ": alphabet mismatch");
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

/// q(au) = q(a) q_a(u), iterated.
inline Word act(const Transformation& t, const Word& u) {
  detail::check_word(t.alphabet(), u);
  const Mealy& m = t.machine();
  Word out(u.size());
  std::uint32_t q = t.start();
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = m.output(q, u[i]);
    q = m.next(q, u[i]);
  }
  return out;
}

inline std::vector<std::string> act(const Transformation& t, const std::vector<std::string>& u) {
  return t.alphabet().decode(act(t, t.alphabet().encode(u)));
}

/// The section t_w: same machine, started at delta(start, w).
inline Transformation section(const Transformation& t, const Word& w) {
  detail::check_word(t.alphabet(), w);
  std::uint32_t q = t.start();
  for (auto a : w) q = t.machine().next(q, a);
  return {t.machine_ptr(), q};
}

inline Transformation identity_transformation(const Alphabet& alphabet) {
  const auto k = static_cast<std::uint32_t>(alphabet.size());
  std::vector<std::uint32_t> delta(k, 0), lambda(k);
  for (std::uint32_t a = 0; a < k; ++a) lambda[a] = a;
  return {std::make_shared<const Mealy>(Alphabet({"id"}, "state"), alphabet, std::move(delta), std::move(lambda)), 0};
}

/// The one-state machine computing sigma* (sigma applied letterwise).
inline Transformation automorphism_transformation(const StateAutomorphism& sigma, std::string name = "sigma") {
  const auto k = static_cast<std::uint32_t>(sigma.domain().size());
  std::vector<std::uint32_t> delta(k, 0), lambda(sigma.image());
  return {std::make_shared<const Mealy>(Alphabet({std::move(name)}, "state"), sigma.domain(), std::move(delta),
                                        std::move(lambda)),
          0};
}

/// compose({f_n, ..., f_1}) = f_n ... f_1: the LAST element applies first.
/// Builds the product automaton on tuples reachable from the start tuple,
/// breadth-first in letter order.
inline Transformation compose(std::span<const Transformation> ts) {
  if (ts.empty()) throw Error("compose: empty list");
  const Alphabet& alphabet = ts.front().alphabet();
  for (const auto& t : ts) detail::require_same_alphabet(alphabet, t.alphabet(), "compose");
  if (ts.size() == 1) return ts.front();

  const auto k = static_cast<std::uint32_t>(alphabet.size());
  const std::size_t len = ts.size();
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VecHash> index;
  std::vector<std::vector<std::uint32_t>> tuples;
  std::vector<std::uint32_t> delta, lambda;

  std::vector<std::uint32_t> start(len);
  for (std::size_t i = 0; i < len; ++i) start[i] = ts[i].start();
  index.emplace(start, 0);
  tuples.push_back(std::move(start));

  for (std::size_t s = 0; s < tuples.size(); ++s) {
    for (std::uint32_t a = 0; a < k; ++a) {
      std::vector<std::uint32_t> next = tuples[s];
      std::uint32_t x = a;
      for (std::size_t i = len; i-- > 0;) {
        const Mealy& m = ts[i].machine();
        const std::uint32_t q = next[i];
        next[i] = m.next(q, x);
        x = m.output(q, x);
      }
      auto [it, inserted] = index.emplace(next, static_cast<std::uint32_t>(tuples.size()));
      if (inserted) tuples.push_back(std::move(next));
      delta.push_back(it->second);
      lambda.push_back(x);
    }
  }
  std::vector<std::string> names;
  names.reserve(tuples.size());
  for (std::size_t s = 0; s < tuples.size(); ++s) names.push_back("s" + std::to_string(s));
  return {std::make_shared<const Mealy>(Alphabet(std::move(names), "state"), alphabet, std::move(delta),
                                        std::move(lambda)),
          0};
}

inline Transformation compose(std::initializer_list<Transformation> ts) {
  return compose(std::span<const Transformation>(ts.begin(), ts.size()));
}

inline Transformation invert(const Transformation& t) {
  return {std::make_shared<const Mealy>(inverse_mealy(t.machine())), t.start()};
}

/// Moore partition refinement over the states reachable from the start.
/// Seed partition: identical output rows; refined by successor blocks until
/// the block count is stable. The result is renumbered breadth-first from
/// the start (start = state 0), so two minimal machines computing the same
/// map have identical tables. States keep the name of their first-reached
/// representative.
inline Transformation minimize(const Transformation& t) {
  const Mealy& m = t.machine();
  const auto k = static_cast<std::uint32_t>(m.num_letters());

  std::vector<std::uint32_t> order{t.start()};
  std::vector<std::int64_t> pos(m.num_states(), -1);
  pos[t.start()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::uint32_t a = 0; a < k; ++a) {
      auto q = m.next(order[i], a);
      if (pos[q] < 0) {
        pos[q] = static_cast<std::int64_t>(order.size());
        order.push_back(q);
      }
    }
  }
  const std::size_t r = order.size();

  std::vector<std::uint32_t> block(r);
  std::size_t num_blocks = 0;
  {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VecHash> ids;
    for (std::size_t i = 0; i < r; ++i) {
      auto row = m.output_row(order[i]);
      std::vector<std::uint32_t> key(row.begin(), row.end());
      auto [it, _] = ids.emplace(std::move(key), static_cast<std::uint32_t>(ids.size()));
      block[i] = it->second;
    }
    num_blocks = ids.size();
  }
  while (true) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VecHash> ids;
    std::vector<std::uint32_t> refined(r);
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::uint32_t> key;
      key.reserve(k + 1);
      key.push_back(block[i]);
      for (std::uint32_t a = 0; a < k; ++a) key.push_back(block[pos[m.next(order[i], a)]]);
      auto [it, _] = ids.emplace(std::move(key), static_cast<std::uint32_t>(ids.size()));
      refined[i] = it->second;
    }
    block = std::move(refined);
    if (ids.size() == num_blocks) break;
    num_blocks = ids.size();
  }

  // Representative of each block: first member in BFS order.
  std::vector<std::int64_t> rep(num_blocks, -1);
  for (std::size_t i = 0; i < r; ++i)
    if (rep[block[i]] < 0) rep[block[i]] = static_cast<std::int64_t>(i);

  std::vector<std::int64_t> canon(num_blocks, -1);
  std::vector<std::uint32_t> canon_order{block[0]};
  canon[block[0]] = 0;
  for (std::size_t i = 0; i < canon_order.size(); ++i) {
    const auto q = order[rep[canon_order[i]]];
    for (std::uint32_t a = 0; a < k; ++a) {
      auto b = block[pos[m.next(q, a)]];
      if (canon[b] < 0) {
        canon[b] = static_cast<std::int64_t>(canon_order.size());
        canon_order.push_back(b);
      }
    }
  }
  std::vector<std::string> names;
  std::vector<std::uint32_t> delta, lambda;
  for (auto b : canon_order) {
    const auto q = order[rep[b]];
    names.push_back(m.states()[q]);
    for (std::uint32_t a = 0; a < k; ++a) {
      delta.push_back(static_cast<std::uint32_t>(canon[block[pos[m.next(q, a)]]]));
      lambda.push_back(m.output(q, a));
    }
  }
  return {std::make_shared<const Mealy>(Alphabet(std::move(names), "state"), m.alphabet(), std::move(delta),
                                        std::move(lambda)),
          0};
}

/// Shortest input on which the two maps differ (its last letter is where
/// the outputs first disagree), found by BFS over reachable state pairs.
inline std::optional<Word> find_difference(const Transformation& t1, const Transformation& t2) {
  detail::require_same_alphabet(t1.alphabet(), t2.alphabet(), "equivalent");
  const Mealy& m1 = t1.machine();
  const Mealy& m2 = t2.machine();
  const auto k = static_cast<std::uint32_t>(m1.num_letters());
  const std::uint64_t n2 = m2.num_states();
  auto key = [&](std::uint32_t a, std::uint32_t b) { return a * n2 + b; };

  struct Node {
    std::uint32_t q1, q2;
    std::int64_t parent;
    std::uint32_t letter;
  };
  std::vector<Node> nodes{{t1.start(), t2.start(), -1, 0}};
  std::unordered_set<std::uint64_t> seen{key(t1.start(), t2.start())};
  auto path_to = [&](std::int64_t i) {
    Word w;
    for (; nodes[i].parent >= 0; i = nodes[i].parent) w.push_back(nodes[i].letter);
    return Word(w.rbegin(), w.rend());
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [q1, q2, parent, letter] = nodes[i];
    for (std::uint32_t a = 0; a < k; ++a) {
      if (m1.output(q1, a) != m2.output(q2, a)) {
        Word w = path_to(static_cast<std::int64_t>(i));
        w.push_back(a);
        return w;
      }
      const auto n1q = m1.next(q1, a), n2q = m2.next(q2, a);
      if (seen.insert(key(n1q, n2q)).second) nodes.push_back({n1q, n2q, static_cast<std::int64_t>(i), a});
    }
  }
  return std::nullopt;
}

inline bool equivalent(const Transformation& t1, const Transformation& t2) { return !find_difference(t1, t2); }

/// Equality decided by comparing canonical minimal tables; must agree with
/// equivalent().
inline bool equivalent_by_minimization(const Transformation& t1, const Transformation& t2) {
  detail::require_same_alphabet(t1.alphabet(), t2.alphabet(), "equivalent");
  auto a = minimize(t1), b = minimize(t2);
  return a.machine().delta_table() == b.machine().delta_table() &&
         a.machine().lambda_table() == b.machine().lambda_table();
}

/// True iff every state reachable from the start outputs the identity on
/// letters, which holds exactly when the minimal machine is the one-state
/// identity.
inline bool is_trivial(const Transformation& t) {
  const Mealy& m = t.machine();
  const auto k = static_cast<std::uint32_t>(m.num_letters());
  std::vector<bool> seen(m.num_states(), false);
  std::vector<std::uint32_t> stack{t.start()};
  seen[t.start()] = true;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (std::uint32_t a = 0; a < k; ++a) {
      if (m.output(q, a) != a) return false;
      auto nq = m.next(q, a);
      if (!seen[nq]) {
        seen[nq] = true;
        stack.push_back(nq);
      }
    }
  }
  return true;
}

/// Size of the minimal machine.
inline std::size_t minimal_size(const Transformation& t) { return minimize(t).machine().num_states(); }

/// Smallest k in [1, cap] with t^k trivial, minimizing after each step.
inline std::optional<std::size_t> transformation_order(const Transformation& t, std::size_t cap) {
  Transformation power = minimize(t);
  for (std::size_t k = 1; k <= cap; ++k) {
    if (is_trivial(power)) return k;
    power = minimize(compose({power, t}));
  }
  return std::nullopt;
}

namespace detail {
inline std::vector<std::uint32_t> canonical_key(const Transformation& t) {
  auto m = minimize(t);
  std::vector<std::uint32_t> key{static_cast<std::uint32_t>(m.machine().num_states())};
  key.insert(key.end(), m.machine().delta_table().begin(), m.machine().delta_table().end());
  key.insert(key.end(), m.machine().lambda_table().begin(), m.machine().lambda_table().end());
  return key;
}
}  // namespace detail

/// Every product of the generators (the identity included), one minimized
/// representative per distinct map, in breadth-first order. Throws if more
/// than `cap` distinct maps turn up.
inline std::vector<Transformation> transformation_closure(const std::vector<Transformation>& gens, std::size_t cap) {
  if (gens.empty()) throw Error("transformation_closure: no generators");
  std::vector<Transformation> out{minimize(identity_transformation(gens.front().alphabet()))};
  std::unordered_set<std::vector<std::uint32_t>, detail::VecHash> seen{detail::canonical_key(out.front())};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      auto p = minimize(compose({g, out[i]}));
      if (seen.insert(detail::canonical_key(p)).second) {
        if (out.size() >= cap) throw Error("transformation_closure: more than " + std::to_string(cap) + " elements");
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transition monoid

struct TransitionMonoid {
  std::vector<std::vector<std::uint32_t>> elements;  // elements[i][q] = q_w
  std::vector<Word> words;                           // shortest word realizing each element
  bool is_group = true;
};

/// Closure of the letter maps q -> q_a under composition, identity included,
/// enumerated breadth-first (shortlex on realizing words).
inline TransitionMonoid transition_monoid(const Mealy& m) {
  const auto n = static_cast<std::uint32_t>(m.num_states());
  const auto k = static_cast<std::uint32_t>(m.num_letters());
  TransitionMonoid tm;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, detail::VecHash> seen;
  std::vector<std::uint32_t> id(n);
  for (std::uint32_t q = 0; q < n; ++q) id[q] = q;
  seen.emplace(id, 0);
  tm.elements.push_back(std::move(id));
  tm.words.push_back({});
  for (std::size_t i = 0; i < tm.elements.size(); ++i) {
    for (std::uint32_t a = 0; a < k; ++a) {
      std::vector<std::uint32_t> f(n);
      for (std::uint32_t q = 0; q < n; ++q) f[q] = m.next(tm.elements[i][q], a);
      if (seen.emplace(f, static_cast<std::uint32_t>(tm.elements.size())).second) {
        Word w = tm.words[i];
        w.push_back(a);
        tm.elements.push_back(std::move(f));
        tm.words.push_back(std::move(w));
      }
    }
  }
  for (const auto& f : tm.elements) {
    std::vector<bool> hit(n, false);
    for (auto x : f) hit[x] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      tm.is_group = false;
      break;
    }
  }
  return tm;
}

// ---------------------------------------------------------------------------
// Group words

namespace detail {

/// Decides whether the composite of `components` (states of `m`; the last
/// component applies first) is the identity, exploring the product lazily
/// and stopping at the first non-identity output.
inline bool product_is_identity(const Mealy& m, const Word& components) {
  const std::size_t len = components.size();
  if (len == 0) return true;
  const auto k = static_cast<std::uint32_t>(m.num_letters());
  unsigned bits = 1;
  while ((std::size_t{1} << bits) < m.num_states()) ++bits;

  if (bits * len <= 64) {
    const std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
    auto pack = [&](const Word& w) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < len; ++i) key |= static_cast<std::uint64_t>(w[i]) << (bits * i);
      return key;
    };
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> stack{pack(components)};
    seen.insert(stack.back());
    Word tuple(len);
    while (!stack.empty()) {
      const std::uint64_t cur = stack.back();
      stack.pop_back();
      for (std::uint32_t a = 0; a < k; ++a) {
        std::uint32_t x = a;
        std::uint64_t next = 0;
        for (std::size_t i = len; i-- > 0;) {
          const auto q = static_cast<std::uint32_t>((cur >> (bits * i)) & mask);
          next |= static_cast<std::uint64_t>(m.next(q, x)) << (bits * i);
          x = m.output(q, x);
        }
        if (x != a) return false;
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
    return true;
  }

  std::unordered_set<Word, VecHash> seen{components};
  std::vector<Word> stack{components};
  while (!stack.empty()) {
    Word cur = std::move(stack.back());
    stack.pop_back();
    for (std::uint32_t a = 0; a < k; ++a) {
      Word next = cur;
      std::uint32_t x = a;
      for (std::size_t i = len; i-- > 0;) {
        next[i] = m.next(cur[i], x);
        x = m.output(cur[i], x);
      }
      if (x != a) return false;
      if (seen.insert(next).second) stack.push_back(std::move(next));
    }
  }
  return true;
}

}  // namespace detail

/// The group G(A) of an invertible automaton, realized through A^±: a signed
/// word q_n^{e_n} ... q_1^{e_1} is the composite of states of pm_union(A).
class AutomatonGroup {
 public:
  explicit AutomatonGroup(const Mealy& m)
      : base_(std::make_shared<const Mealy>(m)), pm_(std::make_shared<const Mealy>(pm_union(m))) {}

  const Mealy& base() const noexcept { return *base_; }
  const Mealy& pm() const noexcept { return *pm_; }
  const std::shared_ptr<const Mealy>& pm_ptr() const noexcept { return pm_; }
  const Alphabet& alphabet() const noexcept { return base_->alphabet(); }

  /// Indices into the states of pm_union(A) (q -> i, q^-1 -> i + |Q|).
  Word encode(const SignedWord& w) const {
    Word out;
    out.reserve(w.size());
    for (const auto& l : w.letters) {
      auto q = base_->states().find(l.state);
      if (!q) throw Error("unknown state token '" + l.state + "'");
      out.push_back(l.exponent > 0 ? *q : *q + static_cast<std::uint32_t>(base_->num_states()));
    }
    return out;
  }

  SignedWord decode(const Word& pm_word) const {
    SignedWord out;
    const auto n = static_cast<std::uint32_t>(base_->num_states());
    for (auto i : pm_word) out.letters.push_back({base_->states()[i % n], i < n ? 1 : -1});
    return out;
  }

  Transformation element(const Word& pm_word) const {
    if (pm_word.empty()) return identity_transformation(alphabet());
    std::vector<Transformation> parts;
    parts.reserve(pm_word.size());
    for (auto i : pm_word) parts.emplace_back(pm_, i);
    return compose(parts);
  }
  Transformation element(const SignedWord& w) const { return element(encode(w)); }

  bool is_trivial(const Word& pm_word) const { return detail::product_is_identity(*pm_, pm_word); }
  bool is_trivial(const SignedWord& w) const { return is_trivial(encode(w)); }

 private:
  std::shared_ptr<const Mealy> base_;
  std::shared_ptr<const Mealy> pm_;
};

/// Composite of A_q^{±1} over pm_union(m), rightmost letter first; the empty
/// word gives the identity.
inline Transformation word_to_transformation(const Mealy& m, const SignedWord& w) {
  require_invertible(m, "word_to_transformation");
  return AutomatonGroup(m).element(w);
}

}  // namespace agt
