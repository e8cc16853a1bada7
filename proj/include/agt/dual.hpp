#pragma once

// Dual automata. The dual of (Q, A, delta, lambda) has the letters A as
// states and the states Q as its alphabet: in dual state a, reading q, it
// writes q_a and moves to q(a). Dual machines read words from the RIGHT;
// DualMachine exists so that this cannot be mixed up with act().

#include <random>
#include <string>
#include <vector>

#include "agt/mealy.hpp"
#include "agt/report.hpp"
#include "agt/transform.hpp"
#include "agt/word.hpp"

namespace agt {

class DualMachine {
 public:
  explicit DualMachine(Mealy m) : machine_(std::make_shared<const Mealy>(std::move(m))) {}
  explicit DualMachine(std::shared_ptr<const Mealy> m) : machine_(std::move(m)) {
    if (!machine_) throw Error("dual machine without a table");
  }

  /// The underlying table, to be read right-to-left.
  const Mealy& machine() const noexcept { return *machine_; }
  const std::shared_ptr<const Mealy>& machine_ptr() const noexcept { return machine_; }
  const Alphabet& states() const noexcept { return machine_->states(); }
  const Alphabet& alphabet() const noexcept { return machine_->alphabet(); }
  std::size_t num_states() const noexcept { return machine_->num_states(); }

  struct Run {
    std::uint32_t end;  // state after consuming the whole word
    Word output;
  };

  /// Consumes u from its last symbol to its first; output is positional.
  Run run_rtl(std::uint32_t state, const Word& u) const {
    if (state >= num_states()) throw Error("dual state out of range");
    detail::check_word(alphabet(), u);
    Word out(u.size());
    std::uint32_t s = state;
    for (std::size_t i = u.size(); i-- > 0;) {
      out[i] = machine_->output(s, u[i]);
      s = machine_->next(s, u[i]);
    }
    return {s, std::move(out)};
  }

  Word act_rtl(std::uint32_t state, const Word& u) const { return run_rtl(state, u).output; }

  SignedWord act_rtl(std::string_view state, const SignedWord& u) const {
    return decode_signed(alphabet(), act_rtl(states().at(state), encode_signed(alphabet(), u)));
  }

  bool operator==(const DualMachine& other) const { return *machine_ == *other.machine_; }

 private:
  std::shared_ptr<const Mealy> machine_;
};

namespace detail {
inline Mealy transpose(const Mealy& m) {
  const auto n = static_cast<std::uint32_t>(m.num_states());
  const auto k = static_cast<std::uint32_t>(m.num_letters());
  std::vector<std::uint32_t> delta(k * n), lambda(k * n);
  for (std::uint32_t q = 0; q < n; ++q) {
    for (std::uint32_t a = 0; a < k; ++a) {
      delta[a * n + q] = m.output(q, a);
      lambda[a * n + q] = m.next(q, a);
    }
  }
  return Mealy(Alphabet(m.alphabet().tokens(), "state"), Alphabet(m.states().tokens(), "letter"), std::move(delta),
               std::move(lambda));
}
}  // namespace detail

inline DualMachine dual(const Mealy& m) { return DualMachine(detail::transpose(m)); }

/// Back from a dual to the ordinary automaton; dual(undual(d)) == d.
inline Mealy undual(const DualMachine& d) { return detail::transpose(d.machine()); }

/// dual(pm_union(m)): the dual acting on words over Q^±.
inline DualMachine dual_of_pm(const Mealy& m) { return dual(pm_union(m)); }

/// The inverse of a dual machine acts by the inverses of its states.
inline DualMachine inverse_dual(const DualMachine& d) { return DualMachine(inverse_mealy(d.machine())); }

/// Dual state s as an ordinary transformation T with
/// act_rtl(s, w) = reverse(act(T, reverse(w))).
inline Transformation as_transformation(const DualMachine& d, std::uint32_t state) {
  return {d.machine_ptr(), state};
}
inline Transformation as_transformation(const DualMachine& d, std::string_view state) {
  return {d.machine_ptr(), d.states().at(state)};
}

/// Right-action product: `factors` are applied left to right (first factor
/// first), matching how products of dual elements are written. Returns the
/// underlying transformation; equivalence of such products is equivalence
/// of the right-to-left maps.
inline Transformation rtl_product(const std::vector<Transformation>& factors) {
  if (factors.empty()) throw Error("rtl_product: empty list");
  std::vector<Transformation> rev(factors.rbegin(), factors.rend());
  return compose(rev);
}

// ---------------------------------------------------------------------------
// Reversibility

inline bool is_reversible(const Mealy& m) {
  std::vector<bool> hit(m.num_states());
  for (std::uint32_t a = 0; a < m.num_letters(); ++a) {
    std::fill(hit.begin(), hit.end(), false);
    for (std::uint32_t q = 0; q < m.num_states(); ++q) {
      auto t = m.next(q, a);
      if (hit[t]) return false;
      hit[t] = true;
    }
  }
  return true;
}

inline bool is_bireversible(const Mealy& m) {
  require_invertible(m, "is_bireversible");
  return is_reversible(m) && is_reversible(inverse_mealy(m));
}

/// Same predicate through the dual: both duals must be invertible.
inline bool is_bireversible_via_dual(const Mealy& m) {
  require_invertible(m, "is_bireversible");
  return is_invertible(dual(m).machine()) && is_invertible(dual(inverse_mealy(m)).machine());
}

// ---------------------------------------------------------------------------
// Duality identities

namespace detail {

struct DualCase {
  Word states;   // over Q^± (pm indices), leftmost written first
  Word letters;  // a_1 ... a_m over A
};

/// Checks both identities on one case; returns an empty string on success
/// and a description otherwise.
inline std::string check_dual_case(const AutomatonGroup& group, const DualMachine& d, const DualCase& c) {
  const Mealy& pm = group.pm();
  Word w = c.states;
  Word collected;
  for (auto a : c.letters) {
    auto run = d.run_rtl(a, w);
    collected.push_back(run.end);
    w = std::move(run.output);
  }
  auto describe = [&] {
    return "word \"" + pm.states().format(c.states, false) + "\" letters \"" +
           pm.alphabet().format(c.letters, pm.alphabet().single_char_letters()) + "\"";
  };
  Word direct = c.letters;
  for (std::size_t i = c.states.size(); i-- > 0;) {
    Transformation t(group.pm_ptr(), c.states[i]);
    direct = act(t, direct);
  }
  if (direct != collected)
    return "identity 1 fails on " + describe() + ": dual gives \"" + pm.alphabet().format(collected, pm.alphabet().single_char_letters()) +
           "\", action gives \"" + pm.alphabet().format(direct, pm.alphabet().single_char_letters()) + "\"";
  // Section of the product, one factor at a time: q_i is cut at the word
  // that the factors to its right have already written.
  Word sec = c.states;
  Word u = c.letters;
  for (std::size_t i = sec.size(); i-- > 0;) {
    Word v(u.size());
    std::uint32_t s = sec[i];
    for (std::size_t j = 0; j < u.size(); ++j) {
      v[j] = pm.output(s, u[j]);
      s = pm.next(s, u[j]);
    }
    sec[i] = s;
    u = std::move(v);
  }
  if (sec == w) return {};
  // Different words may still be the same element: test sec * w^-1.
  const auto n = static_cast<std::uint32_t>(group.base().num_states());
  Word quotient = sec;
  for (std::size_t i = w.size(); i-- > 0;) quotient.push_back(w[i] < n ? w[i] + n : w[i] - n);
  if (!detail::product_is_identity(pm, quotient))
    return "identity 2 fails on " + describe() + ": dual word \"" + pm.states().format(w, false) +
           "\" is not the section";
  return {};
}

inline void require_dual_shape(const Mealy& m, const DualMachine& d) {
  const Mealy pm = pm_union(m);
  if (!(d.states().tokens() == pm.alphabet().tokens()) || !(d.alphabet().tokens() == pm.states().tokens()))
    throw Error("dual machine does not match the automaton's Q^± and alphabet");
}

inline Report dual_report(std::size_t cases, std::size_t failures, const std::string& first, const std::string& scope) {
  Report r;
  r.title = "dual-theorem";
  if (cases == 0) return r;
  r.add("end states equal the action on letters, and output words equal the sections", failures == 0,
        std::to_string(cases) + " " + scope + ", " + std::to_string(failures) + " failures" +
            (first.empty() ? std::string() : "; first: " + first));
  return r;
}

}  // namespace detail

/// Random (state word over Q^±, letter word) pairs, lengths uniform in
/// [0, max_len], checked against the supplied dual of pm_union(m).
inline Report verify_dual_theorem(const Mealy& m, const DualMachine& d, std::size_t trials, std::size_t max_len,
                                  std::uint64_t seed = 1) {
  require_invertible(m, "verify_dual_theorem");
  detail::require_dual_shape(m, d);
  AutomatonGroup group(m);
  std::mt19937_64 rng(seed);
  const auto nq = group.pm().num_states();
  const auto k = group.pm().num_letters();
  std::size_t failures = 0;
  std::string first;
  for (std::size_t t = 0; t < trials; ++t) {
    detail::DualCase c;
    c.states.resize(rng() % (max_len + 1));
    for (auto& x : c.states) x = static_cast<std::uint32_t>(rng() % nq);
    c.letters.resize(rng() % (max_len + 1));
    for (auto& x : c.letters) x = static_cast<std::uint32_t>(rng() % k);
    auto msg = detail::check_dual_case(group, d, c);
    if (!msg.empty() && failures++ == 0) first = msg;
  }
  return detail::dual_report(trials, failures, first, "random cases");
}

inline Report verify_dual_theorem(const Mealy& m, std::size_t trials, std::size_t max_len, std::uint64_t seed = 1) {
  return verify_dual_theorem(m, dual_of_pm(m), trials, max_len, seed);
}

/// Every pair with state word and letter word of length <= max_len.
inline Report verify_dual_theorem_exhaustive(const Mealy& m, const DualMachine& d, std::size_t max_len) {
  require_invertible(m, "verify_dual_theorem");
  detail::require_dual_shape(m, d);
  AutomatonGroup group(m);
  const auto nq = static_cast<std::uint32_t>(group.pm().num_states());
  const auto k = static_cast<std::uint32_t>(group.pm().num_letters());
  auto all_words = [&](std::uint32_t base) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() == max_len) continue;
      for (std::uint32_t x = 0; x < base; ++x) {
        Word w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    }
    return out;
  };
  const auto state_words = all_words(nq);
  const auto letter_words = all_words(k);
  std::size_t cases = 0, failures = 0;
  std::string first;
  for (const auto& sw : state_words) {
    for (const auto& lw : letter_words) {
      ++cases;
      auto msg = detail::check_dual_case(group, d, {sw, lw});
      if (!msg.empty() && failures++ == 0) first = msg;
    }
  }
  return detail::dual_report(cases, failures, first, "exhaustive cases");
}

/// A copy of dual_of_pm(m) with the output of one edge replaced by another
/// letter (a negative control for the duality checks).
inline DualMachine corrupt_dual(const DualMachine& d, std::uint32_t state = 0, std::uint32_t letter = 0) {
  const Mealy& m = d.machine();
  if (m.num_letters() < 2) throw Error("corrupt_dual: need at least two letters");
  auto lambda = m.lambda_table();
  auto& cell = lambda.at(state * m.num_letters() + letter);
  cell = (cell + 1) % static_cast<std::uint32_t>(m.num_letters());
  return DualMachine(Mealy(m.states(), m.alphabet(), m.delta_table(), std::move(lambda)));
}

/// Reversing every edge s -x|y-> t to t -x|y-> s and swapping the two
/// states must give back the same diagram.
inline bool arrow_reversal_symmetric(const DualMachine& d) {
  const Mealy& m = d.machine();
  if (m.num_states() != 2) throw Error("arrow_reversal_symmetric: needs exactly two states");
  for (std::uint32_t s = 0; s < 2; ++s) {
    for (std::uint32_t x = 0; x < m.num_letters(); ++x) {
      const auto t = m.next(s, x);
      const auto y = m.output(s, x);
      if (m.next(1 - t, x) != 1 - s || m.output(1 - t, x) != y) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format

inline std::string serialize_dual(const DualMachine& d) { return "scan rtl\n" + serialize_mealy(d.machine()); }

inline DualMachine parse_dual(std::string_view text) {
  auto body = detail::parse_body(text);
  if (!body.rtl) throw ParseError(1, "expected a 'scan rtl' header for a dual machine");
  return DualMachine(std::move(*body.machine));
}

}  // namespace agt
