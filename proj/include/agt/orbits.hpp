#pragma once

// Patterns, free reduction, and breadth-first orbits of signed state words
// under right-to-left machines.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "agt/dual.hpp"
#include "agt/families.hpp"
#include "agt/report.hpp"
#include "agt/transform.hpp"
#include "agt/word.hpp"
#include "json.hpp"

namespace agt {

enum class Sign : std::uint8_t { Pos, Neg };
using Pattern = std::vector<Sign>;

/// "++-" -> [Pos, Pos, Neg]. The empty string is the empty pattern.
inline Pattern parse_pattern(std::string_view text) {
  Pattern p;
  for (char c : text) {
    if (c == '+') p.push_back(Sign::Pos);
    else if (c == '-') p.push_back(Sign::Neg);
    else throw Error("pattern must be a string over '+' and '-', got '" + std::string(text) + "'");
  }
  return p;
}

inline std::string format_pattern(const Pattern& p) {
  std::string out;
  for (auto s : p) out += s == Sign::Pos ? '+' : '-';
  return out;
}

/// All 2^len patterns of one length, '+' before '-' at each position.
inline std::vector<Pattern> all_patterns(std::size_t len) {
  std::vector<Pattern> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
    Pattern p(len);
    for (std::size_t i = 0; i < len; ++i) p[i] = (bits >> (len - 1 - i)) & 1 ? Sign::Neg : Sign::Pos;
    out.push_back(std::move(p));
  }
  return out;
}

inline Pattern pattern_of(const SignedWord& w) {
  Pattern p;
  for (const auto& l : w.letters) p.push_back(l.exponent > 0 ? Sign::Pos : Sign::Neg);
  return p;
}

inline SignedWord free_reduce(const SignedWord& w) {
  SignedWord out;
  for (const auto& l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == l.inverse()) out.letters.pop_back();
    else out.letters.push_back(l);
  }
  return out;
}

inline bool is_freely_reduced(const SignedWord& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

inline SignedWord reversal(const SignedWord& w) {
  return {std::vector<SignedLetter>(w.letters.rbegin(), w.letters.rend())};
}

/// Freely irreducible words over `states`^± following p, lexicographic in
/// the order of `states`.
inline std::vector<SignedWord> enumerate_following(const Pattern& p, const std::vector<std::string>& states) {
  std::vector<SignedWord> out;
  SignedWord cur;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == p.size()) {
      out.push_back(cur);
      return;
    }
    const int e = p[i] == Sign::Pos ? 1 : -1;
    for (const auto& q : states) {
      SignedLetter l{q, e};
      if (i > 0 && cur.letters.back() == l.inverse()) continue;
      cur.letters.push_back(l);
      self(self, i + 1);
      cur.letters.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Number of freely irreducible words following p over k states: k choices
/// for the first letter, then k - 1 after a sign change and k otherwise.
inline std::uint64_t class_size(const Pattern& p, std::uint64_t k) {
  if (p.empty()) return 1;
  std::uint64_t n = k;
  for (std::size_t i = 1; i < p.size(); ++i) n *= (p[i] != p[i - 1]) ? k - 1 : k;
  return n;
}

// ---------------------------------------------------------------------------
// Orbit engine

/// One right-to-left generator: a state of some machine over the common
/// signed alphabet.
struct DualGenerator {
  std::shared_ptr<const Mealy> machine;
  std::uint32_t state;
  std::string label;

  Word apply(const Word& w) const {
    Word out(w.size());
    std::uint32_t s = state;
    for (std::size_t i = w.size(); i-- > 0;) {
      out[i] = machine->output(s, w[i]);
      s = machine->next(s, w[i]);
    }
    return out;
  }
};

/// All states of d in declaration order, optionally followed by their
/// inverses (labelled `s^-1`).
inline std::vector<DualGenerator> generators_of(const DualMachine& d, bool with_inverses = false) {
  std::vector<DualGenerator> out;
  for (std::uint32_t s = 0; s < d.num_states(); ++s) out.push_back({d.machine_ptr(), s, d.states()[s]});
  if (with_inverses) {
    auto inv = std::make_shared<const Mealy>(inverse_mealy(d.machine()));
    for (std::uint32_t s = 0; s < d.num_states(); ++s) out.push_back({inv, s, inv->states()[s]});
  }
  return out;
}

/// A one-state machine permuting the letters of `alphabet`.
inline DualGenerator permutation_generator(const StateAutomorphism& sigma, std::string label) {
  auto t = automorphism_transformation(sigma, label);
  return {t.machine_ptr(), 0, std::move(label)};
}

class OrbitCapExceeded : public Error {
 public:
  explicit OrbitCapExceeded(std::size_t cap)
      : Error("orbit member cap of " + std::to_string(cap) + " exceeded (set AGT_ORBIT_CAP to raise it)"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

/// AGT_ORBIT_CAP if set to a positive integer, otherwise 10^7.
inline std::size_t default_orbit_cap() {
  if (const char* env = std::getenv("AGT_ORBIT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultOrbitCap;
}

struct OrbitOptions {
  std::size_t cap = default_orbit_cap();
};

namespace detail {

/// Breadth-first tree of an orbit: words in discovery order, each with its
/// parent and the generator that reached it. Generators are tried in index
/// order, so every path is the shortlex-least generator sequence.
struct OrbitTree {
  std::vector<Word> words;
  std::vector<std::int64_t> parent;
  std::vector<std::uint32_t> via;
  std::optional<std::size_t> found;  // index of the stop word, if reached

  std::vector<std::uint32_t> path(std::size_t i) const {
    std::vector<std::uint32_t> out;
    for (auto j = static_cast<std::int64_t>(i); parent[j] >= 0; j = parent[j]) out.push_back(via[j]);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

inline unsigned bits_for(std::size_t k) {
  unsigned b = 1;
  while ((std::size_t{1} << b) < k) ++b;
  return b;
}

template <class Key, class Encode>
OrbitTree orbit_bfs_keyed(const std::vector<DualGenerator>& gens, const Word& seed, std::size_t cap,
                          const std::optional<Word>& stop, Encode encode) {
  OrbitTree t;
  std::unordered_map<Key, std::uint32_t, std::conditional_t<std::is_same_v<Key, Word>, VecHash, std::hash<Key>>> index;
  index.emplace(encode(seed), 0);
  t.words.push_back(seed);
  t.parent.push_back(-1);
  t.via.push_back(0);
  if (stop && *stop == seed) {
    t.found = 0;
    return t;
  }
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      Word img = gens[g].apply(t.words[i]);
      auto [it, inserted] = index.emplace(encode(img), static_cast<std::uint32_t>(t.words.size()));
      if (!inserted) continue;
      if (t.words.size() >= cap) throw OrbitCapExceeded(cap);
      const bool hit = stop && *stop == img;
      t.words.push_back(std::move(img));
      t.parent.push_back(static_cast<std::int64_t>(i));
      t.via.push_back(g);
      if (hit) {
        t.found = t.words.size() - 1;
        return t;
      }
    }
  }
  return t;
}

inline void check_generators(const std::vector<DualGenerator>& gens) {
  for (const auto& g : gens) {
    if (!g.machine) throw Error("orbit: generator without a machine");
    if (!(g.machine->alphabet() == gens.front().machine->alphabet()))
      throw Error("orbit: generators act on different alphabets");
    if (g.state >= g.machine->num_states()) throw Error("orbit: generator state out of range");
  }
}

/// Words are hashed as packed integers when |w| * bits fits in 64 bits.
inline OrbitTree orbit_bfs(const std::vector<DualGenerator>& gens, const Word& seed, std::size_t cap,
                           const std::optional<Word>& stop = std::nullopt) {
  if (gens.empty()) {
    OrbitTree t{{seed}, {-1}, {0}, {}};
    if (stop && *stop == seed) t.found = 0;
    return t;
  }
  check_generators(gens);
  detail::check_word(gens.front().machine->alphabet(), seed);
  const unsigned bits = bits_for(gens.front().machine->num_letters());
  if (bits * seed.size() <= 64) {
    return orbit_bfs_keyed<std::uint64_t>(gens, seed, cap, stop, [bits](const Word& w) {
      std::uint64_t key = 0;
      for (auto x : w) key = (key << bits) | x;
      return key;
    });
  }
  return orbit_bfs_keyed<Word>(gens, seed, cap, stop, [](const Word& w) { return w; });
}

/// Sign and inverse index of each token of a signed alphabet.
struct SignedIndex {
  std::vector<Sign> sign;
  std::vector<std::int64_t> inverse;  // -1 when the twin token is absent

  explicit SignedIndex(const Alphabet& a) {
    for (std::uint32_t i = 0; i < a.size(); ++i) {
      sign.push_back(has_inverse_suffix(a[i]) ? Sign::Neg : Sign::Pos);
      auto j = a.find(inverse_token(a[i]));
      inverse.push_back(j ? static_cast<std::int64_t>(*j) : -1);
    }
  }

  Pattern pattern(const Word& w) const {
    Pattern p;
    for (auto x : w) p.push_back(sign[x]);
    return p;
  }

  bool reduced(const Word& w) const {
    for (std::size_t i = 1; i < w.size(); ++i)
      if (inverse[w[i]] == static_cast<std::int64_t>(w[i - 1])) return false;
    return true;
  }
};

inline std::vector<Word> all_words(std::size_t k, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * k);
    for (const auto& w : out) {
      for (std::uint32_t x = 0; x < k; ++x) {
        Word v = w;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::string render_word(const Alphabet& a, const Word& w) { return w.empty() ? "()" : a.format(w, false); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Reports

struct OrbitReport {
  SignedWord seed;
  std::vector<SignedWord> members;                 // sorted by letter index sequence
  std::vector<std::vector<std::string>> witnesses;  // generator labels, applied in order
  std::vector<std::string> generator_set;

  std::size_t size() const noexcept { return members.size(); }

  bool contains(const SignedWord& w) const { return std::find(members.begin(), members.end(), w) != members.end(); }

  std::string to_text() const {
    auto render = [](const SignedWord& w) { return w.empty() ? std::string("()") : format_signed_word(w); };
    std::string out = "orbit seed=\"" + format_signed_word(seed) + "\" size=" + std::to_string(members.size()) + '\n';
    out += "generators";
    for (const auto& g : generator_set) out += ' ' + g;
    out += '\n';
    for (std::size_t i = 0; i < members.size(); ++i) {
      out += render(members[i]) + " <- ";
      if (witnesses[i].empty()) out += "()";
      for (std::size_t j = 0; j < witnesses[i].size(); ++j) out += (j ? " " : "") + witnesses[i][j];
      out += '\n';
    }
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = format_signed_word(seed);
    j["size"] = members.size();
    j["generators"] = generator_set;
    j["members"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < members.size(); ++i)
      j["members"].push_back({{"word", format_signed_word(members[i])}, {"witness", witnesses[i]}});
    return j;
  }
};

/// Selects d's states by label; an empty list means all of them.
inline std::vector<DualGenerator> select_generators(const DualMachine& d, const std::vector<std::string>& labels,
                                                    bool with_inverses = false) {
  auto all = generators_of(d, with_inverses);
  if (labels.empty()) return all;
  std::vector<DualGenerator> out;
  for (const auto& l : labels) {
    auto it = std::find_if(all.begin(), all.end(), [&](const DualGenerator& g) { return g.label == l; });
    if (it == all.end()) throw Error("unknown generator '" + l + "'");
    out.push_back(*it);
  }
  return out;
}

/// Orbit of an index word under arbitrary generators, as a report.
inline OrbitReport orbit(const std::vector<DualGenerator>& gens, const Alphabet& letters, const Word& seed,
                         const OrbitOptions& opts = {}) {
  auto tree = detail::orbit_bfs(gens, seed, opts.cap);
  std::vector<std::size_t> order(tree.words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return tree.words[x] < tree.words[y]; });
  OrbitReport r;
  r.seed = decode_signed(letters, seed);
  for (const auto& g : gens) r.generator_set.push_back(g.label);
  for (auto i : order) {
    r.members.push_back(decode_signed(letters, tree.words[i]));
    std::vector<std::string> wit;
    for (auto g : tree.path(i)) wit.push_back(gens[g].label);
    r.witnesses.push_back(std::move(wit));
  }
  return r;
}

/// Orbit of `seed` under the chosen states of d (all of them when `gens`
/// is empty).
inline OrbitReport orbit(const DualMachine& d, const SignedWord& seed, const std::vector<std::string>& gens = {},
                         const OrbitOptions& opts = {}) {
  return orbit(select_generators(d, gens), d.alphabet(), encode_signed(d.alphabet(), seed), opts);
}

/// Applies the labelled generators of d to w in order.
inline SignedWord replay_witness(const DualMachine& d, const SignedWord& w, const std::vector<std::string>& witness) {
  auto all = generators_of(d, true);
  Word cur = encode_signed(d.alphabet(), w);
  for (const auto& l : witness) {
    auto it = std::find_if(all.begin(), all.end(), [&](const DualGenerator& g) { return g.label == l; });
    if (it == all.end()) throw Error("unknown generator '" + l + "'");
    cur = it->apply(cur);
  }
  return decode_signed(d.alphabet(), cur);
}

struct SameOrbit {
  bool same = false;
  std::vector<std::string> witness;  // generator labels taking w to v
};

/// Shortest generator sequence from w to v, by breadth-first search.
inline std::optional<std::vector<std::uint32_t>> orbit_path(const std::vector<DualGenerator>& gens, const Word& w,
                                                            const Word& v, const OrbitOptions& opts = {}) {
  if (w.size() != v.size()) throw Error("same_orbit: words have different lengths");
  auto tree = detail::orbit_bfs(gens, w, opts.cap, v);
  if (!tree.found) return std::nullopt;
  return tree.path(*tree.found);
}

inline SameOrbit same_orbit(const DualMachine& d, const SignedWord& w, const SignedWord& v,
                            const OrbitOptions& opts = {}) {
  auto gens = generators_of(d);
  auto path = orbit_path(gens, encode_signed(d.alphabet(), w), encode_signed(d.alphabet(), v), opts);
  SameOrbit out;
  if (!path) return out;
  out.same = true;
  for (auto g : *path) out.witness.push_back(gens[g].label);
  return out;
}

// ---------------------------------------------------------------------------
// Checks

/// Exhaustive over all words of length 1..max_len and every state of d:
/// the image has the same pattern, and irreducible words stay irreducible.
inline Report check_pattern_preservation(const DualMachine& d, std::size_t max_len) {
  Report r;
  r.title = "pattern-preservation";
  detail::SignedIndex idx(d.alphabet());
  auto gens = generators_of(d);
  std::size_t words = 0;
  std::string bad_pattern, bad_reduced;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (const auto& w : detail::all_words(d.alphabet().size(), len)) {
      ++words;
      const bool red = idx.reduced(w);
      for (const auto& g : gens) {
        Word img = g.apply(w);
        auto describe = [&] {
          return "\"" + d.alphabet().format(w, false) + "\" under " + g.label + " gives \"" +
                 d.alphabet().format(img, false) + "\"";
        };
        if (bad_pattern.empty() && idx.pattern(img) != idx.pattern(w)) bad_pattern = describe();
        if (bad_reduced.empty() && red && !idx.reduced(img)) bad_reduced = describe();
      }
    }
  }
  const std::string scope = std::to_string(words) + " words up to length " + std::to_string(max_len);
  r.add("patterns preserved", bad_pattern.empty(), bad_pattern.empty() ? scope : bad_pattern);
  r.add("freely irreducible words stay irreducible", bad_reduced.empty(), bad_reduced.empty() ? scope : bad_reduced);
  return r;
}

namespace detail {
/// Orbit label of every word of one length (words indexed as base-k
/// numbers, first letter most significant).
inline std::vector<std::uint32_t> orbit_partition(const std::vector<DualGenerator>& gens, std::size_t k,
                                                  std::size_t len, std::size_t& classes) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= k;
  auto number = [&](const Word& w) {
    std::size_t x = 0;
    for (auto c : w) x = x * k + c;
    return x;
  };
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> label(total, kUnset);
  classes = 0;
  for (std::size_t x = 0; x < total; ++x) {
    if (label[x] != kUnset) continue;
    Word w(len);
    for (std::size_t i = len, y = x; i-- > 0; y /= k) w[i] = static_cast<std::uint32_t>(y % k);
    auto tree = orbit_bfs(gens, w, total + 1);
    for (const auto& m : tree.words) label[number(m)] = static_cast<std::uint32_t>(classes);
    ++classes;
  }
  return label;
}
}  // namespace detail

/// For each length up to max_len: u ~ v exactly when reverse(u) ~ reverse(v),
/// over all words, under the states of D.
inline Report check_reversal_lemma(const FamilySpec& spec, std::size_t max_len) {
  Report r;
  r.title = "reversal " + spec.describe();
  const auto D = machine_D(spec);
  const auto gens = generators_of(D);
  const std::size_t k = D.alphabet().size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t classes = 0;
    auto label = detail::orbit_partition(gens, k, len, classes);
    std::vector<std::int64_t> fwd(classes, -1), back(classes, -1);
    bool ok = true;
    std::string first;
    for (std::size_t x = 0; x < label.size() && ok; ++x) {
      std::size_t rx = 0;
      for (std::size_t i = 0, y = x; i < len; ++i, y /= k) rx = rx * k + y % k;
      const auto a = label[x], b = label[rx];
      if (fwd[a] < 0 && back[b] < 0) {
        fwd[a] = b;
        back[b] = a;
      } else if (fwd[a] != static_cast<std::int64_t>(b) || back[b] != static_cast<std::int64_t>(a)) {
        ok = false;
        first = "word number " + std::to_string(x) + " breaks the correspondence";
      }
    }
    r.add("length " + std::to_string(len), ok,
          ok ? std::to_string(label.size()) + " words, " + std::to_string(classes) + " orbits" : first);
  }
  return r;
}

struct TransitivityResult {
  Pattern pattern;
  SignedWord seed;
  std::size_t orbit_size = 0;
  std::size_t class_size = 0;
  bool transitive = false;
};

/// Orbit of the first freely irreducible word following p against the
/// whole class of such words over `states`.
inline TransitivityResult pattern_transitivity(const DualMachine& d, const std::vector<std::string>& states,
                                               const Pattern& p, const OrbitOptions& opts = {}) {
  TransitivityResult res;
  res.pattern = p;
  auto cls = enumerate_following(p, states);
  res.class_size = cls.size();
  res.seed = cls.front();
  std::vector<Word> expected;
  for (const auto& w : cls) expected.push_back(encode_signed(d.alphabet(), w));
  std::sort(expected.begin(), expected.end());
  auto tree = detail::orbit_bfs(generators_of(d), expected.empty() ? Word{} : encode_signed(d.alphabet(), res.seed),
                                opts.cap);
  res.orbit_size = tree.words.size();
  std::sort(tree.words.begin(), tree.words.end());
  res.transitive = tree.words == expected;
  return res;
}

inline Report check_pattern_transitivity(const DualMachine& d, const std::vector<std::string>& states,
                                         const Pattern& p, const OrbitOptions& opts = {}) {
  auto res = pattern_transitivity(d, states, p, opts);
  Report r;
  r.title = "transitivity";
  r.add("pattern " + (p.empty() ? std::string("()") : format_pattern(p)), res.transitive,
        "orbit " + std::to_string(res.orbit_size) + ", class " + std::to_string(res.class_size));
  return r;
}

inline Report check_pattern_transitivity(const FamilySpec& spec, const Pattern& p, const OrbitOptions& opts = {}) {
  auto r = check_pattern_transitivity(machine_D(spec), spec.state_names(), p, opts);
  r.title = "transitivity " + spec.describe();
  return r;
}

struct Level1Witness {
  SignedWord word;
  bool verified = false;  // freely irreducible, follows p, and moves the letter 0
};

/// Every + becomes a, every - becomes b^-1; a and b are active, so an even
/// length needs the first letter replaced by an inactive state to make the
/// level-1 permutation odd.
inline Level1Witness level1_witness(const FamilySpec& spec, const Pattern& p) {
  if (p.empty()) throw Error("level1_witness: pattern must be non-empty");
  Level1Witness out;
  for (auto s : p) out.word.letters.push_back(s == Sign::Pos ? SignedLetter{"a", 1} : SignedLetter{"b", -1});
  if (p.size() % 2 == 0) {
    const auto names = spec.state_names();
    for (std::size_t i = 0; i < spec.active().size(); ++i) {
      if (!spec.active()[i]) {
        out.word.letters[0].state = names[i + 2];
        break;
      }
    }
  }
  const AutomatonGroup group(family_f(spec));
  const Word zero{group.alphabet().at("0")};
  Word image = zero;
  const Word states = group.encode(out.word);
  for (std::size_t i = states.size(); i-- > 0;) image = act(Transformation(group.pm_ptr(), states[i]), image);
  out.verified = is_freely_reduced(out.word) && pattern_of(out.word) == p && image != zero;
  return out;
}

}  // namespace agt
