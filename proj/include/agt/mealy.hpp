#pragma once

// Mealy automata over finite alphabets: the table representation, the
// plain-text file format, and the elementary constructions (inverse,
// disjoint union with the inverse, output twists, wreath coordinates, DOT).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace agt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text parsers; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A word as indices into some token list (letters or states).
using Word = std::vector<std::uint32_t>;

inline constexpr std::string_view kInverseSuffix = "^-1";

inline bool is_valid_token(std::string_view tok) {
  if (tok.empty()) return false;
  return std::none_of(tok.begin(), tok.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isspace(c) || std::iscntrl(c);
  });
}

inline bool has_inverse_suffix(std::string_view tok) {
  return tok.size() > kInverseSuffix.size() && tok.ends_with(kInverseSuffix);
}

/// `q` -> `q^-1` and `q^-1` -> `q`.
inline std::string inverse_token(std::string_view tok) {
  if (has_inverse_suffix(tok)) return std::string(tok.substr(0, tok.size() - kInverseSuffix.size()));
  return std::string(tok) + std::string(kInverseSuffix);
}

/// An ordered list of distinct tokens. Used for input alphabets and, with
/// kind "state", for state sets.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> tokens, std::string_view kind = "letter")
      : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw Error("empty " + std::string(kind) + " list");
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (!is_valid_token(tokens_[i])) throw Error("invalid " + std::string(kind) + " token '" + tokens_[i] + "'");
      if (!index_.emplace(tokens_[i], static_cast<std::uint32_t>(i)).second)
        throw Error("duplicate " + std::string(kind) + " '" + tokens_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& operator[](std::uint32_t i) const { return tokens_.at(i); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }

  std::optional<std::uint32_t> find(std::string_view tok) const {
    auto it = index_.find(std::string(tok));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view tok) const { return find(tok).has_value(); }

  std::uint32_t at(std::string_view tok) const {
    if (auto i = find(tok)) return *i;
    throw Error("unknown token '" + std::string(tok) + "'");
  }

  Word encode(std::span<const std::string> toks) const {
    Word w;
    w.reserve(toks.size());
    for (const auto& t : toks) w.push_back(at(t));
    return w;
  }

  std::vector<std::string> decode(const Word& w) const {
    std::vector<std::string> out;
    out.reserve(w.size());
    for (auto i : w) out.push_back(tokens_.at(i));
    return out;
  }

  /// Splits "010" into single letters when every letter is one character;
  /// otherwise splits on whitespace.
  Word encode_text(std::string_view text) const {
    std::vector<std::string> toks;
    bool single_chars = std::all_of(tokens_.begin(), tokens_.end(), [](const auto& t) { return t.size() == 1; });
    bool has_space = std::any_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (single_chars && !has_space) {
      for (char c : text) toks.emplace_back(1, c);
    } else {
      std::istringstream in{std::string(text)};
      for (std::string t; in >> t;) toks.push_back(t);
    }
    return encode(toks);
  }

  std::string format(const Word& w, bool compact) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i && !compact) out += ' ';
      out += tokens_.at(w[i]);
    }
    return out;
  }

  bool single_char_letters() const {
    return std::all_of(tokens_.begin(), tokens_.end(), [](const auto& t) { return t.size() == 1; });
  }

  bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// The automaton (Q, A, delta, lambda) with total tables in row-major order
/// (state major, letter minor). Immutable after construction.
class Mealy {
 public:
  Mealy(Alphabet states, Alphabet alphabet, std::vector<std::uint32_t> delta, std::vector<std::uint32_t> lambda)
      : states_(std::move(states)), alphabet_(std::move(alphabet)), delta_(std::move(delta)), lambda_(std::move(lambda)) {
    const std::size_t cells = states_.size() * alphabet_.size();
    if (delta_.size() != cells || lambda_.size() != cells)
      throw Error("transition tables must have exactly |Q|*|A| = " + std::to_string(cells) + " entries");
    for (std::size_t i = 0; i < cells; ++i) {
      if (delta_[i] >= states_.size()) throw Error("transition target out of range");
      if (lambda_[i] >= alphabet_.size()) throw Error("output letter out of range");
    }
  }

  const Alphabet& states() const noexcept { return states_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_letters() const noexcept { return alphabet_.size(); }

  std::uint32_t next(std::uint32_t q, std::uint32_t a) const { return delta_[q * alphabet_.size() + a]; }
  std::uint32_t output(std::uint32_t q, std::uint32_t a) const { return lambda_[q * alphabet_.size() + a]; }

  std::span<const std::uint32_t> output_row(std::uint32_t q) const {
    return {lambda_.data() + q * alphabet_.size(), alphabet_.size()};
  }
  std::span<const std::uint32_t> next_row(std::uint32_t q) const {
    return {delta_.data() + q * alphabet_.size(), alphabet_.size()};
  }

  const std::vector<std::uint32_t>& delta_table() const noexcept { return delta_; }
  const std::vector<std::uint32_t>& lambda_table() const noexcept { return lambda_; }

  bool operator==(const Mealy& other) const {
    return states_ == other.states_ && alphabet_ == other.alphabet_ && delta_ == other.delta_ &&
           lambda_ == other.lambda_;
  }

 private:
  Alphabet states_;
  Alphabet alphabet_;
  std::vector<std::uint32_t> delta_;
  std::vector<std::uint32_t> lambda_;
};

/// A bijection of a token set (the letters of an alphabet or the states of
/// an automaton). lift_signed() gives the involution-preserving extension to
/// tokens together with their `^-1` twins; apply() is the letterwise
/// extension to words.
class StateAutomorphism {
 public:
  StateAutomorphism(Alphabet domain, std::vector<std::uint32_t> image)
      : domain_(std::move(domain)), image_(std::move(image)) {
    if (image_.size() != domain_.size()) throw Error("automorphism size does not match its domain");
    std::vector<bool> hit(image_.size(), false);
    for (auto x : image_) {
      if (x >= image_.size() || hit[x]) throw Error("automorphism is not a bijection");
      hit[x] = true;
    }
  }

  static StateAutomorphism identity(const Alphabet& domain) {
    std::vector<std::uint32_t> img(domain.size());
    for (std::uint32_t i = 0; i < img.size(); ++i) img[i] = i;
    return {domain, std::move(img)};
  }

  /// Cycle notation over tokens, e.g. {{"a","c","d1"}} for (a c d1).
  static StateAutomorphism from_cycles(const Alphabet& domain, const std::vector<std::vector<std::string>>& cycles) {
    auto id = identity(domain);
    std::vector<std::uint32_t> img = id.image_;
    std::vector<bool> used(domain.size(), false);
    for (const auto& cyc : cycles) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        auto from = domain.at(cyc[i]);
        if (used[from]) throw Error("token '" + cyc[i] + "' appears twice in cycle notation");
        used[from] = true;
        img[from] = domain.at(cyc[(i + 1) % cyc.size()]);
      }
    }
    return {domain, std::move(img)};
  }

  const Alphabet& domain() const noexcept { return domain_; }
  const std::vector<std::uint32_t>& image() const noexcept { return image_; }
  std::uint32_t operator()(std::uint32_t x) const { return image_.at(x); }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  StateAutomorphism inverse() const {
    std::vector<std::uint32_t> inv(image_.size());
    for (std::uint32_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return {domain_, std::move(inv)};
  }

  /// Right-action product: apply *this first, then `next`.
  StateAutomorphism then(const StateAutomorphism& next) const {
    if (!(next.domain_ == domain_)) throw Error("automorphism domains differ");
    std::vector<std::uint32_t> img(image_.size());
    for (std::uint32_t i = 0; i < img.size(); ++i) img[i] = next.image_[image_[i]];
    return {domain_, std::move(img)};
  }

  /// sigma-bar on the signed domain [x..., x^-1...]: x^e -> sigma(x)^e.
  StateAutomorphism lift_signed() const {
    std::vector<std::string> toks = domain_.tokens();
    for (const auto& t : domain_.tokens()) toks.push_back(inverse_token(t));
    const auto n = static_cast<std::uint32_t>(domain_.size());
    std::vector<std::uint32_t> img(2 * n);
    for (std::uint32_t i = 0; i < n; ++i) {
      img[i] = image_[i];
      img[n + i] = n + image_[i];
    }
    return {Alphabet(std::move(toks)), std::move(img)};
  }

  Word apply(const Word& w) const {
    Word out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = image_.at(w[i]);
    return out;
  }

  std::string to_cycle_string() const {
    const bool compact = domain_.single_char_letters();
    std::string out;
    std::vector<bool> seen(image_.size(), false);
    for (std::uint32_t i = 0; i < image_.size(); ++i) {
      if (seen[i] || image_[i] == i) continue;
      out += '(';
      std::uint32_t j = i;
      bool first = true;
      do {
        seen[j] = true;
        if (!first && !compact) out += ' ';
        out += domain_[j];
        first = false;
        j = image_[j];
      } while (j != i);
      out += ')';
    }
    return out;
  }

  bool operator==(const StateAutomorphism& other) const {
    return domain_ == other.domain_ && image_ == other.image_;
  }

 private:
  Alphabet domain_;
  std::vector<std::uint32_t> image_;
};

/// Per-state output permutation and successor tuple (indexed by alphabet
/// order): q = lambda_q(q_{a_1}, ..., q_{a_k}).
struct WreathCoords {
  struct Entry {
    std::string state;
    std::vector<std::uint32_t> perm;  // letter index -> output letter index
    std::vector<std::string> successors;
    bool operator==(const Entry&) const = default;
  };
  Alphabet alphabet;
  std::vector<Entry> entries;

  bool operator==(const WreathCoords& other) const {
    return alphabet == other.alphabet && entries == other.entries;
  }
};

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline bool is_blank_or_comment(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

struct ParsedBody {
  bool rtl = false;
  std::optional<Mealy> machine;
};

inline ParsedBody parse_body(std::string_view text) {
  ParsedBody result;
  std::optional<std::vector<std::string>> letters, states;
  std::size_t states_line = 0;
  std::vector<std::uint32_t> delta, lambda;
  std::vector<bool> defined;
  std::optional<Alphabet> alpha, qs;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  bool saw_content = false;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (is_blank_or_comment(line)) {
      if (end == text.size()) break;
      continue;
    }
    auto toks = split_ws(line);
    const std::string& kw = toks[0];
    if (kw == "scan") {
      if (saw_content) throw ParseError(lineno, "'scan' header must come first");
      if (toks.size() != 2 || toks[1] != "rtl") throw ParseError(lineno, "malformed scan header, expected 'scan rtl'");
      result.rtl = true;
      saw_content = true;
    } else if (kw == "alphabet") {
      if (letters) throw ParseError(lineno, "duplicate alphabet line");
      if (states) throw ParseError(lineno, "alphabet line must precede states line");
      letters.emplace(toks.begin() + 1, toks.end());
      try {
        alpha.emplace(*letters, "letter");
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
      saw_content = true;
    } else if (kw == "states") {
      if (!letters) throw ParseError(lineno, "states line before alphabet line");
      if (states) throw ParseError(lineno, "duplicate states line");
      states.emplace(toks.begin() + 1, toks.end());
      try {
        qs.emplace(*states, "state");
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
      states_line = lineno;
      const std::size_t cells = qs->size() * alpha->size();
      delta.assign(cells, 0);
      lambda.assign(cells, 0);
      defined.assign(cells, false);
      saw_content = true;
    } else if (kw == "trans") {
      if (!qs) throw ParseError(lineno, "transition before states line");
      if (toks.size() != 5) throw ParseError(lineno, "malformed transition, expected 'trans <q> <a> <q'> <b>'");
      auto q = qs->find(toks[1]);
      if (!q) throw ParseError(lineno, "undeclared state '" + toks[1] + "'");
      auto a = alpha->find(toks[2]);
      if (!a) throw ParseError(lineno, "undeclared letter '" + toks[2] + "'");
      auto q2 = qs->find(toks[3]);
      if (!q2) throw ParseError(lineno, "undeclared state '" + toks[3] + "'");
      auto b = alpha->find(toks[4]);
      if (!b) throw ParseError(lineno, "undeclared letter '" + toks[4] + "'");
      const std::size_t cell = *q * alpha->size() + *a;
      if (defined[cell]) throw ParseError(lineno, "duplicate transition for (" + toks[1] + ", " + toks[2] + ")");
      defined[cell] = true;
      delta[cell] = *q2;
      lambda[cell] = *b;
    } else {
      throw ParseError(lineno, "malformed line, unknown keyword '" + kw + "'");
    }
    if (end == text.size()) break;
  }
  if (!alpha) throw ParseError(lineno, "missing alphabet line");
  if (!qs) throw ParseError(lineno, "missing states line");
  for (std::size_t cell = 0; cell < defined.size(); ++cell) {
    if (!defined[cell]) {
      const auto q = static_cast<std::uint32_t>(cell / alpha->size());
      const auto a = static_cast<std::uint32_t>(cell % alpha->size());
      throw ParseError(states_line, "missing transition for (" + (*qs)[q] + ", " + (*alpha)[a] + ")");
    }
  }
  result.machine.emplace(std::move(*qs), std::move(*alpha), std::move(delta), std::move(lambda));
  return result;
}

}  // namespace detail

/// Parses the automaton file format. Rejects right-to-left (`scan rtl`) files.
inline Mealy parse_mealy(std::string_view text) {
  auto body = detail::parse_body(text);
  if (body.rtl) throw ParseError(1, "expected an ordinary automaton but found a 'scan rtl' dual machine");
  return std::move(*body.machine);
}

/// Canonical text: no comments, single spaces, LF endings, trailing newline,
/// transitions in declaration order.
inline std::string serialize_mealy(const Mealy& m) {
  std::string out = "alphabet";
  for (const auto& a : m.alphabet().tokens()) out += ' ' + a;
  out += "\nstates";
  for (const auto& q : m.states().tokens()) out += ' ' + q;
  out += '\n';
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    for (std::uint32_t a = 0; a < m.num_letters(); ++a) {
      out += "trans " + m.states()[q] + ' ' + m.alphabet()[a] + ' ' + m.states()[m.next(q, a)] + ' ' +
             m.alphabet()[m.output(q, a)] + '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary constructions

inline bool is_invertible(const Mealy& m) {
  std::vector<bool> hit(m.num_letters());
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    std::fill(hit.begin(), hit.end(), false);
    for (auto b : m.output_row(q)) {
      if (hit[b]) return false;
      hit[b] = true;
    }
  }
  return true;
}

inline void require_invertible(const Mealy& m, std::string_view op) {
  if (!is_invertible(m)) throw Error(std::string(op) + ": automaton is not invertible");
}

/// Swaps the two sides of every edge label; state q becomes q^-1.
inline Mealy inverse_mealy(const Mealy& m) {
  require_invertible(m, "inverse");
  std::vector<std::string> names;
  names.reserve(m.num_states());
  for (const auto& q : m.states().tokens()) names.push_back(inverse_token(q));
  const std::size_t k = m.num_letters();
  std::vector<std::uint32_t> delta(m.num_states() * k), lambda(m.num_states() * k);
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    for (std::uint32_t a = 0; a < k; ++a) {
      const auto b = m.output(q, a);
      delta[q * k + b] = m.next(q, a);
      lambda[q * k + b] = a;
    }
  }
  return Mealy(Alphabet(std::move(names), "state"), m.alphabet(), std::move(delta), std::move(lambda));
}

/// Disjoint union of m and its inverse. States are ordered Q then Q^-1, so
/// state i and state i + |Q| are mutually inverse.
inline Mealy pm_union(const Mealy& m) {
  const Mealy inv = inverse_mealy(m);
  std::vector<std::string> names = m.states().tokens();
  names.insert(names.end(), inv.states().tokens().begin(), inv.states().tokens().end());
  const auto n = static_cast<std::uint32_t>(m.num_states());
  std::vector<std::uint32_t> delta = m.delta_table();
  std::vector<std::uint32_t> lambda = m.lambda_table();
  for (auto d : inv.delta_table()) delta.push_back(d + n);
  lambda.insert(lambda.end(), inv.lambda_table().begin(), inv.lambda_table().end());
  try {
    return Mealy(Alphabet(std::move(names), "state"), m.alphabet(), std::move(delta), std::move(lambda));
  } catch (const Error& e) {
    throw Error(std::string("pm_union: inverse state names collide with existing states (") + e.what() + ")");
  }
}

/// sigma[m] = (Q, A, delta, sigma . lambda).
inline Mealy twist_outputs(const StateAutomorphism& sigma, const Mealy& m) {
  if (!(sigma.domain() == m.alphabet())) throw Error("twist_outputs: permutation is not a bijection of the automaton's alphabet");
  std::vector<std::uint32_t> lambda = m.lambda_table();
  for (auto& b : lambda) b = sigma(b);
  return Mealy(m.states(), m.alphabet(), m.delta_table(), std::move(lambda));
}

inline WreathCoords wreath_coords(const Mealy& m) {
  if (!is_invertible(m)) throw Error("wreath_coords: non-permutational outputs");
  WreathCoords w{m.alphabet(), {}};
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    WreathCoords::Entry e;
    e.state = m.states()[q];
    auto row = m.output_row(q);
    e.perm.assign(row.begin(), row.end());
    for (std::uint32_t a = 0; a < m.num_letters(); ++a) e.successors.push_back(m.states()[m.next(q, a)]);
    w.entries.push_back(std::move(e));
  }
  return w;
}

inline Mealy from_wreath(const WreathCoords& w) {
  std::vector<std::string> names;
  for (const auto& e : w.entries) names.push_back(e.state);
  Alphabet states(std::move(names), "state");
  const std::size_t k = w.alphabet.size();
  std::vector<std::uint32_t> delta, lambda;
  for (const auto& e : w.entries) {
    if (e.perm.size() != k || e.successors.size() != k)
      throw Error("wreath entry for '" + e.state + "' does not match the alphabet size");
    StateAutomorphism check(w.alphabet, e.perm);
    (void)check;
    for (std::size_t a = 0; a < k; ++a) {
      delta.push_back(states.at(e.successors[a]));
      lambda.push_back(e.perm[a]);
    }
  }
  return Mealy(std::move(states), w.alphabet, std::move(delta), std::move(lambda));
}

/// One line per state in the usual display style, e.g. `a=(01)(c,b)`.
inline std::string format_wreath(const WreathCoords& w) {
  std::string out;
  for (const auto& e : w.entries) {
    out += e.state + '=' + StateAutomorphism(w.alphabet, e.perm).to_cycle_string() + '(';
    for (std::size_t i = 0; i < e.successors.size(); ++i) {
      if (i) out += ',';
      out += e.successors[i];
    }
    out += ")\n";
  }
  return out;
}

namespace detail {
inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}
}  // namespace detail

/// Moore diagram as a DOT digraph; nodes, then one edge per (q, a), all in
/// declaration order.
inline std::string to_dot(const Mealy& m) {
  std::string out = "digraph mealy {\n";
  for (const auto& q : m.states().tokens()) out += "  " + detail::dot_quote(q) + ";\n";
  for (std::uint32_t q = 0; q < m.num_states(); ++q) {
    for (std::uint32_t a = 0; a < m.num_letters(); ++a) {
      out += "  " + detail::dot_quote(m.states()[q]) + " -> " + detail::dot_quote(m.states()[m.next(q, a)]) +
             " [label=" + detail::dot_quote(m.alphabet()[a] + '|' + m.alphabet()[m.output(q, a)]) + "];\n";
    }
  }
  return out + "}\n";
}

/// A state bijection f with m2 = m1 relabelled by f, if one exists. Both
/// machines must share the alphabet.
inline std::optional<std::vector<std::uint32_t>> find_isomorphism(const Mealy& m1, const Mealy& m2) {
  if (!(m1.alphabet() == m2.alphabet()) || m1.num_states() != m2.num_states()) return std::nullopt;
  const auto n = static_cast<std::uint32_t>(m1.num_states());
  const auto k = static_cast<std::uint32_t>(m1.num_letters());
  constexpr std::uint32_t kUnset = UINT32_MAX;

  // Tries to extend `map` by q1 -> q2, following transitions; returns false
  // on conflict (map is then left partially extended; callers copy).
  auto extend = [&](std::vector<std::uint32_t>& map, std::vector<std::uint32_t>& rev, std::uint32_t q1,
                    std::uint32_t q2) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{q1, q2}};
    while (!stack.empty()) {
      auto [x, y] = stack.back();
      stack.pop_back();
      if (map[x] != kUnset || rev[y] != kUnset) {
        if (map[x] != y || rev[y] != x) return false;
        continue;
      }
      map[x] = y;
      rev[y] = x;
      for (std::uint32_t a = 0; a < k; ++a) {
        if (m1.output(x, a) != m2.output(y, a)) return false;
        stack.emplace_back(m1.next(x, a), m2.next(y, a));
      }
    }
    return true;
  };

  std::function<bool(std::vector<std::uint32_t>&, std::vector<std::uint32_t>&)> search =
      [&](std::vector<std::uint32_t>& map, std::vector<std::uint32_t>& rev) -> bool {
    std::uint32_t q = 0;
    while (q < n && map[q] != kUnset) ++q;
    if (q == n) return true;
    for (std::uint32_t cand = 0; cand < n; ++cand) {
      if (rev[cand] != kUnset) continue;
      auto map2 = map;
      auto rev2 = rev;
      if (extend(map2, rev2, q, cand) && search(map2, rev2)) {
        map = std::move(map2);
        rev = std::move(rev2);
        return true;
      }
    }
    return false;
  };

  std::vector<std::uint32_t> map(n, kUnset), rev(n, kUnset);
  if (!search(map, rev)) return std::nullopt;
  return map;
}

inline bool isomorphic(const Mealy& m1, const Mealy& m2) { return find_isomorphism(m1, m2).has_value(); }

}  // namespace agt
