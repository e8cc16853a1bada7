#pragma once

// Signed words over the states of an automaton, i.e. elements of (Q^±)*.
//
// Convention: a word is written q_n ... q_2 q_1 and denotes the composite
// A_{q_n} ... A_{q_1}. The RIGHTMOST letter is applied FIRST; the leftmost
// letter is written first but applied last.

#include <compare>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "agt/mealy.hpp"

namespace agt {

struct SignedLetter {
  std::string state;
  int exponent = 1;  // +1 or -1

  /// The token naming this letter in Q^± (`q` or `q^-1`).
  std::string token() const { return exponent > 0 ? state : state + std::string(kInverseSuffix); }
  SignedLetter inverse() const { return {state, -exponent}; }

  auto operator<=>(const SignedLetter&) const = default;
};

struct SignedWord {
  std::vector<SignedLetter> letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  const SignedLetter& operator[](std::size_t i) const { return letters[i]; }

  auto operator<=>(const SignedWord&) const = default;
};

inline SignedLetter parse_signed_letter(std::string_view tok) {
  if (has_inverse_suffix(tok)) return {std::string(tok.substr(0, tok.size() - kInverseSuffix.size())), -1};
  if (!is_valid_token(tok)) throw Error("invalid state token '" + std::string(tok) + "'");
  return {std::string(tok), 1};
}

/// Parses `a b^-1 c`. An empty or all-blank string is the empty word.
inline SignedWord parse_signed_word(std::string_view text) {
  SignedWord w;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) w.letters.push_back(parse_signed_letter(tok));
  return w;
}

inline std::string format_signed_word(const SignedWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].token();
  }
  return out;
}

/// Group inverse: reversed order, flipped exponents.
inline SignedWord inverse_word(const SignedWord& w) {
  SignedWord out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(it->inverse());
  return out;
}

inline SignedWord concat(const SignedWord& left, const SignedWord& right) {
  SignedWord out = left;
  out.letters.insert(out.letters.end(), right.letters.begin(), right.letters.end());
  return out;
}

/// Letters as indices into a token list of Q^± (e.g. the states of
/// pm_union(m), or the alphabet of its dual).
inline Word encode_signed(const Alphabet& signed_tokens, const SignedWord& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w.letters) {
    auto i = signed_tokens.find(l.token());
    if (!i) throw Error("unknown state token '" + l.token() + "'");
    out.push_back(*i);
  }
  return out;
}

inline SignedWord decode_signed(const Alphabet& signed_tokens, const Word& w) {
  SignedWord out;
  for (auto i : w) out.letters.push_back(parse_signed_letter(signed_tokens[i]));
  return out;
}

}  // namespace agt
