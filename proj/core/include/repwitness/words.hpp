#pragma once

// Free groups F_n: reduced words, parsing and printing, abelianization and the
// commutator linearization lambda: [F_n, F_n] -> Lambda^2 Z^n.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repwitness/zlinalg.hpp"

namespace repwitness {

/// One generator occurrence x_i^{+-1}. Generator indices are 1-based.
struct Letter {
  std::size_t generator;
  int sign;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A maximal block x_i^e (e != 0) inside a reduced word.
struct Run {
  std::size_t generator;
  std::int64_t exponent;

  friend bool operator==(const Run&, const Run&) = default;
};

/// Exponent-sum vector of a word; coordinate p is the signed number of
/// occurrences of generator p+1.
using AbelianVector = IntVector;

/// A freely reduced word over the generators x_1..x_n of F_n, stored as runs.
/// Adjacent runs always have distinct generators, so structural equality is
/// equality in the free group.
class Word {
 public:
  explicit Word(std::size_t rank = 0) : rank_(rank) {}

  static Word generator(std::size_t rank, std::size_t index, std::int64_t exponent = 1);
  static Word from_letters(std::size_t rank, std::span<const Letter> letters);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Run>& runs() const noexcept { return runs_; }
  bool empty() const noexcept { return runs_.empty(); }
  /// Number of letters (sum of |exponent| over runs).
  std::uint64_t length() const noexcept;
  std::vector<Letter> letters() const;

  Word inverse() const;
  Word power(std::int64_t k) const;

  /// Right-multiplies by x_index^exponent, cancelling as needed.
  void append(std::size_t index, std::int64_t exponent);

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::size_t rank_;
  std::vector<Run> runs_;
};

Word multiply(const Word& v, const Word& w);
inline Word operator*(const Word& v, const Word& w) { return multiply(v, w); }

/// [u, v] = u v u^-1 v^-1
Word commutator(const Word& u, const Word& v);

struct ParseOptions {
  /// Reject words whose reduced length would exceed this many letters.
  std::uint64_t max_letters = 1'000'000;
};

/// Default generator names x1..xn.
std::vector<std::string> default_generator_names(std::size_t n);

/// Parses the word grammar with generators x1..xn:
///   word   := factor ( ['*'] factor )*
///   factor := atom ( '^' integer )*
///   atom   := x<k> | '1' | '(' word ')' | '[' word ',' word ']'
/// Throws ParseError on syntax errors and on generators outside 1..n.
Word parse_word(std::string_view text, std::size_t n, const ParseOptions& options = {});

/// Same grammar, with generators spelled by the given (identifier) names.
Word parse_word(std::string_view text, const std::vector<std::string>& names,
                const ParseOptions& options = {});

/// Canonical form "x1^2 x2^-1 ..."; the empty word prints as "1".
std::string to_string(const Word& w, const std::vector<std::string>& names = {});

AbelianVector abelianize(const Word& w);

/// lambda(w) for w in the commutator subgroup: the homomorphism sending every
/// commutator [u, v] to abelianize(u) ^ abelianize(v). Computed as
///   lambda(w) = 1/2 * sum_{a<b} s_a s_b e_{i_a} ^ e_{i_b}
/// over letter positions a < b of w = x_{i_1}^{s_1} ... x_{i_L}^{s_L}.
/// Throws DomainError if abelianize(w) != 0.
ExteriorElement lambda_form(const Word& w);

struct CommutatorPair {
  Word first;
  Word second;

  friend bool operator==(const CommutatorPair&, const CommutatorPair&) = default;
};

/// Writes w as prod_l [u_l, v_l]. The genus is not minimized.
/// Throws DomainError if abelianize(w) != 0.
std::vector<CommutatorPair> express_as_commutators(const Word& w);

/// prod_l [first_l, second_l], reduced.
Word product_of_commutators(const std::vector<CommutatorPair>& pairs, std::size_t rank);

/// sum_l abelianize(first_l) ^ abelianize(second_l)
ExteriorElement lambda_of_pairs(const std::vector<CommutatorPair>& pairs, std::size_t rank);

/// Image of w under the homomorphism F_k -> F_n sending generator i to
/// images[i-1]. Requires images.size() == w.rank() and a common rank n.
Word substitute(const Word& w, const std::vector<Word>& images);

}  // namespace repwitness
