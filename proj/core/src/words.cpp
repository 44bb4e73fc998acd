#include "repwitness/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>

#include "repwitness/errors.hpp"

namespace repwitness {

Word Word::generator(std::size_t rank, std::size_t index, std::int64_t exponent) {
  if (index == 0 || index > rank) throw DomainError("Word::generator: index out of range");
  Word w(rank);
  w.append(index, exponent);
  return w;
}

Word Word::from_letters(std::size_t rank, std::span<const Letter> letters) {
  Word w(rank);
  for (const Letter& l : letters) {
    if (l.generator == 0 || l.generator > rank) throw DomainError("Word::from_letters: generator out of range");
    if (l.sign != 1 && l.sign != -1) throw DomainError("Word::from_letters: sign must be +1 or -1");
    w.append(l.generator, l.sign);
  }
  return w;
}

std::uint64_t Word::length() const noexcept {
  std::uint64_t n = 0;
  for (const Run& r : runs_) n += static_cast<std::uint64_t>(r.exponent < 0 ? -r.exponent : r.exponent);
  return n;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  out.reserve(length());
  for (const Run& r : runs_) {
    const int s = r.exponent > 0 ? 1 : -1;
    for (std::int64_t k = 0; k < (r.exponent > 0 ? r.exponent : -r.exponent); ++k) out.push_back({r.generator, s});
  }
  return out;
}

void Word::append(std::size_t index, std::int64_t exponent) {
  if (exponent == 0) return;
  if (!runs_.empty() && runs_.back().generator == index) {
    runs_.back().exponent += exponent;
    if (runs_.back().exponent == 0) runs_.pop_back();
    return;
  }
  runs_.push_back({index, exponent});
}

Word Word::inverse() const {
  Word w(rank_);
  w.runs_.reserve(runs_.size());
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.runs_.push_back({it->generator, -it->exponent});
  return w;
}

Word Word::power(std::int64_t k) const {
  Word base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Word result(rank_);
  while (e) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

Word multiply(const Word& v, const Word& w) {
  if (v.rank() != w.rank()) throw DomainError("multiply: words live in free groups of different rank");
  Word out = v;
  for (const Run& r : w.runs()) out.append(r.generator, r.exponent);
  return out;
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

std::vector<std::string> default_generator_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, std::size_t rank, const std::vector<std::string>* names,
             const ParseOptions& options)
      : text_(text), rank_(rank), names_(names), options_(options) {}

  Word parse() {
    Word w = product();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_factor_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '[' || c == '1' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  void check_length(const Word& w) const {
    if (w.length() > options_.max_letters)
      throw ParseError("word exceeds the limit of " + std::to_string(options_.max_letters) + " letters", pos_);
  }

  Word product() {
    Word w(rank_);
    for (bool first = true;; first = false) {
      skip_space();
      if (!first && pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        if (!at_factor_start()) fail("expected a factor after '*'");
      }
      if (!at_factor_start()) {
        if (first) fail("expected a word");
        break;
      }
      w = multiply(w, factor());
      check_length(w);
    }
    return w;
  }

  Word factor() {
    Word w = atom();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '^') break;
      ++pos_;
      skip_space();
      const std::int64_t k = integer();
      const std::uint64_t mag = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
      if (w.runs().size() == 1) {
        // x^a^k stays a single run; guard the exponent product.
        const std::int64_t e = w.runs().front().exponent;
        if (mag != 0 && static_cast<std::uint64_t>(e < 0 ? -e : e) > options_.max_letters / mag)
          fail("word exceeds the letter limit");
      } else if (mag != 0 && w.length() > options_.max_letters / mag) {
        fail("word exceeds the letter limit");
      }
      w = w.power(k);
    }
    return w;
  }

  Word atom() {
    skip_space();
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word u = product();
      expect(',');
      Word v = product();
      expect(']');
      return commutator(u, v);
    }
    if (c == '1' && !names_) {
      ++pos_;
      return Word(rank_);
    }
    return generator_token();
  }

  Word generator_token() {
    const std::size_t start = pos_;
    if (!names_) {
      if (text_[pos_] != 'x') fail("expected a generator x<k>");
      ++pos_;
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) fail("expected generator index after 'x'");
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, k);
      if (ec != std::errc() || k == 0 || k > rank_) {
        pos_ = start;
        fail("generator index out of range (have " + std::to_string(rank_) + " generators)");
      }
      return Word::generator(rank_, k);
    }
    if (text_[pos_] == '1' && (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return Word(rank_);
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view ident = text_.substr(start, pos_ - start);
    auto it = std::find(names_->begin(), names_->end(), ident);
    if (it == names_->end()) {
      pos_ = start;
      fail("unknown generator '" + std::string(ident) + "'");
    }
    return Word::generator(rank_, static_cast<std::size_t>(it - names_->begin()) + 1);
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const char* first = text_.data() + start;
    if (*first == '+') ++first;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    return value;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  std::size_t rank_;
  const std::vector<std::string>* names_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, std::size_t n, const ParseOptions& options) {
  return WordParser(text, n, nullptr, options).parse();
}

Word parse_word(std::string_view text, const std::vector<std::string>& names, const ParseOptions& options) {
  return WordParser(text, names.size(), &names, options).parse();
}

std::string to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Run& r : w.runs()) {
    if (!first) os << ' ';
    first = false;
    if (r.generator <= names.size()) os << names[r.generator - 1];
    else os << 'x' << r.generator;
    if (r.exponent != 1) os << '^' << r.exponent;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Abelianization and lambda

AbelianVector abelianize(const Word& w) {
  AbelianVector v(w.rank());
  for (const Run& r : w.runs()) v[r.generator - 1] += r.exponent;
  return v;
}

namespace {

bool is_zero(const AbelianVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

ExteriorElement lambda_form(const Word& w) {
  const std::size_t n = w.rank();
  if (!is_zero(abelianize(w))) throw DomainError("lambda_form: word is not in the commutator subgroup");

  // Q(w) = sum_{a<b} s_a s_b e_{i_a} ^ e_{i_b} = sum over runs of exp * (prefix ^ e_g),
  // accumulated as the non-alternated table acc(p, g) and antisymmetrized at the end.
  std::vector<Integer> prefix(n);
  std::vector<Integer> acc(n * n);
  for (const Run& r : w.runs()) {
    const std::size_t g = r.generator - 1;
    for (std::size_t p = 0; p < n; ++p)
      if (p != g && prefix[p] != 0) acc[p * n + g] += prefix[p] * r.exponent;
    prefix[g] += r.exponent;
  }

  ExteriorElement out(2, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      Integer twice = acc[p * n + q] - acc[q * n + p];
      if (twice % 2 != 0) throw InternalError("lambda_form: odd letter-pair sum on a commutator word");
      out.add_term({p, q}, twice / 2);
    }
  return out;
}

std::vector<CommutatorPair> express_as_commutators(const Word& w) {
  if (!is_zero(abelianize(w))) throw DomainError("express_as_commutators: word is not in the commutator subgroup");
  const std::size_t n = w.rank();
  std::vector<CommutatorPair> pairs;
  std::vector<Letter> cur = w.letters();
  // w = x A x^-1 B  ==>  w = [x, A] * (A B); the remainder is shorter by two letters.
  while (!cur.empty()) {
    const Letter x = cur.front();
    auto partner = std::find_if(cur.begin() + 1, cur.end(), [&](const Letter& l) {
      return l.generator == x.generator && l.sign == -x.sign;
    });
    if (partner == cur.end()) throw InternalError("express_as_commutators: no cancelling letter");
    Word a = Word::from_letters(n, std::span<const Letter>(&*(cur.begin() + 1), static_cast<std::size_t>(partner - cur.begin() - 1)));
    Word b = Word::from_letters(n, std::span<const Letter>(cur.data() + (partner - cur.begin()) + 1,
                                                          static_cast<std::size_t>(cur.end() - partner - 1)));
    pairs.push_back({Word::generator(n, x.generator, x.sign), a});
    cur = (a * b).letters();
  }
  return pairs;
}

Word product_of_commutators(const std::vector<CommutatorPair>& pairs, std::size_t rank) {
  Word out(rank);
  for (const auto& p : pairs) out = out * commutator(p.first, p.second);
  return out;
}

ExteriorElement lambda_of_pairs(const std::vector<CommutatorPair>& pairs, std::size_t rank) {
  ExteriorElement out(2, rank);
  for (const auto& p : pairs)
    out += wedge(ExteriorElement::vector(abelianize(p.first)), ExteriorElement::vector(abelianize(p.second)));
  return out;
}

Word substitute(const Word& w, const std::vector<Word>& images) {
  if (images.size() != w.rank())
    throw DomainError("substitute: expected " + std::to_string(w.rank()) + " images, got " +
                      std::to_string(images.size()));
  if (images.empty()) return Word(0);
  const std::size_t n = images.front().rank();
  for (const Word& im : images)
    if (im.rank() != n) throw DomainError("substitute: images live in free groups of different rank");
  Word out(n);
  for (const Run& r : w.runs()) out = out * images[r.generator - 1].power(r.exponent);
  return out;
}

}  // namespace repwitness
