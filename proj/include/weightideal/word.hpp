#ifndef WEIGHTIDEAL_WORD_HPP
#define WEIGHTIDEAL_WORD_HPP

#include <weightideal/rational.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wi {

// A word over the free monoid on x_1, ..., x_t, stored as 1-based variable
// indices. The empty word is the monoid identity; operations that need a
// variable count take it from context, so a Word carries no alphabet size.
class Word {
 public:
  Word() = default;

  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int c : letters_)
      if (c < 1) throw std::invalid_argument("letter indices are 1-based");
  }

  // Whitespace-separated indices, e.g. "3 2 3 2". Blank input is the empty
  // word.
  static Word parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> letters;
    std::string tok;
    while (in >> tok) {
      for (char ch : tok)
        if (ch < '0' || ch > '9')
          throw std::invalid_argument("invalid letter '" + tok + "'");
      try {
        letters.push_back(std::stoi(tok));
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("letter out of range '" + tok + "'");
      }
      if (letters.back() < 1)
        throw std::invalid_argument("letter indices are 1-based");
    }
    return Word(std::move(letters));
  }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }

  int max_letter() const {
    int m = 0;
    for (int c : letters_)
      if (c > m) m = c;
    return m;
  }

  Word concat(const Word& rhs) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word(std::move(out));
  }

  Word subword(std::size_t pos, std::size_t len) const {
    if (pos + len > size()) throw std::invalid_argument("subword out of range");
    return Word(std::vector<int>(letters_.begin() + pos,
                                 letters_.begin() + pos + len));
  }

  // Copy with the factor at [pos, pos+len) replaced by repl.
  Word with_factor(std::size_t pos, std::size_t len, const Word& repl) const {
    if (pos + len > size()) throw std::invalid_argument("factor out of range");
    std::vector<int> out(letters_.begin(), letters_.begin() + pos);
    out.insert(out.end(), repl.letters_.begin(), repl.letters_.end());
    out.insert(out.end(), letters_.begin() + pos + len, letters_.end());
    return Word(std::move(out));
  }

  // Serialization: space-separated indices; the empty word serializes to "".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(letters_[i]);
    }
    return out;
  }

  std::string pretty() const {
    if (letters_.empty()) return "1";
    std::string out;
    for (int c : letters_) out += "x" + std::to_string(c);
    return out;
  }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<int> letters_;
};

inline std::set<int> support(const Word& w) {
  return {w.letters().begin(), w.letters().end()};
}

inline int frequency(int letter, const Word& w) {
  int n = 0;
  for (int c : w.letters())
    if (c == letter) ++n;
  return n;
}

// True when u embeds in w as a (not necessarily contiguous) subsequence.
inline bool is_scattered_subword(const Word& u, const Word& w) {
  std::size_t i = 0;
  for (int c : w.letters()) {
    if (i == u.size()) break;
    if (c == u[i]) ++i;
  }
  return i == u.size();
}

// All contiguous factors of the given length, with 0-based start positions.
inline std::vector<std::pair<std::size_t, Word>> factors(const Word& w,
                                                         std::size_t len) {
  std::vector<std::pair<std::size_t, Word>> out;
  if (len == 0 || len > w.size()) return out;
  for (std::size_t pos = 0; pos + len <= w.size(); ++pos)
    out.emplace_back(pos, w.subword(pos, len));
  return out;
}

// Letter multiset of a word; the commutative image. Counts are strictly
// positive, so equal maps mean equal multisets.
class ExponentVector {
 public:
  ExponentVector() = default;

  explicit ExponentVector(std::map<int, int> counts) : counts_(std::move(counts)) {
    for (auto& [letter, n] : counts_) {
      if (letter < 1) throw std::invalid_argument("letter indices are 1-based");
      if (n <= 0) throw std::invalid_argument("counts must be positive");
    }
  }

  static ExponentVector of(const Word& w) {
    ExponentVector e;
    for (int c : w.letters()) ++e.counts_[c];
    return e;
  }

  const std::map<int, int>& counts() const { return counts_; }

  int degree() const {
    int d = 0;
    for (auto& [letter, n] : counts_) d += n;
    return d;
  }

  int count(int letter) const {
    auto it = counts_.find(letter);
    return it == counts_.end() ? 0 : it->second;
  }

  bool covers(const ExponentVector& other) const {
    for (auto& [letter, n] : other.counts_)
      if (count(letter) < n) return false;
    return true;
  }

  ExponentVector plus(const ExponentVector& other) const {
    ExponentVector out = *this;
    for (auto& [letter, n] : other.counts_) out.counts_[letter] += n;
    return out;
  }

  ExponentVector minus(const ExponentVector& other) const {
    if (!covers(other)) throw std::invalid_argument("subtraction underflow");
    ExponentVector out = *this;
    for (auto& [letter, n] : other.counts_) {
      auto it = out.counts_.find(letter);
      it->second -= n;
      if (it->second == 0) out.counts_.erase(it);
    }
    return out;
  }

  // Representative word with letters in nonincreasing index order.
  Word canonical_word() const {
    std::vector<int> letters;
    for (auto it = counts_.rbegin(); it != counts_.rend(); ++it)
      letters.insert(letters.end(), it->second, it->first);
    return Word(std::move(letters));
  }

  auto operator<=>(const ExponentVector&) const = default;
  bool operator==(const ExponentVector&) const = default;

 private:
  std::map<int, int> counts_;
};

inline ExponentVector exponent_vector(const Word& w) {
  return ExponentVector::of(w);
}

inline bool support_disjoint(const ExponentVector& a, const ExponentVector& b) {
  for (auto& [letter, n] : a.counts())
    if (b.count(letter) > 0) return false;
  return true;
}

// Formal difference lhs - rhs of two distinct words of equal nonzero length.
struct BinomialDifference {
  Word lhs, rhs;

  BinomialDifference(Word l, Word r) : lhs(std::move(l)), rhs(std::move(r)) {
    if (lhs.size() != rhs.size())
      throw std::invalid_argument("difference needs equal lengths");
    if (lhs.empty()) throw std::invalid_argument("difference needs nonzero length");
    if (lhs == rhs) throw std::invalid_argument("difference needs distinct words");
  }

  std::string pretty() const { return lhs.pretty() + " - " + rhs.pretty(); }

  auto operator<=>(const BinomialDifference&) const = default;
  bool operator==(const BinomialDifference&) const = default;
};

inline constexpr std::size_t kDefaultCap = 1000000;

// t^length with a cap guard; enumerations refuse to start when the stratum
// would not fit.
inline std::size_t stratum_size_checked(int t, int length, std::size_t cap) {
  if (t < 1) throw std::invalid_argument("need at least one variable");
  if (length < 0) throw std::invalid_argument("negative length");
  std::size_t n = 1;
  for (int i = 0; i < length; ++i) {
    if (n > cap / static_cast<std::size_t>(t))
      throw CapExceeded("stratum of length " + std::to_string(length) +
                        " over " + std::to_string(t) +
                        " variables exceeds cap " + std::to_string(cap));
    n *= static_cast<std::size_t>(t);
  }
  if (n > cap)
    throw CapExceeded("stratum of length " + std::to_string(length) +
                      " exceeds cap " + std::to_string(cap));
  return n;
}

// Visits every word of the given length in index-lexicographic order.
template <class Fn>
void for_each_word(int t, int length, Fn&& fn) {
  if (t < 1) throw std::invalid_argument("need at least one variable");
  if (length < 0) throw std::invalid_argument("negative length");
  std::vector<int> letters(static_cast<std::size_t>(length), 1);
  for (;;) {
    fn(Word(letters));
    int i = length - 1;
    while (i >= 0 && letters[i] == t) letters[i--] = 1;
    if (i < 0) return;
    ++letters[i];
  }
}

inline std::vector<Word> all_words(int t, int length,
                                   std::size_t cap = kDefaultCap) {
  std::vector<Word> out;
  out.reserve(stratum_size_checked(t, length, cap));
  for_each_word(t, length, [&](const Word& w) { out.push_back(w); });
  return out;
}

// Number of degree-d letter multisets over t variables, C(t+d-1, d), with the
// same cap guard as word strata.
inline std::size_t multiset_count_checked(int t, int degree, std::size_t cap) {
  if (t < 1) throw std::invalid_argument("need at least one variable");
  if (degree < 0) throw std::invalid_argument("negative degree");
  Integer n = 1;
  for (int i = 1; i <= degree; ++i) {
    n *= t - 1 + i;
    n /= i;
    if (n > cap)
      throw CapExceeded("degree " + std::to_string(degree) + " over " +
                        std::to_string(t) + " variables exceeds cap " +
                        std::to_string(cap));
  }
  return static_cast<std::size_t>(n);
}

// Visits every letter multiset of the given degree as a nondecreasing tuple,
// in lexicographic order of tuples.
template <class Fn>
void for_each_multiset(int t, int degree, Fn&& fn) {
  if (t < 1) throw std::invalid_argument("need at least one variable");
  if (degree < 0) throw std::invalid_argument("negative degree");
  std::vector<int> tuple(static_cast<std::size_t>(degree), 1);
  for (;;) {
    ExponentVector e;
    {
      std::map<int, int> counts;
      for (int c : tuple) ++counts[c];
      e = ExponentVector(std::move(counts));
    }
    fn(e);
    int i = degree - 1;
    while (i >= 0 && tuple[i] == t) --i;
    if (i < 0) return;
    int v = tuple[i] + 1;
    for (int j = i; j < degree; ++j) tuple[j] = v;
  }
}

}  // namespace wi

#endif  // WEIGHTIDEAL_WORD_HPP
