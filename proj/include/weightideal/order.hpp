#ifndef WEIGHTIDEAL_ORDER_HPP
#define WEIGHTIDEAL_ORDER_HPP

#include <weightideal/array_spec.hpp>
#include <weightideal/rational.hpp>
#include <weightideal/word.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wi {

// EQ between distinct words means their difference lies in the weight ideal.
enum class OrderOutcome { LT, EQ, GT };

inline const char* to_string(OrderOutcome o) {
  switch (o) {
    case OrderOutcome::LT: return "LT";
    case OrderOutcome::EQ: return "EQ";
    default: return "GT";
  }
}

inline OrderOutcome outcome_from_sign(int s) {
  return s < 0 ? OrderOutcome::LT : s > 0 ? OrderOutcome::GT : OrderOutcome::EQ;
}

inline OrderOutcome flipped(OrderOutcome o) {
  switch (o) {
    case OrderOutcome::LT: return OrderOutcome::GT;
    case OrderOutcome::GT: return OrderOutcome::LT;
    default: return OrderOutcome::EQ;
  }
}

// Length-dominant order: longer words are greater; equal lengths compare by
// weight at shift 0.
inline OrderOutcome compare(const ArraySpec& A, const Word& w1, const Word& w2) {
  if (w1.empty() || w2.empty())
    throw std::invalid_argument("cannot order the empty word");
  if (w1.size() != w2.size())
    return w1.size() > w2.size() ? OrderOutcome::GT : OrderOutcome::LT;
  return outcome_from_sign(compare_weights(weight(A, w1), weight(A, w2)));
}

enum class Side { Left, Right };

namespace detail {

// rank of each letter under the given order (smallest first); empty order
// means natural index order.
inline int letter_rank(int letter, const std::vector<int>& order) {
  if (order.empty()) return letter;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == letter) return static_cast<int>(i);
  throw std::invalid_argument("letter " + std::to_string(letter) +
                              " missing from letter order");
}

}  // namespace detail

// Length-lexicographic comparison; ties at equal length are broken by the
// first differing letter scanning from the chosen side, under the given
// letter order (listed smallest to largest; empty = natural).
inline OrderOutcome compare_lenlex(const Word& w1, const Word& w2, Side side,
                                   const std::vector<int>& letter_order = {}) {
  for (std::size_t i = 0; i < letter_order.size(); ++i)
    for (std::size_t j = i + 1; j < letter_order.size(); ++j)
      if (letter_order[i] == letter_order[j])
        throw std::invalid_argument("letter order has duplicates");
  if (w1.size() != w2.size())
    return w1.size() > w2.size() ? OrderOutcome::GT : OrderOutcome::LT;
  std::size_t n = w1.size();
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t i = side == Side::Left ? s : n - 1 - s;
    if (w1[i] == w2[i]) continue;
    int r1 = detail::letter_rank(w1[i], letter_order);
    int r2 = detail::letter_rank(w2[i], letter_order);
    return r1 > r2 ? OrderOutcome::GT : OrderOutcome::LT;
  }
  return OrderOutcome::EQ;
}

struct LenLexClassification {
  enum class Verdict { LeftLenLex, RightLenLex, Inconclusive };

  Verdict verdict = Verdict::Inconclusive;
  Rational alpha, beta;        // min/max nonzero log-first-column differences
  bool slope_below_one = false;
  bool slope_above_one = false;
  bool inequality_holds = false;  // the bound applicable to the slope's side
  std::vector<int> letter_order;  // letters by ascending log-first-column entry
  int confirmed_length = 0;       // strata on which the comparator agreed
  std::optional<std::pair<Word, Word>> disagreement;
};

inline const char* to_string(LenLexClassification::Verdict v) {
  switch (v) {
    case LenLexClassification::Verdict::LeftLenLex: return "left-lenlex";
    case LenLexClassification::Verdict::RightLenLex: return "right-lenlex";
    default: return "inconclusive";
  }
}

// Tests whether the array's order is a length-lexicographic order. The
// analytic test compares alpha against the geometric bound for the slope's
// side; the verdict is only emitted when an exhaustive sweep up to
// confirm_len agrees with the analytic answer and finds no EQ between
// distinct words. Otherwise Inconclusive, with the first disagreeing pair
// kept as a diagnostic.
inline LenLexClassification classify_lenlex(const ArraySpec& A, int confirm_len,
                                            std::size_t cap = kDefaultCap) {
  const LogLinearArray& a = A.loglinear();
  if (is_degenerate(A))
    throw std::invalid_argument("classification needs a nondegenerate array");
  int t = A.rows();
  if (t < 2)
    throw std::invalid_argument("classification needs at least two rows");
  if (confirm_len < 1) throw std::invalid_argument("confirm_len must be >= 1");

  LenLexClassification out;
  const std::vector<Rational>& c = a.log_first_column;
  bool first = true;
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) {
      Rational diff = c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(j)];
      if (diff < 0) diff = -diff;
      if (first) {
        out.alpha = out.beta = diff;
        first = false;
      } else {
        out.alpha = std::min(out.alpha, diff);
        out.beta = std::max(out.beta, diff);
      }
    }

  const Rational& d = a.slope;
  out.slope_below_one = d < 1;
  out.slope_above_one = d > 1;
  Side side = out.slope_above_one ? Side::Right : Side::Left;
  out.inequality_holds = out.slope_below_one
                             ? out.alpha > d * out.beta / (1 - d)
                             : out.alpha > out.beta / (d - 1);

  for (int i = 1; i <= t; ++i) out.letter_order.push_back(i);
  std::sort(out.letter_order.begin(), out.letter_order.end(), [&](int x, int y) {
    return c[static_cast<std::size_t>(x - 1)] < c[static_cast<std::size_t>(y - 1)];
  });

  // sweep: the comparator must reproduce compare exactly, which also rules
  // out EQ since lenlex never equates distinct words
  bool agreed = true;
  for (int len = 1; len <= confirm_len && agreed; ++len) {
    std::vector<Word> words = all_words(t, len, cap);
    std::vector<Rational> w(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
      w[i] = weight(A, words[i]).value;
    for (std::size_t i = 0; i < words.size() && agreed; ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        OrderOutcome by_weight = outcome_from_sign(compare_values(w[i], w[j]));
        OrderOutcome by_lenlex =
            compare_lenlex(words[i], words[j], side, out.letter_order);
        if (by_weight != by_lenlex) {
          agreed = false;
          out.disagreement = std::make_pair(words[i], words[j]);
          break;
        }
      }
    if (agreed) out.confirmed_length = len;
  }

  if (agreed && out.inequality_holds)
    out.verdict = out.slope_below_one
                      ? LenLexClassification::Verdict::LeftLenLex
                      : LenLexClassification::Verdict::RightLenLex;
  return out;
}

struct EquivalenceCounterexample {
  Word lhs, rhs;
  OrderOutcome first, second;
};

struct EquivalenceReport {
  int max_len = 0;
  bool agree = false;
  std::optional<EquivalenceCounterexample> counterexample;
};

// Compares the two arrays' orders on every pair of equal-length words up to
// max_len. The reported counterexample is the serialization-lex least pair
// of the first length with a disagreement.
inline EquivalenceReport orders_equivalent_bounded(const ArraySpec& A,
                                                   const ArraySpec& B,
                                                   int max_len,
                                                   std::size_t cap = kDefaultCap) {
  if (A.rows() != B.rows())
    throw std::invalid_argument("arrays have different row counts");
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  EquivalenceReport report{max_len, true, std::nullopt};
  int t = A.rows();
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> words = all_words(t, len, cap);
    std::sort(words.begin(), words.end(),
              [](const Word& x, const Word& y) { return x.str() < y.str(); });
    std::vector<Weight> wa, wb;
    wa.reserve(words.size());
    wb.reserve(words.size());
    for (const Word& w : words) {
      wa.push_back(weight(A, w));
      wb.push_back(weight(B, w));
    }
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        OrderOutcome oa = outcome_from_sign(compare_weights(wa[i], wa[j]));
        OrderOutcome ob = outcome_from_sign(compare_weights(wb[i], wb[j]));
        if (oa == ob) continue;
        report.agree = false;
        report.counterexample =
            EquivalenceCounterexample{words[i], words[j], oa, ob};
        return report;
      }
  }
  return report;
}

}  // namespace wi

#endif  // WEIGHTIDEAL_ORDER_HPP
