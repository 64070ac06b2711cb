#ifndef WEIGHTIDEAL_IDEAL_REGULAR_HPP
#define WEIGHTIDEAL_IDEAL_REGULAR_HPP

#include <weightideal/rational.hpp>
#include <weightideal/word.hpp>

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Weight-ideal structure for rank-1 arrays. Equal-length weight comparisons
// depend only on the first column, so every operation here takes the first
// column alone. Commutators always belong to the ideal, which is why
// membership and consequence questions reduce to the commutative images of
// the words involved.

namespace wi {

namespace detail {

inline void require_nondegenerate_column(const std::vector<Rational>& col) {
  if (col.empty()) throw std::invalid_argument("first column is empty");
  for (const Rational& x : col)
    if (x <= 0) throw std::invalid_argument("first column must be positive");
  for (std::size_t i = 0; i < col.size(); ++i)
    for (std::size_t j = i + 1; j < col.size(); ++j)
      if (col[i] == col[j])
        throw std::invalid_argument("degenerate first column (rows " +
                                    std::to_string(i + 1) + ", " +
                                    std::to_string(j + 1) + ")");
}

inline Rational column_product(const std::vector<Rational>& col,
                               const ExponentVector& e) {
  Rational prod(1);
  for (auto& [letter, n] : e.counts()) {
    if (letter > static_cast<int>(col.size()))
      throw std::invalid_argument("letter exceeds row count");
    prod *= pow(col[static_cast<std::size_t>(letter - 1)], n);
  }
  return prod;
}

}  // namespace detail

// A difference of equal-length words lies in the ideal exactly when the
// first-column products of the two letter multisets agree.
inline bool member(const std::vector<Rational>& first_column,
                   const BinomialDifference& diff) {
  detail::require_nondegenerate_column(first_column);
  return detail::column_product(first_column, exponent_vector(diff.lhs)) ==
         detail::column_product(first_column, exponent_vector(diff.rhs));
}

// All degree-l letter multisets sharing one first-column product.
struct Fiber {
  int degree = 0;
  Rational weight;
  std::vector<ExponentVector> members;  // sorted componentwise-lex
};

// Groups every degree-l multiset over 1..t by product; fibers are returned
// in ascending weight order and are complete for the degree.
inline std::vector<Fiber> enumerate_fibers(
    const std::vector<Rational>& first_column, int degree,
    std::size_t cap = kDefaultCap) {
  detail::require_nondegenerate_column(first_column);
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  int t = static_cast<int>(first_column.size());
  multiset_count_checked(t, degree, cap);
  std::map<Rational, std::vector<ExponentVector>> groups;
  for_each_multiset(t, degree, [&](const ExponentVector& e) {
    groups[detail::column_product(first_column, e)].push_back(e);
  });
  std::vector<Fiber> fibers;
  fibers.reserve(groups.size());
  for (auto& [w, members] : groups) {
    std::sort(members.begin(), members.end());
    fibers.push_back(Fiber{degree, w, std::move(members)});
  }
  return fibers;
}

// One canonical difference per unordered pair of same-fiber multisets with
// disjoint supports. Canonical word: letters in nonincreasing index order;
// the lexicographically larger word is the lhs. Listed by fiber weight, then
// by member order within the fiber.
inline std::vector<BinomialDifference> enumerate_disjoint(
    const std::vector<Rational>& first_column, int degree,
    std::size_t cap = kDefaultCap) {
  if (degree < 2) throw std::invalid_argument("degree must be >= 2");
  std::vector<BinomialDifference> out;
  for (const Fiber& fiber : enumerate_fibers(first_column, degree, cap))
    for (std::size_t i = 0; i < fiber.members.size(); ++i)
      for (std::size_t j = i + 1; j < fiber.members.size(); ++j) {
        if (!support_disjoint(fiber.members[i], fiber.members[j])) continue;
        Word u = fiber.members[i].canonical_word();
        Word v = fiber.members[j].canonical_word();
        if (u < v) std::swap(u, v);
        out.emplace_back(std::move(u), std::move(v));
      }
  return out;
}

// Generating data for the ideal: the commutators x_i x_j - x_j x_i (i != j)
// are implicit members of every generator set and are never listed.
struct GeneratorSet {
  std::vector<BinomialDifference> disjoint_minimal;
  int max_len_certified = 0;
};

namespace detail {

struct FiberEdge {
  std::size_t gen;   // index into disjoint_minimal
  bool forward;      // replaced gen.lhs letters by gen.rhs letters
  ExponentVector to;
};

// BFS over multisets in one fiber; edges swap a generator's lhs letters for
// its rhs letters (either direction) when the multiplicities allow it.
// Returns the edge chain from `from` to `to`, or absent when disconnected.
inline std::optional<std::vector<FiberEdge>> fiber_path(
    const ExponentVector& from, const ExponentVector& to,
    const GeneratorSet& gens) {
  if (from == to) return std::vector<FiberEdge>{};
  std::map<ExponentVector, std::pair<ExponentVector, FiberEdge>> parent;
  std::deque<ExponentVector> queue{from};
  std::set<ExponentVector> seen{from};
  while (!queue.empty()) {
    ExponentVector e = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < gens.disjoint_minimal.size(); ++g) {
      const BinomialDifference& gen = gens.disjoint_minimal[g];
      ExponentVector gl = exponent_vector(gen.lhs);
      ExponentVector gr = exponent_vector(gen.rhs);
      for (bool forward : {true, false}) {
        const ExponentVector& take = forward ? gl : gr;
        const ExponentVector& put = forward ? gr : gl;
        if (!e.covers(take)) continue;
        ExponentVector next = e.minus(take).plus(put);
        if (!seen.insert(next).second) continue;
        parent.emplace(next, std::make_pair(e, FiberEdge{g, forward, next}));
        if (next == to) {
          std::vector<FiberEdge> chain;
          ExponentVector cur = next;
          while (cur != from) {
            auto& [prev, edge] = parent.at(cur);
            chain.push_back(edge);
            cur = prev;
          }
          std::reverse(chain.begin(), chain.end());
          return chain;
        }
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Whether diff is an algebraic consequence of the commutators plus the
// listed generators. Commutators make word order irrelevant, so this is
// connectivity of the two letter multisets inside their fiber.
inline bool is_consequence(const BinomialDifference& diff,
                           const GeneratorSet& gens,
                           const std::vector<Rational>& first_column) {
  if (!member(first_column, diff))
    throw std::invalid_argument("difference is not a member of the ideal");
  return detail::fiber_path(exponent_vector(diff.lhs),
                            exponent_vector(diff.rhs), gens)
      .has_value();
}

// Builds the minimal disjoint-support generators length by length: a
// degree-l candidate is kept unless it is a consequence of commutators and
// the strictly shorter generators already collected. Same-length candidates
// never exclude each other, so the result does not depend on enumeration
// order within a degree.
inline GeneratorSet minimal_generators(const std::vector<Rational>& first_column,
                                       int max_len,
                                       std::size_t cap = kDefaultCap) {
  if (max_len < 2) throw std::invalid_argument("max_len must be >= 2");
  detail::require_nondegenerate_column(first_column);
  GeneratorSet gens;
  for (int len = 2; len <= max_len; ++len) {
    GeneratorSet shorter = gens;  // snapshot: strictly shorter generators
    for (BinomialDifference& cand : enumerate_disjoint(first_column, len, cap))
      if (!is_consequence(cand, shorter, first_column))
        gens.disjoint_minimal.push_back(std::move(cand));
  }
  gens.max_len_certified = max_len;
  return gens;
}

struct DecompositionTerm {
  int sign;  // +1 or -1
  Word left;
  BinomialDifference generator;  // a commutator or a listed generator
  Word right;
};

// Sum of terms sign * left * (generator.lhs - generator.rhs) * right that
// expands to a target difference in the free algebra.
struct Decomposition {
  std::vector<DecompositionTerm> terms;
};

// Free-algebra expansion of a decomposition: word -> integer coefficient,
// zero coefficients dropped.
inline std::map<Word, long long> expand(const Decomposition& d) {
  std::map<Word, long long> coeffs;
  auto add = [&](const Word& w, long long c) {
    auto it = coeffs.emplace(w, 0).first;
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  };
  for (const DecompositionTerm& term : d.terms) {
    add(term.left.concat(term.generator.lhs).concat(term.right), term.sign);
    add(term.left.concat(term.generator.rhs).concat(term.right), -term.sign);
  }
  return coeffs;
}

namespace detail {

// Rearranges `from` into `to` (equal multisets) by adjacent transpositions,
// appending one commutator term per swap. The appended terms telescope to
// from - to.
inline Word emit_commutator_chain(const Word& from, const Word& to,
                                  std::vector<DecompositionTerm>& terms) {
  std::vector<int> cur = from.letters();
  const std::vector<int>& goal = to.letters();
  for (std::size_t p = 0; p < goal.size(); ++p) {
    std::size_t q = p;
    while (cur[q] != goal[p]) ++q;  // exists: equal multisets
    for (std::size_t s = q; s > p; --s) {
      int a = cur[s - 1], b = cur[s];
      // swapping distinct adjacent letters; cur = prefix a b suffix
      Word prefix(std::vector<int>(cur.begin(), cur.begin() + (s - 1)));
      Word suffix(std::vector<int>(cur.begin() + (s + 1), cur.end()));
      terms.push_back(DecompositionTerm{
          1, std::move(prefix),
          BinomialDifference(Word({a, b}), Word({b, a})), std::move(suffix)});
      std::swap(cur[s - 1], cur[s]);
    }
  }
  return Word(cur);
}

}  // namespace detail

// Explicit decomposition of a member difference over commutators plus
// gens.disjoint_minimal, following the fiber path between the two letter
// multisets: each generator application is prepared by commutator moves that
// bring one copy of the matched side to the front. The result is verified by
// free-algebra expansion before returning.
inline Decomposition decompose(const std::vector<Rational>& first_column,
                               const BinomialDifference& diff,
                               const GeneratorSet& gens) {
  if (!member(first_column, diff))
    throw std::invalid_argument("difference is not a member of the ideal");
  auto chain = detail::fiber_path(exponent_vector(diff.lhs),
                                  exponent_vector(diff.rhs), gens);
  if (!chain)
    throw std::invalid_argument(
        "difference is not a consequence of the given generators");

  Decomposition d;
  Word cur = diff.lhs;
  for (const detail::FiberEdge& edge : *chain) {
    const BinomialDifference& gen = gens.disjoint_minimal[edge.gen];
    const Word& take = edge.forward ? gen.lhs : gen.rhs;
    const Word& put = edge.forward ? gen.rhs : gen.lhs;
    // commutator-sort cur into take * rest, rest canonical
    ExponentVector rest = exponent_vector(cur).minus(exponent_vector(take));
    Word target = take.concat(rest.canonical_word());
    cur = detail::emit_commutator_chain(cur, target, d.terms);
    // cur = take * rest_word; swap the front factor for the other side
    Word rest_word = cur.subword(take.size(), cur.size() - take.size());
    d.terms.push_back(DecompositionTerm{edge.forward ? 1 : -1, Word(),
                                        gens.disjoint_minimal[edge.gen],
                                        rest_word});
    cur = put.concat(rest_word);
  }
  cur = detail::emit_commutator_chain(cur, diff.rhs, d.terms);

  std::map<Word, long long> coeffs = expand(d);
  std::map<Word, long long> expected{{diff.lhs, 1}, {diff.rhs, -1}};
  if (coeffs != expected)
    throw std::logic_error("decomposition failed expansion verification");
  return d;
}

// gcd(a_i, a_j) = 1 for all pairs; only defined for positive integer
// columns. When true, membership collapses to equality of letter multisets.
inline bool is_pairwise_coprime(const std::vector<Rational>& first_column) {
  if (first_column.empty())
    throw std::invalid_argument("first column is empty");
  std::vector<Integer> ints;
  ints.reserve(first_column.size());
  for (const Rational& x : first_column) {
    if (!is_integer(x) || x <= 0)
      throw std::invalid_argument("coprimality needs positive integer entries");
    ints.push_back(numerator(x));
  }
  for (std::size_t i = 0; i < ints.size(); ++i)
    for (std::size_t j = i + 1; j < ints.size(); ++j)
      if (gcd(ints[i], ints[j]) != 1) return false;
  return true;
}

}  // namespace wi

#endif  // WEIGHTIDEAL_IDEAL_REGULAR_HPP
