#ifndef WEIGHTIDEAL_ARRAY_SPEC_HPP
#define WEIGHTIDEAL_ARRAY_SPEC_HPP

#include <weightideal/rational.hpp>
#include <weightideal/word.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wi {

// Thrown by parse_array_spec on malformed documents; the message carries the
// offending line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require_positive(const std::vector<Rational>& xs, const char* what) {
  if (xs.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  for (const Rational& x : xs)
    if (x <= 0)
      throw std::invalid_argument(std::string(what) + " entries must be positive");
}
}  // namespace detail

// Rank-1 array: entry(i, j) = column_scalar(j) * first_column[i]. The scalar
// sequence is an explicit prefix (d_0 = 1) continued by a geometric tail, so
// every column is a scalar multiple of the first. Equal-length comparisons
// depend only on the first column because the scalars cancel.
struct RegularArray {
  std::vector<Rational> first_column;
  std::vector<Rational> scalar_prefix;
  Rational scalar_tail_ratio;

  RegularArray(std::vector<Rational> first, Rational tail_ratio,
               std::vector<Rational> prefix = {Rational(1)})
      : first_column(std::move(first)),
        scalar_prefix(std::move(prefix)),
        scalar_tail_ratio(std::move(tail_ratio)) {
    detail::require_positive(first_column, "first_column");
    detail::require_positive(scalar_prefix, "scalar_prefix");
    if (scalar_prefix.front() != 1)
      throw std::invalid_argument("scalar_prefix must start with 1");
    if (scalar_tail_ratio <= 0)
      throw std::invalid_argument("scalar_tail_ratio must be positive");
  }

  Rational column_scalar(long j) const {
    long p = static_cast<long>(scalar_prefix.size());
    if (j < p) return scalar_prefix[static_cast<std::size_t>(j)];
    return scalar_prefix.back() * pow(scalar_tail_ratio, j - p + 1);
  }
};

// Array whose entrywise logarithm is linear: log-entry(i, j) = d^j * c_i with
// slope d != 1. Only the exponents are ever stored; the base is immaterial
// for comparisons, so none is chosen.
struct LogLinearArray {
  std::vector<Rational> log_first_column;
  Rational slope;

  LogLinearArray(std::vector<Rational> log_first, Rational d)
      : log_first_column(std::move(log_first)), slope(std::move(d)) {
    detail::require_positive(log_first_column, "log_first_column");
    if (slope <= 0) throw std::invalid_argument("slope must be positive");
    if (slope == 1) throw std::invalid_argument("slope 1 is excluded");
  }
};

// Arbitrary column prefix continued by a geometric tail on the last column.
// Exists to build counterexamples the other two families cannot express.
struct ExplicitArray {
  std::vector<std::vector<Rational>> columns;
  Rational tail_ratio;

  ExplicitArray(std::vector<std::vector<Rational>> cols, Rational ratio)
      : columns(std::move(cols)), tail_ratio(std::move(ratio)) {
    if (columns.empty()) throw std::invalid_argument("columns is empty");
    for (const auto& col : columns) {
      detail::require_positive(col, "columns");
      if (col.size() != columns.front().size())
        throw std::invalid_argument("columns must have equal row counts");
    }
    if (tail_ratio <= 0)
      throw std::invalid_argument("tail_ratio must be positive");
  }

  Rational entry(int row, long j) const {
    long p = static_cast<long>(columns.size());
    std::size_t i = static_cast<std::size_t>(row - 1);
    if (j < p) return columns[static_cast<std::size_t>(j)][i];
    return columns.back()[i] * pow(tail_ratio, j - p + 1);
  }
};

enum class Family { Regular, LogLinear, Explicit };

// Finite description of a t-row array with infinitely many columns, indexed
// from 0. Rows are 1-based like letters.
class ArraySpec {
 public:
  explicit ArraySpec(RegularArray a) : v_(std::move(a)) {}
  explicit ArraySpec(LogLinearArray a) : v_(std::move(a)) {}
  explicit ArraySpec(ExplicitArray a) : v_(std::move(a)) {}

  Family family() const { return static_cast<Family>(v_.index()); }

  int rows() const {
    switch (family()) {
      case Family::Regular:
        return static_cast<int>(regular().first_column.size());
      case Family::LogLinear:
        return static_cast<int>(loglinear().log_first_column.size());
      default:
        return static_cast<int>(explicit_array().columns.front().size());
    }
  }

  const RegularArray& regular() const { return expect<RegularArray>("regular"); }
  const LogLinearArray& loglinear() const {
    return expect<LogLinearArray>("loglinear");
  }
  const ExplicitArray& explicit_array() const {
    return expect<ExplicitArray>("explicit");
  }

  // First-column entry of a row (the log entry for loglinear arrays). Rows
  // with equal values here are exactly the degenerate pairs.
  Rational first_column_value(int row) const {
    if (row < 1 || row > rows()) throw std::invalid_argument("row out of range");
    std::size_t i = static_cast<std::size_t>(row - 1);
    switch (family()) {
      case Family::Regular:
        return regular().first_column[i];
      case Family::LogLinear:
        return loglinear().log_first_column[i];
      default:
        return explicit_array().columns.front()[i];
    }
  }

  static ArraySpec parse(const std::string& text);
  std::string document() const;

 private:
  template <class T>
  const T& expect(const char* name) const {
    const T* p = std::get_if<T>(&v_);
    if (!p)
      throw std::invalid_argument(std::string("array is not of family ") + name);
    return *p;
  }

  std::variant<RegularArray, LogLinearArray, ExplicitArray> v_;
};

// A word's weight. Regular/explicit arrays multiply entries; loglinear
// arrays add log entries, so only the exponent is carried. Comparing across
// kinds is meaningless and rejected.
struct Weight {
  enum class Kind { Multiplicative, Exponential };
  Kind kind;
  Rational value;
};

inline const char* weight_label(Weight::Kind k) {
  return k == Weight::Kind::Multiplicative ? "weight" : "log-weight";
}

inline int compare_weights(const Weight& a, const Weight& b) {
  if (a.kind != b.kind)
    throw std::invalid_argument("weights of different kinds are incomparable");
  return compare_values(a.value, b.value);
}

// Weight of w read from column k onward: the product (or exponent sum) of
// entries a_{u_j, j+k} over positions j.
inline Weight weight(const ArraySpec& A, const Word& w, int shift = 0) {
  if (w.empty()) throw std::invalid_argument("weight of the empty word");
  if (shift < 0) throw std::invalid_argument("negative shift");
  if (w.max_letter() > A.rows())
    throw std::invalid_argument("letter exceeds row count");
  switch (A.family()) {
    case Family::Regular: {
      const RegularArray& a = A.regular();
      Rational prod(1);
      for (std::size_t j = 0; j < w.size(); ++j)
        prod *= a.first_column[static_cast<std::size_t>(w[j] - 1)] *
                a.column_scalar(static_cast<long>(j) + shift);
      return {Weight::Kind::Multiplicative, prod};
    }
    case Family::LogLinear: {
      const LogLinearArray& a = A.loglinear();
      Rational sum(0), scale = pow(a.slope, shift);
      for (std::size_t j = 0; j < w.size(); ++j) {
        sum += scale * a.log_first_column[static_cast<std::size_t>(w[j] - 1)];
        scale *= a.slope;
      }
      return {Weight::Kind::Exponential, sum};
    }
    default: {
      const ExplicitArray& a = A.explicit_array();
      Rational prod(1);
      for (std::size_t j = 0; j < w.size(); ++j)
        prod *= a.entry(w[j], static_cast<long>(j) + shift);
      return {Weight::Kind::Multiplicative, prod};
    }
  }
}

// First pair of rows (i, j), i < j, with equal first-column entries.
inline std::optional<std::pair<int, int>> is_degenerate(const ArraySpec& A) {
  int t = A.rows();
  for (int i = 1; i <= t; ++i)
    for (int j = i + 1; j <= t; ++j)
      if (A.first_column_value(i) == A.first_column_value(j))
        return std::make_pair(i, j);
  return std::nullopt;
}

// Deletes every row whose first-column entry already occurred in an earlier
// row. Returns the reduced spec and the old-row -> new-row map (1-based);
// deleted rows map to the surviving row with the same entry.
inline std::pair<ArraySpec, std::vector<int>> reduce_degenerate(
    const ArraySpec& A) {
  int t = A.rows();
  std::vector<int> keep;           // old indices of surviving rows
  std::vector<int> mapping(static_cast<std::size_t>(t), 0);
  for (int i = 1; i <= t; ++i) {
    bool dup = false;
    for (std::size_t s = 0; s < keep.size() && !dup; ++s)
      if (A.first_column_value(keep[s]) == A.first_column_value(i)) {
        mapping[static_cast<std::size_t>(i - 1)] = static_cast<int>(s) + 1;
        dup = true;
      }
    if (!dup) {
      keep.push_back(i);
      mapping[static_cast<std::size_t>(i - 1)] = static_cast<int>(keep.size());
    }
  }

  auto pick = [&](const std::vector<Rational>& xs) {
    std::vector<Rational> out;
    out.reserve(keep.size());
    for (int i : keep) out.push_back(xs[static_cast<std::size_t>(i - 1)]);
    return out;
  };

  switch (A.family()) {
    case Family::Regular: {
      const RegularArray& a = A.regular();
      return {ArraySpec(RegularArray(pick(a.first_column), a.scalar_tail_ratio,
                                     a.scalar_prefix)),
              mapping};
    }
    case Family::LogLinear: {
      const LogLinearArray& a = A.loglinear();
      return {ArraySpec(LogLinearArray(pick(a.log_first_column), a.slope)),
              mapping};
    }
    default: {
      const ExplicitArray& a = A.explicit_array();
      std::vector<std::vector<Rational>> cols;
      cols.reserve(a.columns.size());
      for (const auto& col : a.columns) cols.push_back(pick(col));
      return {ArraySpec(ExplicitArray(std::move(cols), a.tail_ratio)), mapping};
    }
  }
}

struct AdmissibilityCounterexample {
  Word lhs, rhs;  // oriented so that lhs is the sigma_k-greater word
  int shift;      // the k whose sign differs from k+1
  Weight lhs_at_shift, rhs_at_shift, lhs_at_next, rhs_at_next;
};

struct AdmissibilityReport {
  int max_len = 0, max_shift = 0;
  bool passed = false;
  std::optional<AdmissibilityCounterexample> counterexample;
};

// Checks that the sign of the weight comparison of every equal-length pair
// is stable from each shift k < max_shift to k+1, exhaustively for lengths
// <= max_len. Returns the first violation in enumeration order (length, then
// index-lex pairs, then shift).
inline AdmissibilityReport check_admissible_bounded(const ArraySpec& A,
                                                    int max_len, int max_shift,
                                                    std::size_t cap = kDefaultCap) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (max_shift < 0) throw std::invalid_argument("max_shift must be >= 0");
  AdmissibilityReport report{max_len, max_shift, true, std::nullopt};
  int t = A.rows();
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> words = all_words(t, len, cap);
    // weights[k][idx]; one evaluation per word and shift
    std::vector<std::vector<Weight>> weights(
        static_cast<std::size_t>(max_shift) + 1);
    for (int k = 0; k <= max_shift; ++k) {
      weights[static_cast<std::size_t>(k)].reserve(words.size());
      for (const Word& w : words)
        weights[static_cast<std::size_t>(k)].push_back(weight(A, w, k));
    }
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j)
        for (int k = 0; k < max_shift; ++k) {
          const auto& wk = weights[static_cast<std::size_t>(k)];
          const auto& wk1 = weights[static_cast<std::size_t>(k) + 1];
          int sk = compare_weights(wk[i], wk[j]);
          int sk1 = compare_weights(wk1[i], wk1[j]);
          if (sk == sk1) continue;
          // orient: sigma_k-greater first, or sigma_{k+1}-greater on a tie
          bool swap = sk < 0 || (sk == 0 && sk1 < 0);
          std::size_t a = swap ? j : i, b = swap ? i : j;
          report.passed = false;
          report.counterexample = AdmissibilityCounterexample{
              words[a], words[b], k, wk[a], wk[b], wk1[a], wk1[b]};
          return report;
        }
  }
  return report;
}

// ---- array-spec documents ----------------------------------------------
//
// Line-oriented `key: value` text. Keys by family:
//   regular:   first_column, scalar_prefix (optional), scalar_tail_ratio
//   loglinear: log_first_column, slope
//   explicit:  columns (separated by `;`), tail_ratio
// Lists are space-separated rationals (`p/q` or integer). Blank lines and
// full-line `#` comments are skipped. Unknown keys are rejected.

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<Rational> parse_rational_list(const std::string& s) {
  std::istringstream in(s);
  std::vector<Rational> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_rational(tok));
  return out;
}

}  // namespace detail

inline ArraySpec ArraySpec::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::string, std::string>> pairs;  // key, value
  std::vector<int> lines;                                  // matching line numbers
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = detail::trim(s.substr(0, colon));
    std::string value = detail::trim(s.substr(colon + 1));
    for (const auto& [k, v] : pairs)
      if (k == key)
        throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" +
                         key + "'");
    pairs.emplace_back(key, value);
    lines.push_back(lineno);
  }

  auto fail_at = [&](std::size_t idx, const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(lines[idx]) + ": " + msg);
  };

  static const char* known[] = {"family",        "first_column",
                                "scalar_prefix", "scalar_tail_ratio",
                                "log_first_column", "slope",
                                "columns",       "tail_ratio"};
  std::string family;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool ok = false;
    for (const char* k : known) ok = ok || pairs[i].first == k;
    if (!ok) fail_at(i, "unknown key '" + pairs[i].first + "'");
    if (pairs[i].first == "family") family = pairs[i].second;
  }
  if (family.empty()) throw ParseError("missing key 'family'");

  auto allowed = [&](std::initializer_list<const char*> keys) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].first == "family") continue;
      bool ok = false;
      for (const char* k : keys) ok = ok || pairs[i].first == k;
      if (!ok)
        fail_at(i, "key '" + pairs[i].first + "' is not valid for family '" +
                       family + "'");
    }
  };
  auto lookup = [&](const std::string& key) -> std::optional<std::string> {
    for (const auto& [k, v] : pairs)
      if (k == key) return v;
    return std::nullopt;
  };
  auto required = [&](const std::string& key) -> std::string {
    auto v = lookup(key);
    if (!v) throw ParseError("missing key '" + key + "'");
    return *v;
  };

  try {
    if (family == "regular") {
      allowed({"first_column", "scalar_prefix", "scalar_tail_ratio"});
      std::vector<Rational> first =
          detail::parse_rational_list(required("first_column"));
      std::vector<Rational> prefix = {Rational(1)};
      if (auto p = lookup("scalar_prefix"))
        prefix = detail::parse_rational_list(*p);
      Rational ratio = parse_rational(required("scalar_tail_ratio"));
      return ArraySpec(RegularArray(std::move(first), std::move(ratio),
                                    std::move(prefix)));
    }
    if (family == "loglinear") {
      allowed({"log_first_column", "slope"});
      std::vector<Rational> first =
          detail::parse_rational_list(required("log_first_column"));
      Rational d = parse_rational(required("slope"));
      return ArraySpec(LogLinearArray(std::move(first), std::move(d)));
    }
    if (family == "explicit") {
      allowed({"columns", "tail_ratio"});
      std::string all = required("columns");
      std::vector<std::vector<Rational>> cols;
      std::size_t pos = 0;
      while (pos <= all.size()) {
        std::size_t semi = all.find(';', pos);
        std::string piece = semi == std::string::npos
                                ? all.substr(pos)
                                : all.substr(pos, semi - pos);
        cols.push_back(detail::parse_rational_list(piece));
        if (semi == std::string::npos) break;
        pos = semi + 1;
      }
      Rational ratio = parse_rational(required("tail_ratio"));
      return ArraySpec(ExplicitArray(std::move(cols), std::move(ratio)));
    }
  } catch (const std::invalid_argument& e) {
    // invariant violations keep their own message; no line attribution
    throw ParseError(e.what());
  }
  throw ParseError("unknown family '" + family + "'");
}

inline std::string ArraySpec::document() const {
  auto list = [](const std::vector<Rational>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ' ';
      out += to_string(xs[i]);
    }
    return out;
  };
  std::string out;
  switch (family()) {
    case Family::Regular: {
      const RegularArray& a = regular();
      out = "family: regular\nfirst_column: " + list(a.first_column) + "\n";
      if (a.scalar_prefix.size() != 1 || a.scalar_prefix.front() != 1)
        out += "scalar_prefix: " + list(a.scalar_prefix) + "\n";
      out += "scalar_tail_ratio: " + to_string(a.scalar_tail_ratio) + "\n";
      return out;
    }
    case Family::LogLinear: {
      const LogLinearArray& a = loglinear();
      return "family: loglinear\nlog_first_column: " + list(a.log_first_column) +
             "\nslope: " + to_string(a.slope) + "\n";
    }
    default: {
      const ExplicitArray& a = explicit_array();
      out = "family: explicit\ncolumns: ";
      for (std::size_t c = 0; c < a.columns.size(); ++c) {
        if (c) out += "; ";
        out += list(a.columns[c]);
      }
      out += "\ntail_ratio: " + to_string(a.tail_ratio) + "\n";
      return out;
    }
  }
}

}  // namespace wi

#endif  // WEIGHTIDEAL_ARRAY_SPEC_HPP
