#ifndef WEIGHTIDEAL_RATIONAL_HPP
#define WEIGHTIDEAL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wi {

// Exact arithmetic throughout; no floating point anywhere in the library.
// cpp_rational keeps values canonical (reduced, positive denominator), so
// serialization is canonical by construction.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when an enumeration would exceed its resource cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
inline std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

// Accepts "p" or "p/q" with optional leading '-' on p; q must be positive
// digits. Anything else (including whitespace) is rejected.
inline Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("invalid rational '" + text + "'");
  };
  std::size_t slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "" : text.substr(slash + 1);

  auto digits = [](const std::string& s, std::size_t from) {
    if (s.size() == from) return false;
    for (std::size_t i = from; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!digits(num, num.starts_with('-') ? 1 : 0)) return fail();
  if (slash != std::string::npos && !digits(den, 0)) return fail();

  Integer p(num);
  Integer q = den.empty() ? Integer(1) : Integer(den);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(p, q);
}

// Sign of a - b as -1/0/1; used wherever only the comparison matters.
inline int compare_values(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

// r^e for integer e (negative allowed when r != 0).
inline Rational pow(const Rational& r, long e) {
  if (e < 0) {
    if (r == 0) throw std::invalid_argument("zero base with negative exponent");
    return Rational(1) / pow(r, -e);
  }
  Rational acc(1), base = r;
  for (unsigned long n = static_cast<unsigned long>(e); n; n >>= 1) {
    if (n & 1) acc *= base;
    if (n > 1) base *= base;
  }
  return acc;
}

}  // namespace wi

#endif  // WEIGHTIDEAL_RATIONAL_HPP
