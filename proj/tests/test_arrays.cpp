#include <weightideal/array_spec.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

using namespace wi;

namespace {

struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  int range(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

Word random_word(Lcg& rng, int t, int max_len) {
  int len = rng.range(1, max_len);
  std::vector<int> letters;
  for (int i = 0; i < len; ++i) letters.push_back(rng.range(1, t));
  return Word(letters);
}

ArraySpec paper_regular() {
  return ArraySpec(RegularArray({2, 3, 4, 6}, 2));
}

ArraySpec paper_loglinear() {
  return ArraySpec(LogLinearArray({2, 3, 4, 6}, 2));
}

}  // namespace

TEST_CASE("rational parsing and rendering") {
  REQUIRE(parse_rational("3/6") == Rational(1, 2));
  REQUIRE(to_string(parse_rational("3/6")) == "1/2");
  REQUIRE(to_string(parse_rational("-8/4")) == "-2");
  REQUIRE(parse_rational("0") == 0);
  REQUIRE_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational("2/-3"), std::invalid_argument);
  REQUIRE(compare_values(Rational(1, 3), Rational(1, 2)) == -1);
  REQUIRE(compare_values(Rational(2), Rational(2)) == 0);
  REQUIRE(pow(Rational(2), 10) == 1024);
  REQUIRE(pow(Rational(2), -2) == Rational(1, 4));
  REQUIRE(pow(Rational(5), 0) == 1);
  REQUIRE(is_integer(Rational(-4)));
  REQUIRE(!is_integer(Rational(1, 2)));
}

TEST_CASE("family constructors validate") {
  REQUIRE_THROWS_AS(RegularArray({}, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(RegularArray({2, -3}, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(RegularArray({2, 3}, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(RegularArray({2, 3}, 2, {Rational(2)}), std::invalid_argument);
  REQUIRE_NOTHROW(RegularArray({2, 3}, 2, {Rational(1), Rational(3)}));

  REQUIRE_THROWS_AS(LogLinearArray({2, 3}, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(LogLinearArray({2, 3}, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(LogLinearArray({2, 3}, -2), std::invalid_argument);
  REQUIRE_NOTHROW(LogLinearArray({2, 3}, Rational(1, 3)));

  REQUIRE_THROWS_AS(ExplicitArray({}, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(ExplicitArray({{1, 2}, {2}}, 2), std::invalid_argument);
  REQUIRE_NOTHROW(ExplicitArray({{1, 2}, {2, 1}}, 2));
}

TEST_CASE("regular weights multiply the scaled first column") {
  ArraySpec A = paper_regular();
  REQUIRE(weight(A, Word::parse("3 2 3 2")).value == 9216);
  REQUIRE(weight(A, Word::parse("4 1 4 1")).value == 9216);
  REQUIRE(weight(A, Word::parse("1")).value == 2);
  REQUIRE(weight(A, Word::parse("1"), 3).value == 16);
  REQUIRE(weight(A, Word::parse("3 2 3 2")).kind == Weight::Kind::Multiplicative);
  REQUIRE(weight_label(Weight::Kind::Multiplicative) == std::string("weight"));

  REQUIRE_THROWS_AS(weight(A, Word()), std::invalid_argument);
  REQUIRE_THROWS_AS(weight(A, Word::parse("5")), std::invalid_argument);
  REQUIRE_THROWS_AS(weight(A, Word::parse("1"), -1), std::invalid_argument);
}

TEST_CASE("loglinear weights carry exponents only") {
  ArraySpec A = paper_loglinear();
  Weight w = weight(A, Word::parse("1 2"));
  REQUIRE(w.kind == Weight::Kind::Exponential);
  REQUIRE(w.value == 2 + 2 * 3);
  REQUIRE(weight_label(w.kind) == std::string("log-weight"));
  REQUIRE(weight(A, Word::parse("3 1")).value == 4 + 2 * 2);

  Weight reg = weight(paper_regular(), Word::parse("1 2"));
  REQUIRE_THROWS_AS(compare_weights(w, reg), std::invalid_argument);
}

TEST_CASE("explicit arrays extend the last column geometrically") {
  ArraySpec A = ArraySpec(ExplicitArray({{1, 2}, {2, 1}}, 2));
  REQUIRE(weight(A, Word::parse("2")).value == 2);
  REQUIRE(weight(A, Word::parse("2"), 1).value == 1);
  REQUIRE(weight(A, Word::parse("2"), 2).value == 2);
  REQUIRE(weight(A, Word::parse("2"), 3).value == 4);
  REQUIRE(weight(A, Word::parse("1 1 1")).value == 1 * 2 * 4);
}

TEST_CASE("product law: weight(uv) = weight(u) * shifted weight(v)") {
  ArraySpec A = paper_regular();
  Lcg rng(101);
  for (int i = 0; i < 1000; ++i) {
    Word u = random_word(rng, 4, 6), v = random_word(rng, 4, 6);
    Rational lhs = weight(A, u.concat(v)).value;
    Rational rhs = weight(A, u).value *
                   weight(A, v, static_cast<int>(u.size())).value;
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("loglinear shift scales the exponent by the slope") {
  ArraySpec A = paper_loglinear();
  Lcg rng(102);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 4, 6);
    Rational base = weight(A, w).value;
    for (int k = 1; k <= 4; ++k)
      REQUIRE(weight(A, w, k).value == base * pow(Rational(2), k));
  }
}

TEST_CASE("degeneracy detection and reduction") {
  ArraySpec A = ArraySpec(RegularArray({2, 3, 2, 6}, 2));
  auto pair = is_degenerate(A);
  REQUIRE(pair.has_value());
  REQUIRE(*pair == std::make_pair(1, 3));

  auto [reduced, mapping] = reduce_degenerate(A);
  REQUIRE(reduced.rows() == 3);
  REQUIRE(mapping == std::vector<int>{1, 2, 1, 3});
  REQUIRE(reduced.first_column_value(1) == 2);
  REQUIRE(reduced.first_column_value(3) == 6);

  REQUIRE(!is_degenerate(paper_regular()).has_value());
}

TEST_CASE("bounded admissibility accepts the shipped arrays") {
  REQUIRE(check_admissible_bounded(paper_regular(), 4, 4).passed);
  REQUIRE(check_admissible_bounded(paper_loglinear(), 4, 4).passed);
  REQUIRE(check_admissible_bounded(ArraySpec(LogLinearArray({2, 4, 7}, 2)), 4, 4)
              .passed);
}

TEST_CASE("bounded admissibility rejects the sign-flip array") {
  ArraySpec A = ArraySpec(ExplicitArray({{1, 2}, {2, 1}}, 2));
  AdmissibilityReport r = check_admissible_bounded(A, 1, 2);
  REQUIRE(!r.passed);
  REQUIRE(r.counterexample.has_value());
  REQUIRE(r.counterexample->lhs == Word::parse("2"));
  REQUIRE(r.counterexample->rhs == Word::parse("1"));
  REQUIRE(r.counterexample->shift == 0);
  REQUIRE(r.counterexample->lhs_at_shift.value == 2);
  REQUIRE(r.counterexample->rhs_at_shift.value == 1);
  REQUIRE(r.counterexample->lhs_at_next.value == 1);
  REQUIRE(r.counterexample->rhs_at_next.value == 2);
}

TEST_CASE("array document parsing") {
  ArraySpec A = ArraySpec::parse(
      "# comment\n"
      "family: regular\n"
      "\n"
      "first_column: 2 3 4 6\n"
      "scalar_tail_ratio: 2\n");
  REQUIRE(A.family() == Family::Regular);
  REQUIRE(A.rows() == 4);
  REQUIRE(A.regular().scalar_tail_ratio == 2);
  REQUIRE(A.regular().scalar_prefix == std::vector<Rational>{Rational(1)});

  ArraySpec B = ArraySpec::parse(
      "family: loglinear\nlog_first_column: 2 4 7\nslope: 2\n");
  REQUIRE(B.family() == Family::LogLinear);
  REQUIRE(B.loglinear().slope == 2);

  ArraySpec C = ArraySpec::parse(
      "family: explicit\ncolumns: 1 2 ; 2 1\ntail_ratio: 2\n");
  REQUIRE(C.family() == Family::Explicit);
  REQUIRE(C.rows() == 2);
  REQUIRE(C.explicit_array().columns.size() == 2);

  ArraySpec D = ArraySpec::parse(
      "family: regular\nfirst_column: 2 3\nscalar_prefix: 1 5\n"
      "scalar_tail_ratio: 1/2\n");
  REQUIRE(D.regular().scalar_prefix == std::vector<Rational>({1, 5}));
  REQUIRE(D.regular().column_scalar(2) == Rational(5, 2));
}

TEST_CASE("array document errors carry line numbers") {
  bool threw = false;
  try {
    ArraySpec::parse("family: regular\nbogus: 1\n");
  } catch (const ParseError& e) {
    threw = true;
    REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
  }
  REQUIRE(threw);
  REQUIRE_THROWS_AS(ArraySpec::parse(""), ParseError);
  REQUIRE_THROWS_AS(ArraySpec::parse("first_column: 2\n"), ParseError);
  REQUIRE_THROWS_AS(
      ArraySpec::parse("family: regular\nfirst_column: 2\n"), ParseError);
  REQUIRE_THROWS_AS(ArraySpec::parse("family: nosuch\n"), ParseError);
  REQUIRE_THROWS_AS(ArraySpec::parse("family: regular\nfamily: regular\n"
                                     "first_column: 2\nscalar_tail_ratio: 2\n"),
                    ParseError);
  REQUIRE_THROWS_AS(
      ArraySpec::parse("family: regular\nfirst_column: 2 x\n"
                       "scalar_tail_ratio: 2\n"),
      ParseError);
  REQUIRE_THROWS_AS(
      ArraySpec::parse("family: loglinear\nlog_first_column: 2 3\nslope: 1\n"),
      ParseError);
}

TEST_CASE("array documents round-trip") {
  const char* docs[] = {
      "family: regular\nfirst_column: 2 3 4 6\nscalar_tail_ratio: 2\n",
      "family: regular\nfirst_column: 2 3\nscalar_prefix: 1 5\n"
      "scalar_tail_ratio: 1/2\n",
      "family: loglinear\nlog_first_column: 2 4 7\nslope: 1/3\n",
      "family: explicit\ncolumns: 1 2; 2 1\ntail_ratio: 2\n",
  };
  for (const char* doc : docs) {
    ArraySpec A = ArraySpec::parse(doc);
    REQUIRE(A.document() == doc);
    REQUIRE(ArraySpec::parse(A.document()).document() == A.document());
  }
}
