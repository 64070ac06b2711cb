#ifndef WEIGHTIDEAL_CLI_HPP
#define WEIGHTIDEAL_CLI_HPP

#include <weightideal/array_spec.hpp>
#include <weightideal/ideal_loglinear.hpp>
#include <weightideal/ideal_regular.hpp>
#include <weightideal/order.hpp>
#include <weightideal/rational.hpp>
#include <weightideal/word.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

// Command-line front end. Exit codes: 0 = success/true/pass, 1 = a negative
// verdict (counterexample, inconclusive, irreducible, fail), 2 = usage or
// parse error. --json emits one object {command, inputs, verdict,
// certificates[], counterexample?} with stable key order and canonical
// rationals, so identical requests produce byte-identical output.

namespace wi::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kDefaultMaxLen = 5;
inline constexpr int kDefaultMaxShift = 4;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ArraySpec load_array(const std::string& path) {
  try {
    return ArraySpec::parse(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Regular: return "regular";
    case Family::LogLinear: return "loglinear";
    default: return "explicit";
  }
}

// Accumulates both renderings; exactly one is flushed.
struct Report {
  bool json_mode;
  Json j;
  std::ostringstream text;

  Report(const std::string& command, bool json) : json_mode(json) {
    j["command"] = command;
    j["inputs"] = Json::object();
    j["verdict"] = nullptr;  // filled by verdict(); keeps key order stable
  }

  Json& inputs() { return j["inputs"]; }

  void verdict(const std::string& v) {
    j["verdict"] = v;
    text << "verdict: " << v << "\n";
  }

  Json& certificates() {
    if (!j.contains("certificates")) j["certificates"] = Json::array();
    return j["certificates"];
  }

  void flush(std::ostream& out) {
    if (!j.contains("certificates")) j["certificates"] = Json::array();
    if (json_mode)
      out << j.dump(2) << "\n";
    else
      out << text.str();
  }
};

inline Json difference_json(const char* type, const BinomialDifference& d) {
  Json j;
  j["type"] = type;
  j["lhs"] = d.lhs.str();
  j["rhs"] = d.rhs.str();
  return j;
}

inline Json step_json(const RewriteStep& s) {
  Json j;
  j["position"] = s.position;
  j["rule_lhs"] = s.rule_lhs.str();
  j["rule_rhs"] = s.rule_rhs.str();
  j["result"] = s.result.str();
  return j;
}

inline Json steps_json(const std::vector<RewriteStep>& steps) {
  Json arr = Json::array();
  for (const RewriteStep& s : steps) arr.push_back(step_json(s));
  return arr;
}

inline Json stratum_json(const StratumSummary& row) {
  Json j;
  j["type"] = "stratum";
  j["length"] = row.length;
  j["words"] = row.words;
  j["classes"] = row.classes;
  j["relations"] = row.relations;
  j["connected"] = row.connected;
  return j;
}

inline Json subcase_json(const SubcaseRecord& r) {
  Json j;
  j["lhs_prefix"] = r.lhs_prefix.str();
  j["rhs_prefix"] = r.rhs_prefix.str();
  j["kind"] = to_string(r.kind);
  if (r.branch_value) j["branch_value"] = to_string(*r.branch_value);
  j["prefix_is_member"] = r.prefix_is_member;
  if (r.tail_target) j["tail_target"] = to_string(*r.tail_target);
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.lhs_chain.empty()) j["lhs_chain"] = steps_json(r.lhs_chain);
  if (!r.rhs_chain.empty()) j["rhs_chain"] = steps_json(r.rhs_chain);
  if (!r.branches.empty()) {
    Json arr = Json::array();
    for (const SubcaseRecord& b : r.branches) arr.push_back(subcase_json(b));
    j["branches"] = arr;
  }
  return j;
}

inline void print_trace(std::ostringstream& text, const RewriteTrace& trace) {
  Word cur = trace.start;
  text << "  " << cur.pretty() << "\n";
  for (const RewriteStep& s : trace.steps) {
    text << "    -> " << s.result.pretty() << "  (replace " << s.rule_lhs.pretty()
         << " by " << s.rule_rhs.pretty() << " at position " << s.position
         << ")\n";
  }
}

// ---- command handlers ----------------------------------------------------

inline int cmd_check(const std::string& path, int max_len, int max_shift,
                     bool json, std::ostream& out) {
  ArraySpec A = load_array(path);
  Report rep("check", json);
  rep.inputs()["array"] = path;
  rep.inputs()["max_len"] = max_len;
  rep.inputs()["max_shift"] = max_shift;
  rep.text << "array: " << path << " (family " << family_name(A.family())
           << ", " << A.rows() << " rows)\n";

  Json deg;
  deg["type"] = "degeneracy";
  if (auto pair = is_degenerate(A)) {
    auto [reduced, mapping] = reduce_degenerate(A);
    deg["degenerate"] = true;
    deg["rows"] = Json::array({pair->first, pair->second});
    deg["row_map"] = mapping;
    deg["reduced"] = reduced.document();
    rep.text << "degeneracy: rows " << pair->first << " and " << pair->second
             << " share a first-column entry; reduced spec has "
             << reduced.rows() << " row(s)\n";
  } else {
    deg["degenerate"] = false;
    rep.text << "degeneracy: none\n";
  }
  rep.certificates().push_back(deg);

  AdmissibilityReport adm = check_admissible_bounded(A, max_len, max_shift);
  Json cert;
  cert["type"] = "admissibility";
  cert["max_len"] = adm.max_len;
  cert["max_shift"] = adm.max_shift;
  cert["passed"] = adm.passed;
  rep.certificates().push_back(cert);
  rep.text << "admissibility (max_len " << max_len << ", max_shift "
           << max_shift << "): " << (adm.passed ? "pass" : "counterexample")
           << "\n";
  if (adm.counterexample) {
    const AdmissibilityCounterexample& c = *adm.counterexample;
    Json cx;
    cx["lhs"] = c.lhs.str();
    cx["rhs"] = c.rhs.str();
    cx["shift"] = c.shift;
    cx["weight_kind"] = weight_label(c.lhs_at_shift.kind);
    cx["lhs_at_shift"] = to_string(c.lhs_at_shift.value);
    cx["rhs_at_shift"] = to_string(c.rhs_at_shift.value);
    cx["lhs_at_next"] = to_string(c.lhs_at_next.value);
    cx["rhs_at_next"] = to_string(c.rhs_at_next.value);
    rep.j["counterexample"] = cx;
    rep.text << "counterexample: " << c.lhs.pretty() << " vs " << c.rhs.pretty()
             << " at shift " << c.shift << ": "
             << weight_label(c.lhs_at_shift.kind) << " "
             << to_string(c.lhs_at_shift.value) << " vs "
             << to_string(c.rhs_at_shift.value) << ", then "
             << to_string(c.lhs_at_next.value) << " vs "
             << to_string(c.rhs_at_next.value) << "\n";
  }
  rep.verdict(adm.passed ? "pass" : "counterexample");
  rep.flush(out);
  return adm.passed ? 0 : 1;
}

inline int cmd_compare(const std::string& path, const std::string& lhs_text,
                       const std::string& rhs_text, bool json,
                       std::ostream& out) {
  ArraySpec A = load_array(path);
  Word lhs = Word::parse(lhs_text);
  Word rhs = Word::parse(rhs_text);
  OrderOutcome o = compare(A, lhs, rhs);

  Report rep("compare", json);
  rep.inputs()["array"] = path;
  rep.inputs()["lhs"] = lhs.str();
  rep.inputs()["rhs"] = rhs.str();
  rep.text << lhs.pretty() << " vs " << rhs.pretty() << ": " << to_string(o)
           << (o == OrderOutcome::EQ ? " (difference lies in I_A)" : "")
           << "\n";
  if (lhs.size() == rhs.size()) {
    Weight wl = weight(A, lhs), wr = weight(A, rhs);
    Json cert;
    cert["type"] = "weights";
    cert["weight_kind"] = weight_label(wl.kind);
    cert["lhs"] = to_string(wl.value);
    cert["rhs"] = to_string(wr.value);
    rep.certificates().push_back(cert);
    rep.text << weight_label(wl.kind) << ": " << to_string(wl.value) << " vs "
             << to_string(wr.value) << "\n";
  } else {
    Json cert;
    cert["type"] = "lengths";
    cert["lhs"] = lhs.size();
    cert["rhs"] = rhs.size();
    rep.certificates().push_back(cert);
    rep.text << "lengths: " << lhs.size() << " vs " << rhs.size() << "\n";
  }
  rep.verdict(to_string(o));
  rep.flush(out);
  return 0;
}

inline int cmd_classify(const std::string& path, int confirm_len, bool json,
                        std::ostream& out) {
  ArraySpec A = load_array(path);
  LenLexClassification c = classify_lenlex(A, confirm_len);
  const LogLinearArray& a = A.loglinear();

  Report rep("classify-order", json);
  rep.inputs()["array"] = path;
  rep.inputs()["confirm_len"] = confirm_len;

  Json hyp;
  hyp["type"] = "hypothesis";
  hyp["alpha"] = to_string(c.alpha);
  hyp["beta"] = to_string(c.beta);
  hyp["slope"] = to_string(a.slope);
  hyp["slope_below_one"] = c.slope_below_one;
  hyp["slope_above_one"] = c.slope_above_one;
  Rational threshold;
  if (c.slope_below_one)
    threshold = a.slope * c.beta / (1 - a.slope);
  else
    threshold = c.beta / (a.slope - 1);
  hyp["threshold"] = to_string(threshold);
  hyp["inequality_holds"] = c.inequality_holds;
  rep.certificates().push_back(hyp);

  Json conf;
  conf["type"] = "confirmation";
  conf["letter_order"] = c.letter_order;
  conf["confirmed_length"] = c.confirmed_length;
  rep.certificates().push_back(conf);

  rep.text << "alpha: " << to_string(c.alpha) << ", beta: " << to_string(c.beta)
           << ", slope: " << to_string(a.slope) << "\n";
  rep.text << "side threshold: " << to_string(threshold) << " ("
           << (c.inequality_holds ? "alpha exceeds it" : "alpha does not exceed it")
           << ")\n";
  rep.text << "letter order:";
  for (int letter : c.letter_order) rep.text << " x" << letter;
  rep.text << "\nconfirmed through length " << c.confirmed_length << "\n";
  if (c.disagreement) {
    Json cx;
    cx["lhs"] = c.disagreement->first.str();
    cx["rhs"] = c.disagreement->second.str();
    rep.j["counterexample"] = cx;
    rep.text << "disagreement: " << c.disagreement->first.pretty() << " vs "
             << c.disagreement->second.pretty() << "\n";
  }
  rep.verdict(to_string(c.verdict));
  rep.flush(out);
  return c.verdict == LenLexClassification::Verdict::Inconclusive ? 1 : 0;
}

inline int cmd_equiv(const std::string& path, const std::string& other,
                     int max_len, bool json, std::ostream& out) {
  ArraySpec A = load_array(path);
  ArraySpec B = load_array(other);
  EquivalenceReport r = orders_equivalent_bounded(A, B, max_len);

  Report rep("equiv", json);
  rep.inputs()["array"] = path;
  rep.inputs()["other"] = other;
  rep.inputs()["max_len"] = max_len;
  if (r.agree) {
    rep.text << "orders agree on all pairs up to length " << max_len << "\n";
  } else {
    const EquivalenceCounterexample& c = *r.counterexample;
    Json cx;
    cx["lhs"] = c.lhs.str();
    cx["rhs"] = c.rhs.str();
    cx["first"] = to_string(c.first);
    cx["second"] = to_string(c.second);
    rep.j["counterexample"] = cx;
    rep.text << "counterexample: " << c.lhs.pretty() << " vs " << c.rhs.pretty()
             << ": " << to_string(c.first) << " under " << path << ", "
             << to_string(c.second) << " under " << other << "\n";
  }
  rep.verdict(r.agree ? "agree" : "counterexample");
  rep.flush(out);
  return r.agree ? 0 : 1;
}

inline int cmd_relations(const std::string& path, int len, bool disjoint_only,
                         bool minimal_only, bool json, std::ostream& out) {
  ArraySpec A = load_array(path);
  Report rep("relations", json);
  rep.inputs()["array"] = path;
  rep.inputs()["len"] = len;

  if (A.family() == Family::LogLinear) {
    if (disjoint_only || minimal_only)
      throw std::invalid_argument(
          "--disjoint-only/--minimal-only apply to regular arrays");
    rep.inputs()["mode"] = "classes";
    std::size_t count = 0;
    for (const auto& [exponent, words] : weight_classes(A, len)) {
      if (words.size() < 2) continue;
      Json cls;
      cls["type"] = "class";
      cls["log_weight"] = to_string(exponent);
      Json arr = Json::array();
      rep.text << "log-weight " << to_string(exponent) << ":";
      for (const Word& w : words) {
        arr.push_back(w.str());
        rep.text << " " << w.pretty();
      }
      rep.text << "\n";
      cls["words"] = arr;
      rep.certificates().push_back(cls);
    }
    for (const BinomialDifference& d : enumerate_relations(A, len)) {
      rep.certificates().push_back(difference_json("difference", d));
      rep.text << d.pretty() << "\n";
      ++count;
    }
    rep.text << count << " relation(s) at length " << len << "\n";
    rep.verdict("ok");
    rep.flush(out);
    return 0;
  }

  const std::vector<Rational>& col = A.family() == Family::Regular
                                         ? A.regular().first_column
                                         : throw std::invalid_argument(
                                               "relations needs a regular or "
                                               "loglinear array");
  if (minimal_only) {
    rep.inputs()["mode"] = "minimal";
    GeneratorSet gens = minimal_generators(col, std::max(len, 2));
    for (const BinomialDifference& d : gens.disjoint_minimal) {
      rep.certificates().push_back(difference_json("difference", d));
      rep.text << d.pretty() << "\n";
    }
    Json cert;
    cert["type"] = "certification";
    cert["max_len_certified"] = gens.max_len_certified;
    rep.certificates().push_back(cert);
    rep.text << gens.disjoint_minimal.size()
             << " minimal disjoint generator(s) certified to length "
             << gens.max_len_certified << "\n";
  } else if (disjoint_only) {
    rep.inputs()["mode"] = "disjoint";
    std::vector<BinomialDifference> ds = enumerate_disjoint(col, len);
    for (const BinomialDifference& d : ds) {
      rep.certificates().push_back(difference_json("difference", d));
      rep.text << d.pretty() << "\n";
    }
    rep.text << ds.size() << " disjoint-support difference(s) at degree " << len
             << "\n";
  } else {
    rep.inputs()["mode"] = "fibers";
    std::size_t shown = 0;
    for (const Fiber& f : enumerate_fibers(col, len)) {
      if (f.members.size() < 2) continue;
      ++shown;
      Json fib;
      fib["type"] = "fiber";
      fib["degree"] = f.degree;
      fib["weight"] = to_string(f.weight);
      Json arr = Json::array();
      rep.text << "degree " << f.degree << " weight " << to_string(f.weight)
               << ":";
      for (const ExponentVector& e : f.members) {
        arr.push_back(e.canonical_word().str());
        rep.text << " " << e.canonical_word().pretty();
      }
      rep.text << "\n";
      fib["members"] = arr;
      rep.certificates().push_back(fib);
    }
    rep.text << shown << " fiber(s) with multiple members at degree " << len
             << "\n";
  }
  rep.verdict("ok");
  rep.flush(out);
  return 0;
}

inline int cmd_gens(const std::string& path, int max_len, bool json,
                    std::ostream& out) {
  ArraySpec A = load_array(path);
  Report rep("gens", json);
  rep.inputs()["array"] = path;
  rep.inputs()["max_len"] = max_len;

  if (A.family() == Family::Regular) {
    GeneratorSet gens = minimal_generators(A.regular().first_column, max_len);
    Json cert;
    cert["type"] = "generator-set";
    cert["commutators"] = "implicit";
    cert["max_len_certified"] = gens.max_len_certified;
    Json arr = Json::array();
    rep.text << "commutators: implicit\n";
    for (const BinomialDifference& d : gens.disjoint_minimal) {
      Json dj;
      dj["lhs"] = d.lhs.str();
      dj["rhs"] = d.rhs.str();
      arr.push_back(dj);
      rep.text << d.pretty() << "\n";
    }
    cert["disjoint_minimal"] = arr;
    rep.certificates().push_back(cert);
    rep.text << gens.disjoint_minimal.size()
             << " minimal disjoint generator(s) certified to length "
             << gens.max_len_certified << "\n";
  } else if (A.family() == Family::LogLinear) {
    for (int m = 2; m <= max_len; ++m) {
      auto classes = weight_classes(A, m);
      std::size_t words = 0, relations = 0;
      for (const auto& [exponent, ws] : classes) {
        words += ws.size();
        relations += ws.size() * (ws.size() - 1) / 2;
      }
      Json row;
      row["type"] = "relation-summary";
      row["length"] = m;
      row["words"] = words;
      row["classes"] = classes.size();
      row["relations"] = relations;
      rep.certificates().push_back(row);
      rep.text << "length " << m << ": " << classes.size() << " classes, "
               << relations << " relation(s)\n";
    }
    for (const BinomialDifference& d : enumerate_relations(A, 2)) {
      rep.certificates().push_back(difference_json("difference", d));
      rep.text << d.pretty() << "\n";
    }
  } else {
    throw std::invalid_argument("gens needs a regular or loglinear array");
  }
  rep.verdict("ok");
  rep.flush(out);
  return 0;
}

inline int cmd_decompose(const std::string& path, const std::string& lhs_text,
                         const std::string& rhs_text, bool json,
                         std::ostream& out) {
  ArraySpec A = load_array(path);
  Word lhs = Word::parse(lhs_text);
  Word rhs = Word::parse(rhs_text);
  BinomialDifference diff(lhs, rhs);

  Report rep("decompose", json);
  rep.inputs()["array"] = path;
  rep.inputs()["lhs"] = lhs.str();
  rep.inputs()["rhs"] = rhs.str();

  if (A.family() == Family::Regular) {
    const std::vector<Rational>& col = A.regular().first_column;
    if (!member(col, diff)) {
      rep.text << diff.pretty() << " is not a member of the ideal\n";
      rep.verdict("not-a-member");
      rep.flush(out);
      return 1;
    }
    GeneratorSet gens =
        minimal_generators(col, std::max<int>(2, static_cast<int>(lhs.size())));
    if (!is_consequence(diff, gens, col)) {
      rep.text << diff.pretty()
               << " is not a consequence of the generators up to its length\n";
      rep.verdict("not-a-consequence");
      rep.flush(out);
      return 1;
    }
    Decomposition d = decompose(col, diff, gens);
    for (const DecompositionTerm& term : d.terms) {
      Json tj;
      tj["type"] = "term";
      tj["sign"] = term.sign;
      tj["left"] = term.left.str();
      tj["generator_lhs"] = term.generator.lhs.str();
      tj["generator_rhs"] = term.generator.rhs.str();
      tj["right"] = term.right.str();
      rep.certificates().push_back(tj);
      rep.text << (term.sign > 0 ? "+ " : "- ") << term.left.pretty() << " * ("
               << term.generator.pretty() << ") * " << term.right.pretty()
               << "\n";
    }
    Json check;
    check["type"] = "expansion-check";
    check["ok"] = true;
    rep.certificates().push_back(check);
    rep.text << d.terms.size() << " term(s); expansion verified\n";
    rep.verdict("decomposed");
    rep.flush(out);
    return 0;
  }

  if (A.family() == Family::LogLinear) {
    if (!member_loglin(A, diff)) {
      rep.text << diff.pretty() << " is not a member of the ideal\n";
      rep.verdict("not-a-member");
      rep.flush(out);
      return 1;
    }
    int gen_len = static_cast<int>(lhs.size()) - 1;
    if (gen_len < 1) {
      rep.text << "no shorter relations exist\n";
      rep.verdict("irreducible");
      rep.flush(out);
      return 1;
    }
    std::optional<RewriteTrace> trace = reduces_over_shorter(A, diff, gen_len);
    if (!trace) {
      rep.text << diff.pretty()
               << " does not rewrite over strictly shorter relations\n";
      rep.verdict("irreducible");
      rep.flush(out);
      return 1;
    }
    for (const RewriteStep& s : trace->steps)
      rep.certificates().push_back(step_json(s));
    print_trace(rep.text, *trace);
    rep.text << trace->steps.size() << " rewrite step(s)\n";
    rep.verdict("rewritten");
    rep.flush(out);
    return 0;
  }
  throw std::invalid_argument("decompose needs a regular or loglinear array");
}

inline int cmd_verify_fingen(const std::string& path, int max_len, bool json,
                             std::ostream& out) {
  ArraySpec A = load_array(path);
  FinGenReport r = verify_fingen(A, max_len);

  Report rep("verify fingen", json);
  rep.inputs()["array"] = path;
  rep.inputs()["max_len"] = max_len;
  for (const StratumSummary& row : r.strata) {
    rep.certificates().push_back(stratum_json(row));
    rep.text << "length " << row.length << ": " << row.words << " words in "
             << row.classes << " classes, " << row.relations << " relation(s)"
             << (row.length >= 3
                     ? row.connected ? ", connected" : ", NOT connected"
                     : " (generators)")
             << "\n";
  }
  rep.text << r.differences_checked
           << " member difference(s) checked against length-2 rules\n";
  if (r.irreducible) {
    Json cx = difference_json("difference", *r.irreducible);
    cx.erase("type");
    rep.j["counterexample"] = cx;
    rep.text << "irreducible: " << r.irreducible->pretty() << "\n";
  }
  rep.verdict(r.pass ? "pass" : "fail");
  rep.flush(out);
  return r.pass ? 0 : 1;
}

inline int cmd_verify_infgen(const std::string& path, int n, bool json,
                             std::ostream& out) {
  ArraySpec A = load_array(path);
  InfGenCertificate cert = infgen_witness(A, n);

  Report rep("verify infgen", json);
  rep.inputs()["array"] = path;
  rep.inputs()["n"] = n;

  Json w;
  w["type"] = "witness";
  w["n"] = cert.n;
  w["length"] = cert.length;
  w["lhs"] = cert.lhs.str();
  w["rhs"] = cert.rhs.str();
  Json coeffs = Json::array();
  for (const Rational& c : cert.delta_coefficients)
    coeffs.push_back(to_string(c));
  w["delta_coefficients"] = coeffs;
  w["delta_value"] = to_string(cert.delta_value);
  w["membership"] = cert.membership;
  w["factors_isolated"] = cert.factors_isolated;
  w["factor_words_checked"] = cert.factor_words_checked;
  w["reduction_absent"] = cert.reduction_absent;
  rep.certificates().push_back(w);

  Json cc;
  cc["type"] = "coefficient-check";
  cc["position"] = cert.coefficient_check.position;
  cc["from_polynomial"] = to_string(cert.coefficient_check.from_polynomial);
  cc["from_words"] = to_string(cert.coefficient_check.from_words);
  cc["agree"] = cert.coefficient_check.agree;
  cc["equals_five"] = cert.coefficient_check.equals_five;
  cc["equals_four"] = cert.coefficient_check.equals_four;
  rep.certificates().push_back(cc);

  rep.text << cert.lhs.pretty() << " - " << cert.rhs.pretty() << " (length "
           << cert.length << ")\n";
  rep.text << "delta coefficients:";
  for (const Rational& c : cert.delta_coefficients)
    rep.text << " " << to_string(c);
  rep.text << "\ndelta value: " << to_string(cert.delta_value)
           << (cert.membership ? " (member)" : " (NOT a member)") << "\n";
  rep.text << "factors isolated: " << (cert.factors_isolated ? "yes" : "no")
           << " (" << cert.factor_words_checked << " words checked)\n";
  rep.text << "reduction over shorter relations: "
           << (cert.reduction_absent ? "absent" : "FOUND") << "\n";
  rep.text << "coefficient at position " << cert.coefficient_check.position
           << ": " << to_string(cert.coefficient_check.from_words)
           << (cert.coefficient_check.equals_five ? " (equals 5" : " (not 5")
           << (cert.coefficient_check.equals_four ? ", equals 4)" : ", not 4)")
           << "\n";
  rep.verdict(cert.passed() ? "pass" : "fail");
  rep.flush(out);
  return cert.passed() ? 0 : 1;
}

inline int cmd_verify_appendix(const std::string& path, int max_len, bool json,
                               std::ostream& out) {
  ArraySpec A = load_array(path);
  AppendixReport r = verify_appendix(A, max_len);

  Report rep("verify appendix", json);
  rep.inputs()["array"] = path;
  rep.inputs()["max_len"] = max_len;
  for (const StratumSummary& row : r.strata) {
    rep.certificates().push_back(stratum_json(row));
    rep.text << "length " << row.length << ": " << row.words << " words in "
             << row.classes << " classes, " << row.relations << " relation(s)"
             << (row.length >= 3
                     ? row.connected ? ", connected" : ", NOT connected"
                     : " (generators)")
             << "\n";
  }
  rep.text << r.differences_checked
           << " member difference(s) checked against shorter relations\n";
  if (r.irreducible) {
    Json cx = difference_json("difference", *r.irreducible);
    cx.erase("type");
    rep.j["counterexample"] = cx;
    rep.text << "irreducible: " << r.irreducible->pretty() << "\n";
  }

  Json cases;
  cases["type"] = "case-analysis";
  cases["fully_resolved"] = r.fully_resolved;
  Json arr = Json::array();
  for (const SubcaseRecord& rec : r.subcases) arr.push_back(subcase_json(rec));
  cases["cases"] = arr;
  rep.certificates().push_back(cases);

  auto count_kinds = [](const SubcaseRecord& rec, auto&& self,
                        std::map<SubcaseRecord::Kind, int>& counts) -> void {
    ++counts[rec.kind];
    for (const SubcaseRecord& b : rec.branches) self(b, self, counts);
  };
  std::map<SubcaseRecord::Kind, int> counts;
  for (const SubcaseRecord& rec : r.subcases)
    count_kinds(rec, count_kinds, counts);
  rep.text << "case analysis over starting letters: " << r.subcases.size()
           << " top-level cases, " << counts[SubcaseRecord::Kind::Rewrite]
           << " rewrite node(s), " << counts[SubcaseRecord::Kind::Impossible]
           << " impossible node(s), " << counts[SubcaseRecord::Kind::Split]
           << " split(s), " << counts[SubcaseRecord::Kind::Unresolved]
           << " unresolved\n";
  rep.text << "case analysis fully resolved: "
           << (r.fully_resolved ? "yes" : "no") << "\n";
  rep.verdict(r.pass ? "pass" : "fail");
  rep.flush(out);
  return r.pass ? 0 : 1;
}

}  // namespace detail

// Parses and runs one command; returns the process exit code. Arguments are
// given in natural order without the program name.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"weight arrays, orders, and weight ideals over free monoids"};
  app.require_subcommand(1);

  std::string array_path, other_path, lhs_text, rhs_text;
  int max_len = kDefaultMaxLen;
  int max_shift = kDefaultMaxShift;
  int confirm_len = kDefaultMaxLen;
  int len = 2;
  int n = 4;
  bool json = false, disjoint_only = false, minimal_only = false;

  CLI::App* check = app.add_subcommand(
      "check", "degeneracy and bounded admissibility of an array");
  check->add_option("--array", array_path, "array spec file")->required();
  check->add_option("--max-len", max_len, "maximum word length");
  check->add_option("--max-shift", max_shift, "shifts checked against k+1");
  check->add_flag("--json", json, "machine-readable output");

  CLI::App* cmp = app.add_subcommand("compare", "order two words");
  cmp->add_option("--array", array_path, "array spec file")->required();
  cmp->add_option("--lhs", lhs_text, "left word")->required();
  cmp->add_option("--rhs", rhs_text, "right word")->required();
  cmp->add_flag("--json", json, "machine-readable output");

  CLI::App* classify = app.add_subcommand(
      "classify-order", "test a loglinear array against the length-lex orders");
  classify->add_option("--array", array_path, "array spec file")->required();
  classify->add_option("--confirm-len", confirm_len,
                       "exhaustive confirmation depth");
  classify->add_flag("--json", json, "machine-readable output");

  CLI::App* equiv = app.add_subcommand(
      "equiv", "bounded order equivalence of two arrays");
  equiv->add_option("--array", array_path, "first array spec file")->required();
  equiv->add_option("--other", other_path, "second array spec file")->required();
  equiv->add_option("--max-len", max_len, "maximum word length");
  equiv->add_flag("--json", json, "machine-readable output");

  CLI::App* relations = app.add_subcommand(
      "relations", "equal-weight structure at one length");
  relations->add_option("--array", array_path, "array spec file")->required();
  relations->add_option("--len", len, "word length / degree");
  CLI::Option* opt_d = relations->add_flag("--disjoint-only", disjoint_only,
                                           "only disjoint-support differences");
  relations->add_flag("--minimal-only", minimal_only,
                      "only minimal generators up to --len")
      ->excludes(opt_d);
  relations->add_flag("--json", json, "machine-readable output");

  CLI::App* gens = app.add_subcommand("gens", "generator overview");
  gens->add_option("--array", array_path, "array spec file")->required();
  gens->add_option("--max-len", max_len, "certification length");
  gens->add_flag("--json", json, "machine-readable output");

  CLI::App* decompose = app.add_subcommand(
      "decompose", "express a member difference over the generators");
  decompose->add_option("--array", array_path, "array spec file")->required();
  decompose->add_option("--lhs", lhs_text, "left word")->required();
  decompose->add_option("--rhs", rhs_text, "right word")->required();
  decompose->add_flag("--json", json, "machine-readable output");

  CLI::App* verify = app.add_subcommand("verify", "built-in verification runs");
  verify->require_subcommand(1);
  CLI::App* fingen = verify->add_subcommand(
      "fingen", "length-2 relations generate everything at bound");
  fingen->add_option("--array", array_path, "array spec file")->required();
  fingen->add_option("--max-len", max_len, "maximum word length");
  fingen->add_flag("--json", json, "machine-readable output");
  CLI::App* infgen = verify->add_subcommand(
      "infgen", "irreducible witness of the infinite family");
  infgen->add_option("--array", array_path, "array spec file")->required();
  infgen->add_option("--n", n, "family parameter (even, >= 4)");
  infgen->add_flag("--json", json, "machine-readable output");
  CLI::App* appendix = verify->add_subcommand(
      "appendix", "full case-analysis verification for log column (2 3 4 6)");
  appendix->add_option("--array", array_path, "array spec file")->required();
  appendix->add_option("--max-len", max_len, "maximum word length");
  appendix->add_flag("--json", json, "machine-readable output");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed())
      return detail::cmd_check(array_path, max_len, max_shift, json, out);
    if (cmp->parsed())
      return detail::cmd_compare(array_path, lhs_text, rhs_text, json, out);
    if (classify->parsed())
      return detail::cmd_classify(array_path, confirm_len, json, out);
    if (equiv->parsed())
      return detail::cmd_equiv(array_path, other_path, max_len, json, out);
    if (relations->parsed())
      return detail::cmd_relations(array_path, len, disjoint_only, minimal_only,
                                   json, out);
    if (gens->parsed())
      return detail::cmd_gens(array_path, max_len, json, out);
    if (decompose->parsed())
      return detail::cmd_decompose(array_path, lhs_text, rhs_text, json, out);
    if (verify->parsed()) {
      if (fingen->parsed())
        return detail::cmd_verify_fingen(array_path, max_len, json, out);
      if (infgen->parsed())
        return detail::cmd_verify_infgen(array_path, n, json, out);
      if (appendix->parsed())
        return detail::cmd_verify_appendix(array_path, max_len, json, out);
    }
    err << "error: no command\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace wi::cli

#endif  // WEIGHTIDEAL_CLI_HPP
