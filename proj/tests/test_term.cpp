#include <doctest.h>

#include <set>

#include "fixtures.hpp"

using namespace ualgeo;
using ualgeo::test::corpus;
using ualgeo::test::error_kind;

namespace {
  Signature group_sig() {
    return Signature({{"+", 2}, {"-", 1}, {"e", 0}});
  }

  Signature meet_sig() {
    return Signature({{"meet", 2}});
  }
}  // namespace

TEST_CASE("symbol names") {
  CHECK(is_valid_symbol_name("meet"));
  CHECK(is_valid_symbol_name("+"));
  CHECK(is_valid_symbol_name("x"));
  CHECK(is_valid_symbol_name("x1a"));
  CHECK_FALSE(is_valid_symbol_name("x1"));
  CHECK_FALSE(is_valid_symbol_name("x12"));
  CHECK_FALSE(is_valid_symbol_name(""));
  CHECK_FALSE(is_valid_symbol_name("1"));
  CHECK_FALSE(is_valid_symbol_name("a b"));
  CHECK(error_kind([] { Signature({{"f", 1}, {"f", 2}}); }) == ErrorKind::invalid_input);
  CHECK(error_kind([] { Signature({{"x3", 1}}); }) == ErrorKind::invalid_input);
}

TEST_CASE("parse_term") {
  auto const sig = group_sig();

  SUBCASE("application") {
    auto t = parse_term("(+ x1 x2)", sig, 2);
    REQUIRE_FALSE(t.is_variable());
    CHECK(t.symbol() == "+");
    REQUIRE(t.args().size() == 2);
    CHECK(t.args()[0] == Term::variable(1));
    CHECK(t.args()[1] == Term::variable(2));
    CHECK(t.depth() == 1);
    CHECK(t.max_variable() == 2);
  }

  SUBCASE("whitespace and constants") {
    auto t = parse_term("  ( +\tx1\n(e) ) ", sig, 1);
    CHECK(format_term(t) == "(+ x1 (e))");
    CHECK(parse_term("e", sig, 0) == parse_term("(e)", sig, 0));
    CHECK(format_term(parse_term("e", sig, 0)) == "(e)");
    CHECK(parse_term("(e)", sig, 0).depth() == 0);
  }

  SUBCASE("errors") {
    CHECK(error_kind([&] { parse_term("x3", sig, 2); }) == ErrorKind::variable_out_of_range);
    CHECK(error_kind([&] { parse_term("x0", sig, 2); }) == ErrorKind::variable_out_of_range);
    CHECK(error_kind([&] { parse_term("(+ x1", sig, 2); }) == ErrorKind::syntax_error);
    CHECK(error_kind([&] { parse_term("(+ x1 x2))", sig, 2); }) == ErrorKind::syntax_error);
    CHECK(error_kind([&] { parse_term("", sig, 2); }) == ErrorKind::syntax_error);
    CHECK(error_kind([&] { parse_term("()", sig, 2); }) == ErrorKind::syntax_error);
    CHECK(error_kind([&] { parse_term("(x1 x2)", sig, 2); }) == ErrorKind::syntax_error);
    CHECK(error_kind([&] { parse_term("x01", sig, 2); }) == ErrorKind::syntax_error);
    CHECK(error_kind([&] { parse_term("(* x1 x2)", sig, 2); }) == ErrorKind::unknown_symbol);
    CHECK(error_kind([&] { parse_term("(+ x1)", sig, 2); }) == ErrorKind::arity_mismatch);
    CHECK(error_kind([&] { parse_term("(- x1 x2)", sig, 2); }) == ErrorKind::arity_mismatch);
    CHECK(error_kind([&] { parse_term("(e x1)", sig, 2); }) == ErrorKind::arity_mismatch);
  }
}

TEST_CASE("format_term") {
  auto const sig = group_sig();
  CHECK(format_term(Term::variable(1)) == "x1");
  CHECK(format_term(Term::apply(meet_sig(), "meet", {Term::variable(1), Term::variable(2)}))
        == "(meet x1 x2)");
  auto nested = Term::apply(
      sig, "+", {Term::variable(1), Term::apply(sig, "-", {Term::variable(2)})});
  CHECK(format_term(nested) == "(+ x1 (- x2))");
  CHECK(nested.depth() == 2);
  CHECK(error_kind([&] { Term::apply(sig, "+", {Term::variable(1)}); })
        == ErrorKind::arity_mismatch);
  CHECK(error_kind([&] { Term::apply(sig, "meet", {}); }) == ErrorKind::unknown_symbol);
}

TEST_CASE("eval_term") {
  auto const z2 = corpus("z2group");
  auto const s2 = corpus("s2");
  std::vector<Element> one_one{1, 1}, zero_one{0, 1};
  CHECK(eval_term(parse_term("(+ x1 x2)", z2.signature(), 2), z2, one_one) == 0);
  CHECK(eval_term(parse_term("(meet x1 x2)", s2.signature(), 2), s2, zero_one) == 0);
  for (Element a = 0; a < 2; ++a) {
    for (Element b = 0; b < 2; ++b) {
      std::vector<Element> p{a, b};
      CHECK(eval_term(Term::variable(1), z2, p) == a);
      CHECK(eval_term(Term::variable(2), s2, p) == b);
    }
  }
  auto const plus = parse_term("(+ x1 x2)", z2.signature(), 2);
  CHECK(error_kind([&] { eval_term(plus, s2, one_one); }) == ErrorKind::signature_mismatch);
  std::vector<Element> short_point{1};
  CHECK(error_kind([&] { eval_term(plus, z2, short_point); })
        == ErrorKind::variable_out_of_range);
  std::vector<Element> outside{2, 0};
  CHECK(error_kind([&] { eval_term(plus, z2, outside); }) == ErrorKind::out_of_range);
}

TEST_CASE("evaluation agrees with the tables") {
  for (auto const& file : test::corpus_files()) {
    auto const a = corpus(file);
    CAPTURE(file);
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
      auto const& s = a.signature()[op];
      std::vector<Term> args;
      for (std::size_t i = 1; i <= s.arity; ++i) {
        args.push_back(Term::variable(i));
      }
      auto const t = Term::apply(a.signature(), s.name, args);
      for (auto const& point : test::all_tuples(a.size(), s.arity)) {
        CHECK(eval_term(t, a, point) == test::lookup(a, op, point));
      }
    }
  }
}

TEST_CASE("enumerate_terms") {
  auto const meet = meet_sig();

  SUBCASE("small cases") {
    auto d0 = enumerate_terms(meet, 1, 0);
    REQUIRE(d0.size() == 1);
    CHECK(format_term(d0[0]) == "x1");
    auto d1 = enumerate_terms(meet, 1, 1);
    REQUIRE(d1.size() == 2);
    CHECK(format_term(d1[0]) == "x1");
    CHECK(format_term(d1[1]) == "(meet x1 x1)");
    auto n2 = enumerate_terms(meet, 2, 1);
    CHECK(n2.size() == 6);
    // 6 terms of depth <= 1, so 2 + 36 at depth 2.
    CHECK(enumerate_terms(meet, 2, 2).size() == 38);
  }

  SUBCASE("ordering, depth and nesting") {
    for (auto const& sig : {meet, group_sig()}) {
      std::set<std::string> previous;
      for (std::size_t d = 0; d <= 2; ++d) {
        auto const terms = enumerate_terms(sig, 2, d);
        std::set<std::string> current;
        for (std::size_t i = 0; i < terms.size(); ++i) {
          CHECK(terms[i].depth() <= d);
          current.insert(format_term(terms[i]));
          if (i > 0) {
            auto const& x = terms[i - 1];
            auto const& y = terms[i];
            bool ordered  = x.depth() < y.depth()
                           || (x.depth() == y.depth() && format_term(x) < format_term(y));
            CHECK(ordered);
          }
          CHECK(parse_term(format_term(terms[i]), sig, 2) == terms[i]);
        }
        CHECK(current.size() == terms.size());
        CHECK(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
        previous = std::move(current);
      }
    }
  }

  SUBCASE("cap") {
    Limits limits;
    limits.terms = 10;
    CHECK(error_kind([&] { enumerate_terms(meet, 2, 2, limits); }) == ErrorKind::limit_exceeded);
  }
}
