#include "demod/names.hpp"
#include "demod/sexpr.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

TEST_CASE("sexpr parsing and printing") {
  SExpr e = parse_sexpr("(a (b c) () d)");
  CHECK(e.size() == 4);
  CHECK(e.at(0).is_atom("a"));
  CHECK(e.at(1).size() == 2);
  CHECK(e.at(2).size() == 0);
  CHECK(print_sexpr(e) == "(a (b c) () d)");

  CHECK_THROWS_AS(parse_sexpr("(a b"), InputError);
  CHECK_THROWS_AS(parse_sexpr("a b"), InputError);
  CHECK_THROWS_AS(parse_sexpr(")"), InputError);
  CHECK_THROWS_AS(parse_sexpr(""), InputError);
}

TEST_CASE("sexpr comments and locations") {
  SExpr e = parse_sexpr(";; header\n(f ; mid\n  x)");
  CHECK(e.head() == "f");
  CHECK(e.at(1).line == 3);

  std::vector<SExpr> forms = parse_sexprs("(a) (b) ;; tail\n");
  CHECK(forms.size() == 2);
}

TEST_CASE("identifier numeration is a bijection on a sample") {
  CHECK(name_index("a") == 1);
  CHECK(name_index("z") == 26);
  CHECK(name_index("A") == 27);
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    std::string s = index_name(n);
    REQUIRE(is_ident(s));
    REQUIRE(name_index(s) == n);
  }
  // index respects shortlex: the numeration lists names in order
  for (std::uint64_t n = 1; n < 500; ++n)
    CHECK(shortlex_less(index_name(n), index_name(n + 1)));
}

TEST_CASE("successor matches the numeration") {
  CHECK(succ_name("a") == "b");
  CHECK(succ_name("z") == "A");
  for (std::uint64_t n = 1; n < 200; ++n)
    CHECK(succ_name(index_name(n)) == index_name(n + 1));
}

namespace {

Theory arith() {
  return parse_theory(
      "(theory (sort N) (fun z () N) (fun s (N) N) (fun + (N N) N)"
      " (pred P (N)) (rule term (+ x z) x))");
}

}  // namespace

TEST_CASE("theory parsing") {
  Theory th = arith();
  CHECK(th.sig.sorts.size() == 1);
  CHECK(th.sig.functions.size() == 3);
  CHECK(th.rules.size() == 1);
  CHECK(th.rules[0].term_level);

  CHECK_THROWS_AS(parse_theory("(theory (sort N) (sort N))"), InputError);
  CHECK_THROWS_AS(parse_theory("(theory (fun f (M) M))"), InputError);
  CHECK_THROWS_AS(parse_theory("(theory (pred and (N)))"), InputError);
}

TEST_CASE("term parsing infers sorts at use sites") {
  Theory th = arith();
  TermPtr t = parse_term("(+ x (s z))", th.sig);
  CHECK(print_term(t) == "(+ x (s z))");
  CHECK(sort_of(t, th.sig) == "N");
  const Term::App* a = as_app(t);
  REQUIRE(a);
  CHECK(as_var(a->args[0])->sort == "N");

  CHECK_THROWS_AS(parse_term("(s z q)", th.sig), InputError);
  CHECK_THROWS_AS(parse_term("(q z)", th.sig), InputError);
}

TEST_CASE("formula parsing and printing roundtrip") {
  Theory th = arith();
  const char* texts[] = {
      "(P z)",
      "(imp (P z) (P (s z)))",
      "(and top (or bot (P (+ z z))))",
      "(forall (x N) (imp (P x) (exists (y N) (P (+ y x)))))",
  };
  for (const char* s : texts) {
    FormulaPtr f = parse_formula(s, th.sig);
    CHECK(print_formula(f) == s);
    CHECK(print_formula(parse_formula(print_formula(f), th.sig)) == s);
  }
  CHECK_THROWS_AS(parse_formula("(P z z)", th.sig), InputError);
  CHECK_THROWS_AS(parse_formula("(forall x (P x))", th.sig), InputError);
  CHECK_THROWS_AS(parse_formula("(Q z)", th.sig), InputError);
}

TEST_CASE("quantifiers bind and shadow") {
  Theory th = arith();
  FormulaPtr f = parse_formula("(forall (x N) (forall (x N) (P x)))", th.sig);
  CHECK(free_vars(f).empty());
  FormulaPtr g = parse_formula("(forall (x N) (P y))", th.sig);
  auto fv = free_vars(g);
  REQUIRE(fv.size() == 1);
  CHECK(fv[0].first == "y");
}

TEST_CASE("substitution respects binders") {
  Theory th = arith();
  FormulaPtr f = parse_formula("(and (P x) (forall (x N) (P x)))", th.sig);
  FormulaPtr g = subst_in_formula(f, "x", parse_term("(s z)", th.sig));
  CHECK(print_formula(g) == "(and (P (s z)) (forall (x N) (P x)))");
}

TEST_CASE("theory printing reparses") {
  Theory th = arith();
  Theory back = parse_theory(print_theory(th));
  CHECK(back.sig.functions.size() == th.sig.functions.size());
  CHECK(back.rules.size() == th.rules.size());
  CHECK(print_theory(back) == print_theory(th));
}
