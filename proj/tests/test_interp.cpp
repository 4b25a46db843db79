#include "demod/interp.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

namespace {

Theory arith() {
  return parse_theory(
      "(theory (sort N) (fun z () N) (fun s (N) N) (fun + (N N) N)"
      " (pred P (N)) (pred E (N)))");
}

// N into its even fragment: s doubles, E carves out the image.
InterpretationSpec doubling(const Theory& T) {
  return parse_interp_spec_text(
      "(interp (sort N N (rel (x) (E x)))"
      " (fun z (()) z)"
      " (fun s ((x)) (s (s x)))"
      " (fun + ((x y)) (+ x y))"
      " (pred P ((x)) (P x))"
      " (pred E ((x)) (E x)))",
      T.sig, T.sig);
}

}  // namespace

TEST_CASE("star naming is injective on distinct names") {
  CHECK(star_name("x") != "x");
  CHECK(star_name("x") != star_name("y"));
  CHECK(star_name("x") == star_name("x"));
}

TEST_CASE("term translation applies the macros") {
  Theory T = arith();
  InterpretationSpec spec = doubling(T);
  TermPtr t = parse_term("(s (+ x (s z)))", T.sig);
  CHECK(print_term(translate_term(spec, t)) ==
        "(s (s (+ " + std::string(star_name("x")) + " (s (s z)))))");
}

TEST_CASE("formula translation relativizes quantifiers") {
  Theory T = arith();
  InterpretationSpec spec = doubling(T);
  FormulaPtr A = parse_formula("(forall (x N) (imp (P x) (P (s x))))", T.sig);
  FormulaPtr tr = translate_formula(spec, A);
  Name xs = star_name("x");
  CHECK(print_formula(tr) ==
        "(forall (" + xs + " N) (imp (E " + xs + ") (imp (P " + xs + ") (P (s (s " + xs +
            "))))))");

  FormulaPtr Ex = parse_formula("(exists (x N) (P x))", T.sig);
  CHECK(print_formula(translate_formula(spec, Ex)) ==
        "(exists (" + xs + " N) (and (E " + xs + ") (P " + xs + ")))");

  // connectives map homomorphically
  FormulaPtr B = parse_formula("(and top (or bot (P z)))", T.sig);
  CHECK(print_formula(translate_formula(spec, B)) == "(and top (or bot (P z)))");
}

TEST_CASE("theorem statements guard the free variables") {
  Theory T = arith();
  InterpretationSpec spec = doubling(T);
  FormulaPtr A = parse_formula("(P x)", T.sig);
  FormulaPtr st = theorem_statement(spec, A);
  CHECK(is_closed(st));
  Name xs = star_name("x");
  CHECK(print_formula(st) == "(forall (" + xs + " N) (imp (E " + xs + ") (P " + xs + ")))");
}

TEST_CASE("obligations cover sorts, functions and axioms") {
  Theory T = arith();
  T.axioms.push_back(parse_formula("(P z)", T.sig));
  InterpretationSpec spec = doubling(T);
  std::vector<Obligation> obs = emit_interpretation_obligations(spec, T, T);

  std::size_t sort_nonempty = 0, fun_closure = 0, axioms = 0;
  for (const Obligation& o : obs) {
    CHECK(is_closed(o.formula));
    if (o.tag == "sort-nonempty") ++sort_nonempty;
    if (o.tag == "fun-closure") ++fun_closure;
    if (o.tag == "axiom") ++axioms;
  }
  CHECK(sort_nonempty == 1);
  CHECK(fun_closure == 3);
  CHECK(axioms == 1);

  // the closure obligation for s states E is closed under double successor
  bool found = false;
  for (const Obligation& o : obs)
    if (o.provenance.find(" s") != std::string::npos && o.tag == "fun-closure")
      found = print_formula(o.formula).find("(s (s") != std::string::npos;
  CHECK(found);
}

TEST_CASE("item-2 equivalences are emitted on request") {
  Theory T = arith();
  InterpretationSpec spec = doubling(T);
  std::size_t base = emit_interpretation_obligations(spec, T, T).size();
  std::size_t with = emit_interpretation_obligations(spec, T, T, true).size();
  CHECK(with > base);
}

TEST_CASE("spec parsing rejects bad entries") {
  Theory T = arith();
  CHECK_THROWS_AS(parse_interp_spec_text("(interp (sort M N (rel (x) top)))", T.sig, T.sig),
                  InputError);
  CHECK_THROWS_AS(parse_interp_spec_text(
                      "(interp (sort N N (rel (x) top)) (fun s ((x)) (s (s y))))", T.sig,
                      T.sig),
                  InputError);
  CHECK_THROWS_AS(
      parse_interp_spec_text("(interp (sort N N (rel (x) top)) (frob q))", T.sig, T.sig),
      InputError);
  // leftovers are collected instead when requested
  std::vector<SExpr> extra;
  parse_interp_spec(parse_sexpr("(interp (sort N N (rel (x) top)) (frob q))"), T.sig,
                    T.sig, &extra);
  CHECK(extra.size() == 1);
  CHECK(extra[0].head() == "frob");
}

TEST_CASE("identity interpretation is the identity on formulas") {
  Theory T = arith();
  InterpretationSpec id = parse_interp_spec_text(
      "(interp (sort N N (rel (x) top))"
      " (fun z (()) z) (fun s ((x)) (s x)) (fun + ((x y)) (+ x y))"
      " (pred P ((x)) (P x)) (pred E ((x)) (E x)))",
      T.sig, T.sig);
  FormulaPtr A = parse_formula("(imp (P (+ x z)) (P z))", T.sig);
  FormulaPtr tr = translate_formula(id, A);
  // quantifier-free: only the variable renaming remains
  CHECK(print_formula(tr) ==
        "(imp (P (+ " + std::string(star_name("x")) + " z)) (P z))");
}
