#include "demod/realize.hpp"
#include "demod/s_axioms.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

namespace {

struct Setup {
  Theory T;
  TreeCodec codec;
  Signature S;
  RealizabilitySpec spec;

  Setup()
      : T(parse_theory("(theory (sort N) (fun z () N) (fun s (N) N) (fun + (N N) N)"
                       " (pred P (N)) (rule term (+ x z) x))")),
        codec(T.sig),
        S(s_extended_signature(codec.lang(), codec.prs().defs())),
        spec(parse_realizability_spec_text(sort_entry() +
                                               " (fun z (()) fn.z)"
                                               " (fun s ((x)) (fn.s x))"
                                               " (fun + ((x y)) (fn.+ x y))"
                                               " (realpred P ((n)) (p) (and (SN p) (= n n))))",
                                           T.sig, S)) {}

  static std::string sort_entry() {
    // Term(x, code of N); the numeral writes out as nested successors
    std::string num = "0";
    for (int i = 0; i < 40; ++i) num = "(s " + num + ")";
    return "(interp (sort N tree (rel (x) (Term x (Sortc " + num + "))))";
  }

  TermPtr pi() const { return mk_var("p", Name(kTreeSort)); }
};

}  // namespace

TEST_CASE("top and bot realize as strong normalization alone") {
  Setup u;
  CHECK(print_formula(realize(u.spec, u.codec, mk_top(), u.pi())) == "(SN p)");
  CHECK(print_formula(realize(u.spec, u.codec, mk_bot(), u.pi())) == "(SN p)");
}

TEST_CASE("atoms instantiate the realizability template at translated arguments") {
  Setup u;
  FormulaPtr A = parse_formula("(P (s z))", u.T.sig);
  CHECK(print_formula(realize(u.spec, u.codec, A, u.pi())) ==
        "(and (SN p) (= (fn.s fn.z) (fn.s fn.z)))");
}

TEST_CASE("implication clause quantifies over reducts and arguments") {
  Setup u;
  FormulaPtr A = parse_formula("(imp top top)", u.T.sig);
  CHECK(print_formula(realize(u.spec, u.codec, A, u.pi())) ==
        "(and (SN p) (forall (_a0 tree) (forall (_q0 tree)"
        " (imp (Red* p (ImpI _a0 _q0))"
        " (forall (_f0 tree) (imp (SN _f0) (SN (PSubst _q0 _a0 _f0))))))))");
}

TEST_CASE("conjunction and disjunction clauses follow their introductions") {
  Setup u;
  std::string conj =
      print_formula(realize(u.spec, u.codec, parse_formula("(and top top)", u.T.sig), u.pi()));
  CHECK(conj.find("(Red* p (AndI _p10 _p20))") != std::string::npos);
  std::string disj =
      print_formula(realize(u.spec, u.codec, parse_formula("(or top top)", u.T.sig), u.pi()));
  CHECK(disj.find("(OrI1 _p10)") != std::string::npos);
  CHECK(disj.find("(OrI2 _p20)") != std::string::npos);
}

TEST_CASE("quantifier clauses carry the sort code and the star variable") {
  Setup u;
  std::string fa = print_formula(
      realize(u.spec, u.codec, parse_formula("(forall (x N) (P x))", u.T.sig), u.pi()));
  CHECK(fa.find("ForallI") != std::string::npos);
  CHECK(fa.find("TSubst") != std::string::npos);
  CHECK(fa.find("Sortc") != std::string::npos);
  CHECK(fa.find(star_name("x")) != std::string::npos);

  std::string ex = print_formula(
      realize(u.spec, u.codec, parse_formula("(exists (x N) (P x))", u.T.sig), u.pi()));
  CHECK(ex.find("ExistsI") != std::string::npos);
  CHECK(ex.find("(exists (" + star_name("x") + " tree)") != std::string::npos);
}

TEST_CASE("realized formulas are closed and well-sorted when the source is closed") {
  Setup u;
  const char* sources[] = {
      "(P z)", "(imp (P z) (P (s z)))", "(forall (x N) (P x))",
      "(exists (x N) (and (P x) top))", "(or top (imp top bot))",
  };
  for (const char* s : sources) {
    FormulaPtr r = realize(u.spec, u.codec, parse_formula(s, u.T.sig), u.pi());
    auto fv = free_vars(r);
    REQUIRE(fv.size() == 1);  // only the realizer remains free
    CHECK(fv[0].first == "p");
    CHECK(fv[0].second == kTreeSort);
    // reparses against the extended signature
    CHECK(print_formula(parse_formula(print_formula(r), u.S)) == print_formula(r));
  }
}

TEST_CASE("cr_formula states the four candidate conditions") {
  Setup u;
  FormulaPtr A = mk_atom("SN", {mk_var("p", Name(kTreeSort))});
  FormulaPtr cr = cr_formula("p", A);
  CHECK(is_closed(cr));
  std::string s = print_formula(cr);
  CHECK(s.find("(Proof p)") != std::string::npos);
  CHECK(s.find("ProofVar") != std::string::npos);
  CHECK(s.find("Axiom") != std::string::npos);
  CHECK(s.find("(Elim ") != std::string::npos);
  CHECK(s.find("Red ") != std::string::npos);
}

TEST_CASE("sequent realizers are folded under encoded hypothesis variables") {
  Setup u;
  ProofFile pf = parse_proof_file(
      "(proof (context (a (P z))) (goal (P z)) (term (var a)))", u.T.sig);
  FormulaPtr r = realize_sequent(u.spec, u.codec, pf.seq, u.pi());
  std::string s = print_formula(r);
  // the realizer position holds ImpI(code of a, p)
  CHECK(s.find("(ImpI (Axiom (s 0)) p)") != std::string::npos);
  auto fv = free_vars(r);
  REQUIRE(fv.size() == 1);
  CHECK(fv[0].first == "p");
}

TEST_CASE("obligations cover the interpretation conditions") {
  Setup u;
  Theory U;
  U.sig = u.S;
  std::vector<Obligation> obs = emit_realizability_obligations(u.spec, u.T, U);
  std::size_t sorts = 0, funs = 0, preds = 0, rules = 0;
  for (const Obligation& o : obs) {
    CHECK(is_closed(o.formula));
    if (o.tag == "sort-nonempty") ++sorts;
    if (o.tag == "fun-closure") ++funs;
    if (o.tag == "pred-candidate") ++preds;
    if (o.tag == "rule-congruence") ++rules;
  }
  CHECK(sorts == 1);
  CHECK(funs == 3);
  CHECK(preds == 1);
  CHECK(rules == 1);  // one atomic context: P at its only slot
  CHECK(obs.size() == 6);

  // missing coverage is rejected up front
  RealizabilitySpec partial = parse_realizability_spec_text(
      Setup::sort_entry() + " (fun z (()) fn.z) (fun s ((x)) (fn.s x))"
                            " (fun + ((x y)) (fn.+ x y)))",
      u.T.sig, u.S);
  CHECK_THROWS_AS(emit_realizability_obligations(partial, u.T, U), InputError);
}

TEST_CASE("statement builders close over parameters") {
  Setup u;
  RealStatement t1 = typing_term_statement(u.spec, u.T.sig, parse_term("(+ x z)", u.T.sig));
  CHECK(t1.kind == "typing-term");
  CHECK(is_closed(t1.formula));
  CHECK(print_formula(t1.formula).find("Term") != std::string::npos);

  RealStatement t2 =
      typing_formula_statement(u.spec, u.codec, parse_formula("(P x)", u.T.sig));
  CHECK(t2.kind == "typing-formula");
  CHECK(is_closed(t2.formula));

  RealStatement t3 =
      normalization_statement(u.spec, u.codec, parse_formula("(P z)", u.T.sig));
  CHECK(t3.kind == "normalization");
  CHECK(is_closed(t3.formula));
  CHECK(print_formula(t3.formula).find("(SN p)") != std::string::npos);

  ProofFile pf = parse_proof_file(
      "(proof (context (a (P z))) (goal (P z)) (term (var a)))", u.T.sig);
  RealStatement t4 = normalization_sequent_statement(u.spec, u.codec, pf.seq);
  CHECK(t4.kind == "normalization-sequent");
  CHECK(is_closed(t4.formula));

  RealStatement t5 = existence_statement(u.spec, u.codec, pf.seq, pf.term);
  CHECK(t5.kind == "existence");
  CHECK(is_closed(t5.formula));
  CHECK(print_formula(t5.formula).find("ImpE") == std::string::npos);
}

TEST_CASE("realpred bodies may not leak variables") {
  Setup u;
  CHECK_THROWS_AS(parse_realizability_spec_text(
                      Setup::sort_entry() + " (fun z (()) fn.z) (fun s ((x)) (fn.s x))"
                                            " (fun + ((x y)) (fn.+ x y))"
                                            " (realpred P ((n)) (p) (SN q)))",
                      u.T.sig, u.S),
                  InputError);
}
