#include <set>

#include "demod/codec.hpp"
#include "demod/s_axioms.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

namespace {

Theory arith() {
  return parse_theory(
      "(theory (sort N) (fun z () N) (fun s (N) N) (fun + (N N) N) (pred P (N)))");
}

}  // namespace

TEST_CASE("tree_to_term mirrors the tree") {
  CHECK(print_term(tree_to_term(nat_tree(2))) == "(s (s 0))");
  Theory th = arith();
  TreeCodec codec(th.sig);
  Signature S = s_extended_signature(codec.lang(), codec.prs().defs());
  TreePtr t = codec.encode_proof(parse_proof_term("(lam a (var a))", th.sig));
  TermPtr tm = tree_to_term(t);
  CHECK(as_app(tm)->fn == "ImpI");
  // closed, well-sorted in the extended signature, and print-stable
  CHECK(free_vars(tm).empty());
  CHECK(term_equal(parse_term(print_term(tm), S), tm));
}

TEST_CASE("extended signature carries the relations") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  Signature S = s_extended_signature(codec.lang(), codec.prs().defs());
  CHECK(S.sorts == std::vector<Name>{kTreeSort});
  for (const char* p : {"=", "Nat", "Le", "Sort", "TermVar", "Term", "ProofVar", "Proof",
                        "Elim", "Red", "Redn", "Red*", "SN", "L"})
    CHECK(S.predicate(p) != nullptr);
  // every language constructor is a function, prefixed ones included
  CHECK(S.function("ImpI") != nullptr);
  CHECK(S.function("fn.+") != nullptr);
  CHECK(S.function("cons") != nullptr);
  // formulas over the relations parse
  FormulaPtr f = parse_formula(
      "(forall (x tree) (imp (Proof x) (exists (n tree) (and (Nat n) (SN x)))))", S);
  CHECK(is_closed(f));
}

TEST_CASE("derived relations unfold to their definitions") {
  FormulaTemplate redstar = derived_relation("Red*");
  CHECK(redstar.holes.size() == 2);
  FormulaPtr inst = instantiate_template(
      redstar, {mk_var("u", Name(kTreeSort)), mk_var("v", Name(kTreeSort))});
  CHECK(print_formula(inst).find("Redn") != std::string::npos);

  FormulaTemplate sn = derived_relation("SN");
  CHECK(sn.holes.size() == 1);
  FormulaPtr sninst = instantiate_template(sn, {mk_var("u", Name(kTreeSort))});
  CHECK(print_formula(sninst).find("Proof") != std::string::npos);
  CHECK(print_formula(sninst).find("Redn") != std::string::npos);

  CHECK_THROWS_AS(derived_relation("nope"), InputError);
}

TEST_CASE("emitted theory is well-formed and closed") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  Theory S = emit_s_axioms(codec.lang(), codec.prs().defs(), {});
  CHECK(S.axioms.size() > 100);
  for (const FormulaPtr& a : S.axioms) CHECK(is_closed(a));
  // and it reparses through its own printer
  Theory back = parse_theory(print_theory(S));
  CHECK(back.axioms.size() == S.axioms.size());
}

TEST_CASE("axiom families are all present") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  TreeLang lang = codec.lang();
  std::vector<PrimRecDef> defs = codec.prs().defs();
  Theory S = emit_s_axioms(lang, defs, {});

  std::size_t c = lang.ctors.size();
  std::size_t d = defs.size();
  std::size_t clauses = 0;
  for (const PrimRecDef& def : defs) clauses += def.clauses.size();
  CHECK(clauses == d * c);  // every definition covers every constructor
  // refl + sym/trans, congruence per function symbol (constructors and
  // definitions), injectivity per constructor, ordered non-confusion pairs,
  // and one equation per defining clause
  std::size_t expect = 2 + (c + d) + c + c * (c - 1) + clauses;
  CHECK(S.axioms.size() == expect);
}

TEST_CASE("induction instances add one axiom each") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  FormulaTemplate inst;
  inst.holes = {"x"};
  Signature S = s_extended_signature(codec.lang(), codec.prs().defs());
  inst.body = parse_formula("(Nat x)", S);
  Theory with = emit_s_axioms(codec.lang(), codec.prs().defs(), {inst});
  Theory without = emit_s_axioms(codec.lang(), codec.prs().defs(), {});
  CHECK(with.axioms.size() == without.axioms.size() + 1);
  CHECK(is_closed(with.axioms.back()));
}
