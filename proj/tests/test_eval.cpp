#include <algorithm>

#include "demod/enumerate.hpp"
#include "demod/eval_model.hpp"
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

  Setup()
      : T(parse_theory("(theory (sort N) (fun z () N) (fun s (N) N) (fun + (N N) N)"
                       " (pred P (N)))")),
        codec(T.sig),
        S(s_extended_signature(codec.lang(), codec.prs().defs())) {}

  EvalVerdict ev(const std::string& f, EvalBounds b = {6, 50}) {
    return eval_formula(codec, parse_formula(f, S), b);
  }

  std::string enc(const std::string& proof) {
    return print_term(tree_to_term(codec.encode_proof(parse_proof_term(proof, T.sig))));
  }
};

const char* kOmega = "(app (lam a (app (var a) (var a))) (lam a (app (var a) (var a))))";
const char* kGrow =
    "(app (lam a (app (app (var a) (var a)) (var a)))"
    " (lam a (app (app (var a) (var a)) (var a))))";

}  // namespace

TEST_CASE("ground atoms evaluate through the builtins") {
  Setup u;
  CHECK(u.ev("(= (s 0) (s 0))").verdict == Verdict::True);
  CHECK(u.ev("(= (s 0) 0)").verdict == Verdict::False);
  CHECK(u.ev("(Nat (s (s 0)))").verdict == Verdict::True);
  CHECK(u.ev("(Nat (Axiom (s 0)))").verdict == Verdict::False);
  CHECK(u.ev("(Le (s 0) (s (s 0)))").verdict == Verdict::True);
  CHECK(u.ev("(L (cons 0 nil))").verdict == Verdict::True);
  CHECK(u.ev("(Proof (ImpI (Axiom (s 0)) (Axiom (s 0))))").verdict == Verdict::True);
  CHECK(u.ev("(Proof (Sortc (s 0)))").verdict == Verdict::False);
}

TEST_CASE("strong normalization is decided natively on closed codes") {
  Setup u;
  CHECK(u.ev("(SN TopI)").verdict == Verdict::True);
  CHECK(u.ev("(SN " + u.enc("(lam a (var a))") + ")").verdict == Verdict::True);
  CHECK(u.ev("(SN " + u.enc(kOmega) + ")").verdict == Verdict::False);
  // growing term: no cycle below the bound, so the verdict stays open
  EvalVerdict v = u.ev("(SN " + u.enc(kGrow) + ")", {6, 8});
  CHECK(v.verdict == Verdict::Unknown);
  CHECK(v.reason.find("sn-bound") != std::string::npos);
  // non-proof trees are not SN members
  CHECK(u.ev("(SN (Sortc (s 0)))").verdict == Verdict::False);
}

TEST_CASE("connectives are strong Kleene") {
  Setup u;
  std::string open = "(SN " + u.enc(kGrow) + ")";
  EvalBounds b{6, 8};
  CHECK(u.ev("(or " + open + " top)", b).verdict == Verdict::True);
  CHECK(u.ev("(and " + open + " bot)", b).verdict == Verdict::False);
  CHECK(u.ev("(and " + open + " top)", b).verdict == Verdict::Unknown);
  CHECK(u.ev("(imp " + open + " top)", b).verdict == Verdict::True);
  CHECK(u.ev("(imp bot " + open + ")", b).verdict == Verdict::True);
  CHECK(u.ev("(not " + open + ")", b).verdict == Verdict::Unknown);
  CHECK(u.ev("top").verdict == Verdict::True);
  CHECK(u.ev("bot").verdict == Verdict::False);
}

TEST_CASE("reduction atoms match the native engine") {
  Setup u;
  std::string redex = u.enc("(fst (pair topI (var a)))");
  std::string value = u.enc("topI");
  CHECK(u.ev("(Red " + redex + " " + value + ")").verdict == Verdict::True);
  CHECK(u.ev("(Red " + value + " " + redex + ")").verdict == Verdict::False);
  CHECK(u.ev("(Redn " + redex + " (s 0) " + value + ")").verdict == Verdict::True);
  CHECK(u.ev("(Redn " + redex + " 0 " + redex + ")").verdict == Verdict::True);
  CHECK(u.ev("(Red* " + redex + " " + value + ")").verdict == Verdict::True);
  CHECK(u.ev("(Red* " + redex + " " + redex + ")").verdict == Verdict::True);
  CHECK(u.ev("(Red* " + value + " " + redex + ")").verdict == Verdict::False);
}

TEST_CASE("reduction-guided quantifier blocks are exact") {
  Setup u;
  std::string redex = u.enc("(fst (pair topI topI))");
  // every reduct of the redex is TopI
  CHECK(u.ev("(forall (y tree) (imp (Red " + redex + " y) (= y TopI)))").verdict ==
        Verdict::True);
  CHECK(u.ev("(forall (y tree) (imp (Red " + redex + " y) (= y (Axiom (s 0)))))").verdict ==
        Verdict::False);
  CHECK(u.ev("(exists (y tree) (and (Red " + redex + " y) (SN y)))").verdict ==
        Verdict::True);
  // reachability witness: the two-step reduct through a constructor pattern
  std::string two = u.enc("(pair (fst (pair topI topI)) topI)");
  CHECK(u.ev("(exists (p1 tree) (exists (p2 tree) (and (Red* " + two +
             " (AndI p1 p2)) (= p1 TopI))))")
            .verdict == Verdict::True);
}

TEST_CASE("pinned quantifiers scan constructive pools") {
  Setup u;
  // all numerals below the bound
  CHECK(u.ev("(forall (n tree) (imp (Nat n) (Le 0 n)))").verdict == Verdict::True);
  CHECK(u.ev("(exists (n tree) (and (Nat n) (= (s 0) n)))").verdict == Verdict::True);
  // an existential with no witness within the bound stays Unknown
  EvalVerdict v = u.ev("(exists (n tree) (and (Nat n) (Le (s (s (s (s (s (s (s 0))))))) n)))",
                       {4, 50});
  CHECK(v.verdict == Verdict::Unknown);
  CHECK(v.reason.find("tree-bound") != std::string::npos);
  // SN-pinned universal: every small strongly normalizing proof keeps SN
  // after substituting TopI for its first variable
  CHECK(u.ev("(forall (q tree) (imp (SN q) (SN (PSubst q (Axiom (s 0)) TopI))))", {4, 50})
            .verdict == Verdict::True);
}

TEST_CASE("raw sampling refutes universals and witnesses existentials") {
  Setup u;
  CHECK(u.ev("(forall (x tree) (Nat x))").verdict == Verdict::False);
  CHECK(u.ev("(exists (x tree) (and (L x) (Nat x)))").verdict == Verdict::True);
  EvalVerdict v = u.ev("(forall (x tree) (L x))");
  CHECK(v.verdict == Verdict::Unknown);  // sampling can never affirm a universal
}

TEST_CASE("realized implication identity evaluates to true") {
  Setup u;
  RealizabilitySpec spec;
  spec.base.sorts.emplace_back(
      "N", SortInterp{Name(kTreeSort),
                      FormulaTemplate{{"x"},
                                      mk_atom("Term", {mk_var("x", Name(kTreeSort)),
                                                       tree_to_term(u.codec.encode_sort("N"))})}});
  RealPred rp;
  rp.holes = {"n"};
  rp.pi = "p";
  rp.body = mk_atom("SN", {mk_var("p", Name(kTreeSort))});
  spec.realpreds.emplace_back("P", rp);

  FormulaPtr A = parse_formula("(imp top top)", u.T.sig);
  TermPtr realizer =
      tree_to_term(u.codec.encode_proof(parse_proof_term("(lam a (var a))", u.T.sig)));
  FormulaPtr realized = realize(spec, u.codec, A, realizer);
  EvalVerdict v = eval_formula(u.codec, realized, {6, 50});
  CHECK(v.verdict == Verdict::True);

  // and the non-normalizing realizer is rejected
  TermPtr bad = tree_to_term(u.codec.encode_proof(parse_proof_term(kOmega, u.T.sig)));
  CHECK(eval_formula(u.codec, realize(spec, u.codec, A, bad), {6, 50}).verdict ==
        Verdict::False);
}

TEST_CASE("relation pools agree with brute-force builtin filtering") {
  Setup u;
  TreeModel model(u.codec);
  PrEval ev(u.codec.prs());
  EvalBounds b{4, 50};
  std::vector<TreePtr> all = enumerate_trees(u.codec.lang(), 4);

  auto brute1 = [&](const char* rel) {
    std::vector<TreePtr> out;
    for (TreePtr t : all)
      if (ev.call(rel, {t}) == nat_tree(1)) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto pool = [&](const char* rel, TreePtr code) {
    std::vector<TreePtr> out = model.relation_pool(rel, code, b);
    std::sort(out.begin(), out.end());
    return out;
  };

  CHECK(pool("Nat", nullptr) == brute1("Nat"));
  CHECK(pool("ProofVar", nullptr) == brute1("ProofVar"));
  CHECK(pool("Sort", nullptr) == brute1("Sort"));
  CHECK(pool("Proof", nullptr) == brute1("Proof"));
  CHECK(pool("Elim", nullptr) == brute1("Elim"));
  CHECK(pool("TermAny", nullptr) == brute1("TermAny"));

  TreePtr code = u.codec.encode_sort("N");
  std::vector<TreePtr> want;
  for (TreePtr t : all)
    if (ev.call("Term", {t, code}) == nat_tree(1)) want.push_back(t);
  std::sort(want.begin(), want.end());
  CHECK(pool("Term", code) == want);

  // SN pool: proofs whose decoded form normalizes
  std::vector<TreePtr> sn_want;
  for (TreePtr t : brute1("Proof")) {
    SnVerdict v = sn_check(u.codec.decode_proof(t), b.sn_bound);
    if (v.status == SnVerdict::Status::StronglyNormalizing) sn_want.push_back(t);
  }
  std::sort(sn_want.begin(), sn_want.end());
  CHECK(pool("SN", nullptr) == sn_want);
}

TEST_CASE("witness verification confirms single tuples") {
  Setup u;
  TreePtr top = u.codec.encode_proof(parse_proof_term("topI", u.T.sig));
  CHECK(verify_witness(u.codec, "SN", {top}, {6, 50}).verdict == Verdict::True);
  CHECK(verify_witness(u.codec, "Nat", {nat_tree(3)}, {6, 50}).verdict == Verdict::True);
  CHECK(verify_witness(u.codec, "Nat", {top}, {6, 50}).verdict == Verdict::False);
}

TEST_CASE("ill-formed evaluator input is rejected") {
  Setup u;
  // unregistered relation
  CHECK_THROWS_AS(
      eval_formula(u.codec, mk_atom("Frob", {tree_to_term(nat_tree(0))}), {4, 50}),
      InputError);
  // free variables are not allowed
  CHECK_THROWS_AS(u.ev("(Nat n)"), InputError);
}
