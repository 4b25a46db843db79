#include "demod/proof.hpp"
#include "demod/reduction.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

namespace {

Signature arith_sig() {
  return parse_theory("(theory (sort N) (fun z () N) (fun s (N) N) (pred P (N)))").sig;
}

ProofPtr P(const std::string& s) { return parse_proof_term(s, arith_sig()); }

std::string nf(const std::string& s, std::size_t fuel = 1000) {
  ProofPtr p = P(s);
  auto [steps, normal] = reduce_trace(p, fuel);
  REQUIRE(normal);
  return print_proof(steps.empty() ? p : steps.back().target);
}

}  // namespace

TEST_CASE("proof parsing and printing roundtrip") {
  const char* texts[] = {
      "topI",
      "(var a)",
      "(lam a (app (var a) (var a)))",
      "(pair (fst (var a)) (snd (var a)))",
      "(case (inl topI) (a (var a)) (b (botE (var b))))",
      "(tlam x (lam a (var a)))",
      "(tlam (x N) (wit (s x) (var a)))",
      "(exelim (var a) ((x N) b (wit x (var b))))",
      "(tapp (var a) (s z))",
  };
  for (const char* s : texts) CHECK(print_proof(P(s)) == s);
  CHECK_THROWS_AS(P("(lam a)"), InputError);
  CHECK_THROWS_AS(P("(frob a)"), InputError);
  CHECK_THROWS_AS(P("(tlam (x M) (var a))"), InputError);
}

TEST_CASE("alpha equality and canonical keys") {
  CHECK(proof_alpha_equal(P("(lam a (var a))"), P("(lam b (var b))")));
  CHECK_FALSE(proof_alpha_equal(P("(lam a (var a))"), P("(lam a (var b))")));
  CHECK(proof_canon_key(P("(tlam x (var a))")) == proof_canon_key(P("(tlam y (var a))")));
  CHECK(proof_canon_key(P("(lam a (var a))")) != proof_canon_key(P("(lam a topI)")));
  // free variables are compared by name
  CHECK_FALSE(proof_alpha_equal(P("(var a)"), P("(var b)")));
}

TEST_CASE("substitution avoids capture") {
  // (lam b (var a))[a := (var b)] must not capture the free b
  ProofPtr r = subst_proof(P("(lam b (var a))"), "a", P("(var b)"));
  const PLam* l = proof_as<PLam>(r);
  REQUIRE(l);
  CHECK(l->hyp != "b");
  CHECK(print_proof(l->body) == "(var b)");

  // term-level capture through a proof-term binder
  ProofPtr t = subst_term_in_proof(P("(tlam (x N) (wit y (var a)))"), "y",
                                   parse_term("(s x)", arith_sig()));
  const PTLam* tl = proof_as<PTLam>(t);
  REQUIRE(tl);
  CHECK(tl->var != "x");
}

TEST_CASE("redexes step at the root first, then left to right") {
  ProofPtr p = P("(pair (fst (pair topI (var a))) (snd (pair topI (var a))))");
  std::vector<ReductionStep> ss = step(p);
  REQUIRE(ss.size() == 2);
  CHECK(ss[0].path == std::vector<int>{0});
  CHECK(print_proof(ss[0].target) == "(pair topI (snd (pair topI (var a))))");
  CHECK(ss[1].path == std::vector<int>{1});
}

TEST_CASE("one-step reduction covers every cut") {
  CHECK(nf("(app (lam a (var a)) topI)") == "topI");
  CHECK(nf("(fst (pair (var a) (var b)))") == "(var a)");
  CHECK(nf("(snd (pair (var a) (var b)))") == "(var b)");
  CHECK(nf("(case (inl topI) (a (pair (var a) (var a))) (b (var b)))") ==
        "(pair topI topI)");
  CHECK(nf("(case (inr topI) (a (var a)) (b (pair (var b) (var b))))") ==
        "(pair topI topI)");
  CHECK(nf("(tapp (tlam (x N) (wit x (var a))) (s z))") == "(wit (s z) (var a))");
  CHECK(nf("(exelim (wit z (var c)) ((x N) b (pair (var b) (wit x topI))))") ==
        "(pair (var c) (wit z topI))");
}

TEST_CASE("normal forms have no steps") {
  CHECK(is_normal(P("(lam a (var a))")));
  CHECK(is_normal(P("(app (var a) topI)")));
  CHECK_FALSE(is_normal(P("(app (lam a (var a)) topI)")));
  CHECK(step(P("(var a)")).empty());
}

TEST_CASE("redn enumerates exactly-n-step reducts") {
  ProofPtr p = P("(pair (fst (pair topI topI)) (fst (pair topI topI)))");
  CHECK(redn(p, 0).size() == 1);
  CHECK(redn(p, 1).size() == 2);   // either component fires
  CHECK(redn(p, 2).size() == 1);   // both fired, results coincide
  CHECK(redn(p, 3).empty());
}

TEST_CASE("sn_check verdicts") {
  SnVerdict ok = sn_check(P("(lam a (var a))"), 50);
  CHECK(ok.status == SnVerdict::Status::StronglyNormalizing);
  CHECK(ok.longest == 0);

  SnVerdict two = sn_check(P("(fst (pair (app (lam a (var a)) topI) topI))"), 50);
  CHECK(two.status == SnVerdict::Status::StronglyNormalizing);
  CHECK(two.longest == 2);

  ProofPtr omega = P("(app (lam a (app (var a) (var a))) (lam a (app (var a) (var a))))");
  SnVerdict cyc = sn_check(omega, 10);
  CHECK(cyc.status == SnVerdict::Status::CycleFound);
  REQUIRE_FALSE(cyc.cycle.empty());
  CHECK(proof_alpha_equal(cyc.cycle.front(), omega));

  ProofPtr grow = P(
      "(app (lam a (app (app (var a) (var a)) (var a)))"
      " (lam a (app (app (var a) (var a)) (var a))))");
  CHECK(sn_check(grow, 10).status == SnVerdict::Status::BoundExceeded);
}

TEST_CASE("reduce_trace is leftmost-outermost and fuel-bounded") {
  auto [steps, normal] = reduce_trace(P("(app (lam a (pair (var a) (var a))) "
                                        "(fst (pair topI topI)))"),
                                      100);
  CHECK(normal);
  REQUIRE(!steps.empty());
  CHECK(steps[0].path.empty());  // root beta before the argument's fst
  CHECK(print_proof(steps.back().target) ==
        "(pair (fst (pair topI topI)) (fst (pair topI topI)))" ||
        print_proof(steps.back().target) == "(pair topI topI)");

  ProofPtr omega = P("(app (lam a (app (var a) (var a))) (lam a (app (var a) (var a))))");
  auto [s2, n2] = reduce_trace(omega, 7);
  CHECK_FALSE(n2);
  CHECK(s2.size() == 7);
}

TEST_CASE("usubst applies both environments at once") {
  PEnv penv{{"a", P("topI")}};
  TermSubst tenv;
  tenv.emplace_back("x", parse_term("z", arith_sig()));
  ProofPtr r = usubst(P("(wit x (var a))"), penv, tenv);
  CHECK(print_proof(r) == "(wit z topI)");
}

TEST_CASE("proof files parse and reprint") {
  Signature sig = arith_sig();
  ProofFile pf = parse_proof_file(
      "(proof (context (a (P z))) (goal (P z)) (term (var a)))", sig);
  CHECK(pf.seq.hyps.size() == 1);
  ProofFile back = parse_proof_file(print_proof_file(pf), sig);
  CHECK(print_proof_file(back) == print_proof_file(pf));
  CHECK_THROWS_AS(parse_proof_file("(proof (goal top))", sig), InputError);
}
