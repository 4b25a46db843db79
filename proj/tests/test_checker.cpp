#include "demod/checker.hpp"
#include "demod/enumerate.hpp"
#include "demod/reduction.hpp"
#include "demod/rewriting.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

namespace {

Theory arith() {
  return parse_theory(
      "(theory (sort N) (fun z () N) (fun s (N) N) (fun + (N N) N)"
      " (pred P (N)) (rule term (+ x z) x))");
}

std::string accepts(const Theory& th, const std::string& file) {
  return check_proof(th, parse_proof_file(file, th.sig).seq,
                     parse_proof_file(file, th.sig).term)
      .rule;
}

void rejects(const Theory& th, const std::string& file) {
  ProofFile pf = parse_proof_file(file, th.sig);
  CHECK_THROWS_AS(check_proof(th, pf.seq, pf.term), CheckError);
}

}  // namespace

TEST_CASE("rule names surface per root former") {
  Theory th = arith();
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P z)) (term (var a)))") == "axiom");
  CHECK(accepts(th, "(proof (goal (imp top top)) (term (lam a (var a))))") == "imp-intro");
  CHECK(accepts(th, "(proof (goal top) (term topI))") == "top-intro");
  CHECK(accepts(th, "(proof (goal (and top top)) (term (pair topI topI)))") == "and-intro");
  CHECK(accepts(th, "(proof (goal (or top bot)) (term (inl topI)))") == "or-intro-1");
  CHECK(accepts(th, "(proof (goal (or bot top)) (term (inr topI)))") == "or-intro-2");
  CHECK(accepts(th, "(proof (context (a bot)) (goal (P z)) (term (botE (var a))))") ==
        "bot-elim");
  CHECK(accepts(th, "(proof (goal (forall (x N) (imp (P x) (P x))))"
                    " (term (tlam (x N) (lam a (var a)))))") == "forall-intro");
  CHECK(accepts(th, "(proof (context (a (forall (x N) (P x)))) (goal (P (s z)))"
                    " (term (tapp (var a) (s z))))") == "forall-elim");
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (exists (x N) (P x)))"
                    " (term (wit z (var a))))") == "exists-intro");
  CHECK(accepts(th, "(proof (context (a (exists (x N) (P x)))) (goal (exists (y N) (P y)))"
                    " (term (exelim (var a) ((x N) b (wit x (var b))))))") == "exists-elim");
  CHECK(accepts(th, "(proof (context (a (or top top))) (goal top)"
                    " (term (case (var a) (b (var b)) (c (var c)))))") == "or-elim");
  CHECK(accepts(th, "(proof (context (a (imp top top))) (goal top)"
                    " (term (app (var a) topI)))") == "imp-elim");
}

TEST_CASE("matching is modulo the rewrite rules") {
  Theory th = arith();
  // goal differs from the hypothesis only up to (+ x z) -> x
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P (+ z z))) (term (var a)))") ==
        "axiom");
  CHECK(accepts(th, "(proof (context (a (P (+ (s z) z)))) (goal (P (s z))) (term (var a)))") ==
        "axiom");
  // nested occurrence under a constructor
  CHECK(accepts(th, "(proof (context (a (P (s (+ z z))))) (goal (P (s z))) (term (var a)))") ==
        "axiom");
}

TEST_CASE("propositional rewrite rules unfold atoms") {
  Theory th = parse_theory(
      "(theory (sort N) (fun z () N) (pred P (N)) (pred Q ())"
      " (rule prop (Q) (imp (P z) (P z))))");
  CHECK(check_proof(th, parse_proof_file("(proof (goal (Q)) (term (lam a (var a))))", th.sig).seq,
                    parse_proof_file("(proof (goal (Q)) (term (lam a (var a))))", th.sig).term)
            .rule == "imp-intro");
}

TEST_CASE("shape mismatches are rejected") {
  Theory th = arith();
  rejects(th, "(proof (goal bot) (term topI))");
  rejects(th, "(proof (goal (imp top bot)) (term (lam a (var a))))");
  rejects(th, "(proof (context (a (P z))) (goal (P (s z))) (term (var a)))");
  rejects(th, "(proof (goal top) (term (var a)))");  // unbound hypothesis
  rejects(th, "(proof (context (a (and top bot))) (goal bot) (term (fst (var a))))");
}

TEST_CASE("unknown term symbols fail as input errors") {
  Theory th = arith();
  CHECK_THROWS_AS(parse_proof_file("(proof (goal top) (term (tapp (var a) (q))))", th.sig),
                  InputError);
}

TEST_CASE("eigenvariable conditions") {
  Theory th = arith();
  // x occurs free in an open hypothesis
  rejects(th, "(proof (context (a (P x))) (goal (forall (x N) (P x)))"
              " (term (tlam (x N) (var a))))");
  // witness variable escapes into the goal
  rejects(th, "(proof (context (a (exists (x N) (P x)))) (goal (P x))"
              " (term (exelim (var a) ((x N) b (var b)))))");
  // same shapes with fresh names pass
  CHECK(accepts(th, "(proof (goal (forall (y N) (imp (P y) (P y))))"
                    " (term (tlam (y N) (lam a (var a)))))") == "forall-intro");
}

TEST_CASE("cut redexes are accepted without reducing the subject") {
  Theory th = arith();
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P z))"
                    " (term (app (lam b (var b)) (var a))))") == "imp-elim");
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P z))"
                    " (term (snd (pair topI (var a)))))") == "and-elim-2");
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P z))"
                    " (term (fst (pair (var a) topI))))") == "and-elim-1");
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P z))"
                    " (term (case (inl (var a)) (b (var b)) (c (var c)))))") == "or-elim");
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P z))"
                    " (term (tapp (tlam (x N) (var a)) (s z))))") == "forall-elim");
  CHECK(accepts(th, "(proof (context (a (P z))) (goal (P z))"
                    " (term (exelim (wit (s z) (var a)) ((x N) b (var b)))))") ==
        "exists-elim");
}

TEST_CASE("checking is stable under reduction") {
  Theory th = arith();
  const char* file =
      "(proof (context (c (P z))) (goal (and (P (+ z z)) top))"
      " (term (app (lam a (pair (var a) topI)) (var c))))";
  ProofFile pf = parse_proof_file(file, th.sig);
  CHECK(check_proof(th, pf.seq, pf.term).rule == "imp-elim");
  for (const ReductionStep& s : step(pf.term)) {
    CHECK(check_proof(th, pf.seq, s.target).rule == "and-intro");
  }
}

TEST_CASE("random derivations check and stay checkable under one step") {
  Theory th = arith();
  Rng rng(42);
  int reducible = 0;
  for (int i = 0; i < 300; ++i) {
    RandomDerivation rd = random_derivation(rng, th, 3);
    CAPTURE(print_proof(rd.proof));
    CAPTURE(print_formula(rd.seq.goal));
    CHECK_NOTHROW(check_proof(th, rd.seq, rd.proof));
    std::vector<ReductionStep> ss = step(rd.proof);
    if (!ss.empty()) ++reducible;
    for (const ReductionStep& s : ss) CHECK_NOTHROW(check_proof(th, rd.seq, s.target));
  }
  CHECK(reducible > 30);  // the generator injects genuine redexes
}

TEST_CASE("divergent rewrite systems exhaust fuel") {
  Theory th = parse_theory(
      "(theory (sort N) (fun z () N) (fun s (N) N) (pred P (N))"
      " (rule term (s x) (s (s x))))");
  ProofFile pf =
      parse_proof_file("(proof (context (a (P (s z)))) (goal (P (s z))) (term (var a)))",
                       th.sig);
  CHECK_THROWS_AS(check_proof(th, pf.seq, pf.term, 100), BudgetError);
}
