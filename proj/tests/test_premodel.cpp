#include <string>
#include <vector>

#include "demod/enumerate.hpp"
#include "demod/premodel.hpp"
#include "demod/proof.hpp"
#include "demod/reduction.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

namespace {

const char* kTheoryText = R"((theory
  (sort N)
  (fun z () N)
  (fun s (N) N)
  (fun + (N N) N)
  (pred P (N))
  (rule term (+ x z) x)))";

// Mirrors data/candidates.pm: + projects its left argument, so the rewrite
// rule holds literally in the model.
const char* kModelText = R"((premodel
  (carrier N (e0 e1))
  (fun z (() e0))
  (fun s ((e0) e1) ((e1) e1))
  (fun + ((e0 e0) e0) ((e0 e1) e0) ((e1 e0) e1) ((e1 e1) e1))
  (pred P ((e0) sn) ((e1) (interp top)))))";

const char* kOmega =
    "(app (lam a (app (var a) (var a))) (lam a (app (var a) (var a))))";
const char* kGrow =
    "(app (lam a (app (app (var a) (var a)) (var a))) "
    "(lam a (app (app (var a) (var a)) (var a))))";

struct Lab {
  Theory th = parse_theory(kTheoryText);
  PreModel m;
  PmBounds b;

  Lab() {
    m = parse_premodel_text(kModelText, th);
    b.sn_bound = 40;
    b.term_bound = 2;
  }

  ProofPtr pf(const std::string& s) const { return parse_proof_term(s, th.sig); }
  FormulaPtr fm(const std::string& s) const { return parse_formula(s, th.sig); }
  Member mem(const std::string& f, const std::string& p) const {
    return interp_membership(m, fm(f), {}, pf(p), b);
  }

  // Same model but with the given tags at P(e0) / P(e1).
  PreModel retag(const std::string& tag0, const std::string& tag1) const {
    PreModel out = m;
    Candidate c0, c1;
    c0.tag = tag0;
    c1.tag = tag1;
    out.preds[0].second[{"e0"}] = c0;
    out.preds[0].second[{"e1"}] = c1;
    return out;
  }
};

std::vector<ProofPtr> mixed_corpus(const Lab& lab) {
  std::vector<ProofPtr> out;
  for (const char* s : {
           "topI",
           "(var a)",
           "(var b)",
           "(app (lam a (var a)) topI)",
           "(pair topI topI)",
           "(fst (pair topI topI))",
           "(fst (var a))",
           "(botE (var a))",
           "(inl topI)",
       })
    out.push_back(lab.pf(s));
  return out;
}

const AxiomReport::Row& row(const AxiomReport& rep, const std::string& axiom) {
  for (const AxiomReport::Row& r : rep.rows)
    if (r.axiom == axiom) return r;
  throw std::runtime_error("missing row " + axiom);
}

bool has_alpha(const std::vector<ProofPtr>& ps, const ProofPtr& p) {
  for (const ProofPtr& q : ps)
    if (proof_alpha_equal(p, q)) return true;
  return false;
}

}  // namespace

TEST_CASE("premodel parsing, evaluation, and lookup") {
  Lab lab;

  CHECK(lab.m.carrier("N") == std::vector<Name>{"e0", "e1"});
  CHECK(lab.m.app("z", {}) == "e0");
  CHECK(lab.m.app("+", {"e1", "e0"}) == "e1");
  CHECK(lab.m.pred("P", {"e0"}).tag == "sn");
  CHECK(lab.m.pred("P", {"e1"}).tag == "interp");
  CHECK(print_formula(lab.m.pred("P", {"e1"}).formula) == "top");

  CHECK(eval_term_m(lab.m, parse_term("(+ (s z) z)", lab.th.sig), {}) == "e1");
  Assignment phi{{"x", "e0"}};
  CHECK(eval_term_m(lab.m, parse_term("(+ x z)", lab.th.sig), phi) == "e0");
  // Later bindings shadow earlier ones.
  Assignment shadowed{{"x", "e0"}, {"x", "e1"}};
  CHECK(eval_term_m(lab.m, parse_term("x", lab.th.sig), shadowed) == "e1");
  CHECK_THROWS_AS(eval_term_m(lab.m, parse_term("(+ x z)", lab.th.sig), {}), InputError);

  CHECK_THROWS_AS(lab.m.carrier("M"), InputError);
  CHECK_THROWS_AS(lab.m.app("+", {"e0", "bogus"}), InputError);
  CHECK_THROWS_AS(lab.m.pred("P", {"bogus"}), InputError);
}

TEST_CASE("premodel validation rejects partial or ill-formed models") {
  Lab lab;
  auto bad = [&](const std::string& text) {
    CHECK_THROWS_AS(parse_premodel_text(text, lab.th), InputError);
  };

  // No carrier for the declared sort.
  bad("(premodel (fun z (() e0)))");
  // Empty carrier.
  bad("(premodel (carrier N ()) (fun z (() e0)))");
  // Function table missing a tuple.
  bad(R"((premodel (carrier N (e0 e1))
        (fun z (() e0))
        (fun s ((e0) e1))
        (fun + ((e0 e0) e0) ((e0 e1) e0) ((e1 e0) e1) ((e1 e1) e1))
        (pred P ((e0) sn) ((e1) sn))))");
  // Function mapping outside its carrier.
  bad(R"((premodel (carrier N (e0 e1))
        (fun z (() e9))
        (fun s ((e0) e1) ((e1) e1))
        (fun + ((e0 e0) e0) ((e0 e1) e0) ((e1 e0) e1) ((e1 e1) e1))
        (pred P ((e0) sn) ((e1) sn))))");
  // Predicate table missing a tuple.
  bad(R"((premodel (carrier N (e0 e1))
        (fun z (() e0))
        (fun s ((e0) e1) ((e1) e1))
        (fun + ((e0 e0) e0) ((e0 e1) e0) ((e1 e0) e1) ((e1 e1) e1))
        (pred P ((e0) sn))))");
  // Unknown candidate tag.
  bad(R"((premodel (carrier N (e0 e1))
        (fun z (() e0))
        (fun s ((e0) e1) ((e1) e1))
        (fun + ((e0 e0) e0) ((e0 e1) e0) ((e1 e0) e1) ((e1 e1) e1))
        (pred P ((e0) frob) ((e1) sn))))");
  // Interp formula must parse against the theory signature.
  bad(R"((premodel (carrier N (e0 e1))
        (fun z (() e0))
        (fun s ((e0) e1) ((e1) e1))
        (fun + ((e0 e0) e0) ((e0 e1) e0) ((e1 e0) e1) ((e1 e1) e1))
        (pred P ((e0) (interp (Q z))) ((e1) sn))))");
  // Unknown premodel item.
  bad("(premodel (carrier N (e0 e1)) (widget))");
  bad("(model (carrier N (e0 e1)))");
}

TEST_CASE("candidate membership by tag") {
  Lab lab;
  ProofPtr top = lab.pf("topI");
  ProofPtr var = lab.pf("(var a)");
  ProofPtr beta = lab.pf("(app (lam a (var a)) topI)");
  ProofPtr omega = lab.pf(kOmega);

  Candidate sn;
  sn.tag = "sn";
  CHECK(candidate_member(sn, lab.m, top, lab.b) == Member::Yes);
  CHECK(candidate_member(sn, lab.m, beta, lab.b) == Member::Yes);
  CHECK(candidate_member(sn, lab.m, omega, lab.b) == Member::No);
  PmBounds tight = lab.b;
  tight.sn_bound = 8;
  CHECK(candidate_member(sn, lab.m, lab.pf(kGrow), tight) == Member::Unknown);

  Candidate normal;
  normal.tag = "normal";
  CHECK(candidate_member(normal, lab.m, var, lab.b) == Member::Yes);
  CHECK(candidate_member(normal, lab.m, beta, lab.b) == Member::No);

  Candidate vars;
  vars.tag = "empty-plus-vars";
  CHECK(candidate_member(vars, lab.m, var, lab.b) == Member::Yes);
  CHECK(candidate_member(vars, lab.m, top, lab.b) == Member::No);

  Candidate custom;
  custom.tag = "custom";
  custom.custom = [](const ProofPtr& p) {
    return proof_as<PTopI>(p) ? Member::Yes : Member::No;
  };
  CHECK(candidate_member(custom, lab.m, top, lab.b) == Member::Yes);
  CHECK(candidate_member(custom, lab.m, var, lab.b) == Member::No);

  Candidate bogus;
  bogus.tag = "frob";
  CHECK_THROWS_AS(candidate_member(bogus, lab.m, top, lab.b), InputError);

  CHECK(std::string(member_name(Member::Yes)) == "member");
  CHECK(std::string(member_name(Member::No)) == "non-member");
  CHECK(std::string(member_name(Member::Unknown)) == "unknown");
}

TEST_CASE("top and bot both denote exactly the strongly normalizing proofs") {
  Lab lab;
  Candidate sn;
  sn.tag = "sn";
  for (const ProofPtr& p : mixed_corpus(lab)) {
    Member viaSn = candidate_member(sn, lab.m, p, lab.b);
    CHECK(interp_membership(lab.m, lab.fm("top"), {}, p, lab.b) == viaSn);
    CHECK(interp_membership(lab.m, lab.fm("bot"), {}, p, lab.b) == viaSn);
  }
  CHECK(lab.mem("top", kOmega) == Member::No);
}

TEST_CASE("implication clause approximates its inner quantifier by the corpus") {
  Lab lab;

  // No reachable lambda: the clause is vacuous and only strong
  // normalization is required.
  CHECK(lab.mem("(imp top top)", "(var b)") == Member::Yes);
  CHECK(lab.mem("(imp top top)", kOmega) == Member::No);

  // A reachable lambda makes the verdict at best Unknown, with or without a
  // corpus: the inner quantifier ranges over all antecedent members.
  CHECK(lab.mem("(imp top top)", "(lam a (var a))") == Member::Unknown);
  std::vector<ProofPtr> corpus{lab.pf("topI"), lab.pf("(var c)")};
  PmBounds with = lab.b;
  with.corpus = &corpus;
  CHECK(interp_membership(lab.m, lab.fm("(imp top top)"), {},
                          lab.pf("(lam a (var a))"), with) == Member::Unknown);

  // The corpus can still refute: topI inhabits the antecedent but the
  // substituted body lands outside the consequent's candidate.
  PreModel strict = lab.retag("empty-plus-vars", "sn");
  CHECK(interp_membership(strict, lab.fm("(imp top (P z))"), {},
                          lab.pf("(lam a topI)"), with) == Member::No);
  // Body echoes the hypothesis, so every antecedent member maps across.
  CHECK(interp_membership(strict, lab.fm("(imp (P z) (P z))"), {},
                          lab.pf("(lam a (var a))"), with) == Member::Unknown);
}

TEST_CASE("conjunction and disjunction clauses look at reachable introductions") {
  Lab lab;
  PreModel strict = lab.retag("empty-plus-vars", "sn");
  auto smem = [&](const std::string& f, const std::string& p) {
    return interp_membership(strict, lab.fm(f), {}, lab.pf(p), lab.b);
  };

  CHECK(lab.mem("(and top top)", "(pair topI (var a))") == Member::Yes);
  CHECK(lab.mem("(and top top)", std::string("(pair topI ") + kOmega + ")") ==
        Member::No);
  // Componentwise rejection through the reachable pair.
  CHECK(smem("(and (P z) top)", "(pair topI topI)") == Member::No);
  CHECK(smem("(and (P z) top)", "(pair (var a) topI)") == Member::Yes);
  // An eliminated pair is no longer reachable, so the clause is vacuous.
  CHECK(smem("(and (P z) (P z))", "(fst (pair topI topI))") == Member::Yes);

  CHECK(smem("(or top (P z))", "(inl topI)") == Member::Yes);
  CHECK(smem("(or top (P z))", "(inr topI)") == Member::No);
  CHECK(smem("(or top (P z))", "(inr (var a))") == Member::Yes);
  CHECK(smem("(or (P z) (P z))", "(var a)") == Member::Yes);
}

TEST_CASE("quantifier clauses sweep terms and carrier elements") {
  Lab lab;
  // P(e0) accepts only proof variables, P(e1) any strongly normalizing proof.
  PreModel split = lab.retag("empty-plus-vars", "sn");
  // Both carrier elements accept only proof variables.
  PreModel vars = lab.retag("empty-plus-vars", "empty-plus-vars");
  auto at = [&](const PreModel& m, const std::string& f, const std::string& p) {
    return interp_membership(m, lab.fm(f), {}, lab.pf(p), lab.b);
  };

  const std::string fa = "(forall (x N) (P x))";
  CHECK(at(split, fa, "(tlam x (var a))") == Member::Yes);
  CHECK(at(split, fa, "(tlam x topI)") == Member::No);  // rejected at e0
  CHECK(at(split, fa, "(var a)") == Member::Yes);       // no reachable tlam
  CHECK(at(split, fa, kOmega) == Member::No);

  const std::string ex = "(exists (y N) (P y))";
  CHECK(at(split, ex, "(wit z (var a))") == Member::Yes);
  CHECK(at(split, ex, "(wit z topI)") == Member::Yes);  // e1 witnesses it
  CHECK(at(vars, ex, "(wit z topI)") == Member::No);    // no element does
  CHECK(at(vars, ex, "(wit z (var a))") == Member::Yes);
  CHECK(at(vars, ex, "(var a)") == Member::Yes);
}

TEST_CASE("candidate axioms: sn passes all four rows") {
  Lab lab;
  Candidate sn;
  sn.tag = "sn";
  AxiomReport rep = check_candidate_axioms(sn, lab.m, mixed_corpus(lab), lab.b);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].axiom == "sn");
  CHECK(rep.rows[1].axiom == "variables");
  CHECK(rep.rows[2].axiom == "reduction-closed");
  CHECK(rep.rows[3].axiom == "eliminations");
  CHECK(rep.all_passed());
  for (const AxiomReport::Row& r : rep.rows) CHECK(r.unknown == 0);

  // An out-of-budget proof only raises unknown counters, never a failure.
  std::vector<ProofPtr> growing{lab.pf(kGrow)};
  PmBounds tight = lab.b;
  tight.sn_bound = 8;
  AxiomReport rep2 = check_candidate_axioms(sn, lab.m, growing, tight);
  CHECK(rep2.all_passed());
  CHECK(row(rep2, "sn").unknown > 0);
}

TEST_CASE("candidate axioms: normal forms are not closed under eliminations") {
  Lab lab;
  Candidate normal;
  normal.tag = "normal";
  AxiomReport rep =
      check_candidate_axioms(normal, lab.m, mixed_corpus(lab), lab.b);
  CHECK(row(rep, "sn").passed);
  CHECK(row(rep, "variables").passed);
  CHECK(row(rep, "reduction-closed").passed);
  const AxiomReport::Row& el = row(rep, "eliminations");
  CHECK_FALSE(el.passed);
  // The redex reduces to a member but is itself no normal form.
  CHECK(has_alpha(el.counterexamples, lab.pf("(fst (pair topI topI))")));
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("candidate axioms: bare variables are not closed under eliminations") {
  Lab lab;
  Candidate vars;
  vars.tag = "empty-plus-vars";
  AxiomReport rep =
      check_candidate_axioms(vars, lab.m, mixed_corpus(lab), lab.b);
  CHECK(row(rep, "sn").passed);
  CHECK(row(rep, "variables").passed);
  CHECK(row(rep, "reduction-closed").passed);
  const AxiomReport::Row& el = row(rep, "eliminations");
  CHECK_FALSE(el.passed);
  // Neutral eliminations have no reducts, so membership is demanded outright.
  CHECK(has_alpha(el.counterexamples, lab.pf("(fst (var a))")));
  CHECK(has_alpha(el.counterexamples, lab.pf("(botE (var a))")));
  CHECK(el.counterexamples.size() == 2);
}

TEST_CASE("candidate axioms: an all-accepting candidate fails only sn") {
  Lab lab;
  Candidate all;
  all.tag = "custom";
  all.custom = [](const ProofPtr&) { return Member::Yes; };
  std::vector<ProofPtr> corpus = mixed_corpus(lab);
  corpus.push_back(lab.pf(kOmega));
  AxiomReport rep = check_candidate_axioms(all, lab.m, corpus, lab.b);
  const AxiomReport::Row& snr = row(rep, "sn");
  CHECK_FALSE(snr.passed);
  CHECK(has_alpha(snr.counterexamples, lab.pf(kOmega)));
  CHECK(row(rep, "variables").passed);
  CHECK(row(rep, "reduction-closed").passed);
  CHECK(row(rep, "eliminations").passed);
}

TEST_CASE("denotations are reduction-closed and stable under larger bounds") {
  Lab lab;
  ProofEnumOptions opt;
  opt.max_size = 4;
  std::vector<ProofPtr> corpus = enumerate_proofs(opt);
  corpus.push_back(lab.pf("(fst (pair (app (lam a (var a)) topI) topI))"));

  PmBounds small = lab.b;
  small.sn_bound = 12;
  PmBounds big = lab.b;
  big.sn_bound = 200;

  const char* formulas[] = {"top", "(and top top)", "(or top top)",
                            "(imp top top)", "(P z)", "(P (s z))"};
  for (const char* f : formulas) {
    FormulaPtr a = lab.fm(f);
    for (const ProofPtr& p : corpus) {
      Member ms = interp_membership(lab.m, a, {}, p, small);
      if (ms == Member::Yes) {
        for (const ReductionStep& s : step(p))
          CHECK(interp_membership(lab.m, a, {}, s.target, small) != Member::No);
      }
      // A decided verdict never flips when budgets grow.
      if (ms != Member::Unknown)
        CHECK(interp_membership(lab.m, a, {}, p, big) == ms);
    }
  }
}

TEST_CASE("reachable-set cap degrades the verdict to unknown") {
  Lab lab;
  ProofPtr p = lab.pf("(fst (pair (app (lam a (var a)) topI) topI))");
  CHECK(interp_membership(lab.m, lab.fm("(and top top)"), {}, p, lab.b) ==
        Member::Yes);
  PmBounds capped = lab.b;
  capped.reach_cap = 2;
  CHECK(interp_membership(lab.m, lab.fm("(and top top)"), {}, p, capped) ==
        Member::Unknown);
}

TEST_CASE("congruence holds in the projection model and fails in a skewed one") {
  Lab lab;
  std::vector<ProofPtr> corpus{lab.pf("(fst (pair topI topI))"), lab.pf("topI"),
                               lab.pf(kOmega)};
  CongruenceReport ok =
      check_premodel_congruence(lab.m, lab.th.rules, corpus, lab.b);
  CHECK(ok.passed());
  CHECK(ok.checked == 6);  // one lifted context, two assignments, three proofs
  CHECK(ok.unknown == 0);

  // + constant at e1 breaks x + 0 = x at x := e0 once P tells e0 and e1 apart.
  PreModel skew = lab.m;
  for (auto& [f, table] : skew.funs)
    if (f == "+")
      for (auto& [tuple, out] : table) out = "e1";
  Candidate normal, sn;
  normal.tag = "normal";
  sn.tag = "sn";
  skew.preds[0].second[{"e0"}] = normal;
  skew.preds[0].second[{"e1"}] = sn;
  std::vector<ProofPtr> redex{lab.pf("(fst (pair topI topI))")};
  CongruenceReport bad =
      check_premodel_congruence(skew, lab.th.rules, redex, lab.b);
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.disagreements.size() == 1);
  const CongruenceReport::Case& c = bad.disagreements[0];
  CHECK(c.rule == 0);
  CHECK(c.detail.find("P slot 0") != std::string::npos);
  CHECK(c.detail.find("x:=e0") != std::string::npos);
  CHECK(proof_alpha_equal(c.pi, redex[0]));
  CHECK(c.lhs == Member::Yes);
  CHECK(c.rhs == Member::No);
}

TEST_CASE("congruence lifts prop rules directly") {
  Theory th = parse_theory(R"((theory
    (sort N)
    (fun z () N)
    (pred Q ())
    (pred R ())
    (rule prop (Q) (and (R) (R)))))");
  PreModel m = parse_premodel_text(R"((premodel
    (carrier N (e0))
    (fun z (() e0))
    (pred Q (() sn))
    (pred R (() normal))))", th);
  PmBounds b;
  // Reducible but strongly normalizing, with a reachable pair whose first
  // component is itself reducible: Q says yes, (R and R) says no.
  ProofPtr p = parse_proof_term("(pair (fst (pair topI topI)) topI)", th.sig);
  CongruenceReport rep = check_premodel_congruence(m, th.rules, {p}, b);
  REQUIRE(rep.disagreements.size() == 1);
  CHECK(rep.disagreements[0].detail.find("prop") != std::string::npos);
  CHECK(rep.disagreements[0].lhs == Member::Yes);
  CHECK(rep.disagreements[0].rhs == Member::No);

  PreModel agree = m;
  Candidate sn;
  sn.tag = "sn";
  agree.preds[1].second[{}] = sn;
  CHECK(check_premodel_congruence(agree, th.rules, {p}, b).passed());
}
