#include <algorithm>

#include "demod/codec.hpp"
#include "demod/enumerate.hpp"
#include "demod/reduction.hpp"
#include "demod/syntax_io.hpp"
#include "doctest.h"

using namespace demod;

namespace {

Theory arith() {
  return parse_theory(
      "(theory (sort N) (fun z () N) (fun s (N) N) (fun + (N N) N) (pred P (N)))");
}

ProofPtr P(const Signature& sig, const std::string& s) { return parse_proof_term(s, sig); }

std::vector<TreePtr> items_of(TreePtr list) { return tree_list_items(list); }

}  // namespace

TEST_CASE("proof encoding round-trips") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  const char* texts[] = {
      "topI",
      "(var a)",
      "(lam a (app (var a) (var b)))",
      "(case (inl topI) (a (var a)) (b (var b)))",
      "(tlam (x N) (wit (s x) (var a)))",
      "(tlam x (var a))",
      "(exelim (var c) ((x N) b (pair (var b) (wit x topI))))",
  };
  for (const char* s : texts) {
    ProofPtr p = P(th.sig, s);
    TreePtr t = codec.encode_proof(p);
    CHECK(tree_in_lang(t, codec.lang()));
    CHECK(proof_equal(codec.decode_proof(t), p));
  }
}

TEST_CASE("term encoding round-trips and tracks sorts") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  TermPtr t = parse_term("(+ x (s z))", th.sig);
  TreePtr enc = codec.encode_term(t);
  CHECK(term_equal(codec.decode_term(enc), t));
  // the head constructor is the prefixed function symbol
  CHECK(tree_ctor_name(enc->ctor) == "fn.+");
}

TEST_CASE("encoding is injective on a corpus") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  ProofEnumOptions opt;
  opt.max_size = 4;
  std::vector<ProofPtr> corpus = enumerate_proofs(opt);
  std::vector<TreePtr> seen;
  for (const ProofPtr& p : corpus) seen.push_back(codec.encode_proof(p));
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("variable indices follow the name numeration") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  TreePtr a = codec.encode_pvar("a");
  CHECK(tree_ctor_name(a->ctor) == "Axiom");
  CHECK(tree_nat(a->kids[0]) == 1);
  TreePtr cap = codec.encode_sort("N");
  CHECK(tree_ctor_name(cap->ctor) == "Sortc");
  CHECK(tree_nat(cap->kids[0]) == 40);
}

TEST_CASE("recognizer builtins agree with the syntax") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  PrEval ev(codec.prs());
  TreePtr one = nat_tree(1);

  CHECK(ev.call("Nat", {nat_tree(7)}) == one);
  CHECK(ev.call("Nat", {codec.encode_pvar("a")}) == nat_tree(0));
  CHECK(ev.call("Le", {nat_tree(2), nat_tree(5)}) == one);
  CHECK(ev.call("Le", {nat_tree(5), nat_tree(2)}) == nat_tree(0));

  CHECK(ev.call("ProofVar", {nat_tree(3)}) == one);
  CHECK(ev.call("Sort", {codec.encode_sort("N")}) == one);
  CHECK(ev.call("TermVar", {codec.encode_tvar("x", "N"), codec.encode_sort("N")}) == one);

  TreePtr tm = codec.encode_term(parse_term("(+ x (s z))", arith().sig));
  CHECK(ev.call("Term", {tm, codec.encode_sort("N")}) == one);
  CHECK(ev.call("TermAny", {tm}) == one);
  CHECK(ev.call("Term", {nat_tree(2), codec.encode_sort("N")}) == nat_tree(0));
}

TEST_CASE("Proof and Elim recognizers over an enumerated corpus") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  PrEval ev(codec.prs());
  ProofEnumOptions opt;
  opt.max_size = 4;
  for (const ProofPtr& p : enumerate_proofs(opt)) {
    TreePtr t = codec.encode_proof(p);
    CHECK(ev.call("Proof", {t}) == nat_tree(1));
    bool elim = proof_as<PApp>(p) || proof_as<PFst>(p) || proof_as<PSnd>(p) ||
                proof_as<PCase>(p) || proof_as<PBotE>(p) || proof_as<PTApp>(p) ||
                proof_as<PExElim>(p);
    CHECK(ev.call("Elim", {t}) == nat_tree(elim ? 1 : 0));
  }
  // garbage is not a proof
  CHECK(ev.call("Proof", {nat_tree(2)}) == nat_tree(0));
  CHECK(ev.call("Proof", {codec.encode_sort("N")}) == nat_tree(0));
}

TEST_CASE("encoded substitution matches the syntactic one") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  PrEval ev(codec.prs());
  auto psubst = [&](const std::string& p, const std::string& a, const std::string& q) {
    TreePtr got = ev.call("PSubst", {codec.encode_proof(P(th.sig, p)), codec.encode_pvar(a),
                                     codec.encode_proof(P(th.sig, q))});
    return codec.decode_proof(got);
  };
  CHECK(proof_alpha_equal(psubst("(app (var a) (var b))", "a", "topI"),
                          P(th.sig, "(app topI (var b))")));
  // shadowed occurrences stay put
  CHECK(proof_alpha_equal(psubst("(lam a (var a))", "a", "topI"),
                          P(th.sig, "(lam a (var a))")));
  // capture is avoided by renaming the binder
  ProofPtr r = psubst("(lam b (var a))", "a", "(var b)");
  const PLam* l = proof_as<PLam>(r);
  REQUIRE(l);
  CHECK(l->hyp != "b");
  CHECK(proof_alpha_equal(r, subst_proof(P(th.sig, "(lam b (var a))"), "a",
                                         P(th.sig, "(var b)"))));

  TreePtr got = ev.call("TSubst", {codec.encode_proof(P(th.sig, "(wit x (var a))")),
                                   codec.encode_tvar("x", std::nullopt),
                                   codec.encode_term(parse_term("z", th.sig))});
  CHECK(proof_alpha_equal(codec.decode_proof(got),
                          P(th.sig, "(wit z (var a))")));
}

TEST_CASE("reducts lists exactly the one-step reducts") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  PrEval ev(codec.prs());
  ProofEnumOptions opt;
  opt.max_size = 4;
  for (const ProofPtr& p : enumerate_proofs(opt)) {
    TreePtr enc = codec.encode_proof(p);
    std::vector<TreePtr> got = items_of(ev.call("reducts", {enc}));
    std::vector<TreePtr> want;
    for (const ReductionStep& s : step(p)) want.push_back(codec.encode_proof(s.target));
    // order-insensitive multiset comparison
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("stepn matches redn on sample proofs") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  PrEval ev(codec.prs());
  const char* texts[] = {
      "(app (lam a (pair (var a) (var a))) (fst (pair topI topI)))",
      "(case (inl (app (lam a (var a)) topI)) (b (var b)) (c topI))",
      "(snd (pair (app (lam a (var a)) topI) (fst (pair topI topI))))",
  };
  for (const char* s : texts) {
    ProofPtr p = P(th.sig, s);
    for (std::size_t n = 0; n <= 3; ++n) {
      std::vector<TreePtr> got = items_of(ev.call("stepn", {nat_tree(n), codec.encode_proof(p)}));
      std::sort(got.begin(), got.end());
      got.erase(std::unique(got.begin(), got.end()), got.end());
      std::vector<TreePtr> want;
      for (const ProofPtr& q : redn(p, n)) want.push_back(codec.encode_proof(q));
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("Red and Redn relate sources to their reducts") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  PrEval ev(codec.prs());
  TreePtr redex = codec.encode_proof(P(th.sig, "(fst (pair topI (var a)))"));
  TreePtr value = codec.encode_proof(P(th.sig, "topI"));
  CHECK(ev.call("Red", {redex, value}) == nat_tree(1));
  CHECK(ev.call("Red", {value, redex}) == nat_tree(0));
  CHECK(ev.call("Redn", {redex, nat_tree(1), value}) == nat_tree(1));
  CHECK(ev.call("Redn", {redex, nat_tree(0), value}) == nat_tree(0));
  CHECK(ev.call("Redn", {redex, nat_tree(0), redex}) == nat_tree(1));
}

TEST_CASE("environment encodings") {
  Theory th = arith();
  TreeCodec codec(th.sig);
  PEnv penv{{"a", P(th.sig, "topI")}};
  TermSubst tenv;
  tenv.emplace_back("x", parse_term("z", th.sig));
  TreePtr pe = codec.encode_penv(penv);
  TreePtr te = codec.encode_tenv(tenv);
  CHECK(items_of(pe).size() == 1);
  CHECK(items_of(te).size() == 1);
  PrEval ev(codec.prs());
  TreePtr got = ev.call("usubst", {codec.encode_proof(P(th.sig, "(wit x (var a))")), pe, te});
  CHECK(proof_alpha_equal(codec.decode_proof(got), P(th.sig, "(wit z topI)")));
}
