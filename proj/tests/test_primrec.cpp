#include "demod/primrec.hpp"
#include "demod/sexpr.hpp"
#include "doctest.h"

using namespace demod;

namespace {

// Numerals plus one pairing constructor: enough for the textbook functions.
TreeLang nat_lang() {
  TreeLang lang;
  lang.add("0", 0);
  lang.add("s", 1);
  lang.add("cons", 2);
  lang.add("nil", 0);
  return lang;
}

}  // namespace

TEST_CASE("addition and multiplication by structural recursion") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  env.add(parse_prdef_text(
      "(prdef add 2 (rec 0) (clause 0 (arg 1)) (clause s (s (rec 0 (arg 1))))"
      " (clause _ (arg 1)))",
      env));
  env.add(parse_prdef_text(
      "(prdef mul 2 (rec 0) (clause 0 0) (clause s (call add (arg 1) (rec 0 (arg 1))))"
      " (clause _ 0))",
      env));
  for (std::uint64_t a = 0; a < 7; ++a)
    for (std::uint64_t b = 0; b < 7; ++b) {
      CHECK(eval_pr(env, "add", {nat_tree(a), nat_tree(b)}) == nat_tree(a + b));
      CHECK(eval_pr(env, "mul", {nat_tree(a), nat_tree(b)}) == nat_tree(a * b));
    }
}

TEST_CASE("list append via cons clause") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  env.add(parse_prdef_text(
      "(prdef app 2 (rec 0) (clause nil (arg 1))"
      " (clause cons (cons (child 0) (rec 1 (arg 1)))) (clause _ (arg 1)))",
      env));
  TreePtr l1 = parse_tree_text("(cons 1 (cons 2 nil))", lang);
  TreePtr l2 = parse_tree_text("(cons 3 nil)", lang);
  CHECK(eval_pr(env, "app", {l1, l2}) ==
        parse_tree_text("(cons 1 (cons 2 (cons 3 nil)))", lang));
}

TEST_CASE("if is lazy in the untaken branch") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  // deep descends one frame per numeral layer, so deep(100000) overruns the
  // evaluation budget -- unless if leaves the untaken branch unevaluated
  env.add(parse_prdef_text(
      "(prdef deep 1 (rec 0) (clause 0 0) (clause s (s (rec 0))) (clause _ 0))", env));
  env.add(parse_prdef_text(
      "(prdef pick 1 (rec 0) (clause 0 0)"
      " (clause s (if 1 42 (call deep 100000))) (clause _ 0))",
      env));
  CHECK(eval_pr(env, "pick", {nat_tree(1)}) == nat_tree(42));
  CHECK_THROWS_AS(eval_pr(env, "deep", {nat_tree(100000)}), BudgetError);
}

TEST_CASE("definitions may only call earlier definitions") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  CHECK_THROWS_AS(env.add(parse_prdef_text(
                      "(prdef f 1 (rec 0) (clause 0 (call g 0)) (clause _ 0))", env)),
                  InputError);
  // self-calls are not structural recursion either
  CHECK_THROWS_AS(env.add(parse_prdef_text(
                      "(prdef f 1 (rec 0) (clause 0 (call f 0)) (clause _ 0))", env)),
                  InputError);
}

TEST_CASE("clause coverage and index ranges are validated") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  // missing constructors without a fill clause
  CHECK_THROWS_AS(env.add(parse_prdef_text("(prdef f 1 (rec 0) (clause 0 0))", env)),
                  InputError);
  // arg index out of range
  CHECK_THROWS_AS(
      env.add(parse_prdef_text("(prdef f 1 (rec 0) (clause _ (arg 1)))", env)),
      InputError);
  // child index beyond the constructor's arity
  CHECK_THROWS_AS(
      env.add(parse_prdef_text("(prdef f 1 (rec 0) (clause 0 (child 0)) (clause _ 0))", env)),
      InputError);
}

TEST_CASE("evaluation depth is budgeted") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  env.add(parse_prdef_text(
      "(prdef id 1 (rec 0) (clause 0 0) (clause s (s (rec 0))) (clause _ 0))", env));
  CHECK(eval_pr(env, "id", {nat_tree(100)}) == nat_tree(100));
  CHECK_THROWS_AS(eval_pr(env, "id", {nat_tree(100000)}), BudgetError);
}

TEST_CASE("memoisation shares repeated subcalls") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  env.add(parse_prdef_text(
      "(prdef add 2 (rec 0) (clause 0 (arg 1)) (clause s (s (rec 0 (arg 1))))"
      " (clause _ (arg 1)))",
      env));
  PrEval ev(env);
  TreePtr a = nat_tree(40), b = nat_tree(2);
  CHECK(ev.call("add", {a, b}) == nat_tree(42));
  std::size_t first = ev.stats().calls;
  CHECK(ev.call("add", {a, b}) == nat_tree(42));
  CHECK(ev.stats().memo_hits > 0);
  CHECK(ev.stats().calls <= first + 1);
}

TEST_CASE("prdef printing reparses") {
  TreeLang lang = nat_lang();
  PrimRecEnv env(&lang);
  PrimRecDef d = parse_prdef_text(
      "(prdef add 2 (rec 0) (clause 0 (arg 1)) (clause s (s (rec 0 (arg 1))))"
      " (clause _ (arg 1)))",
      env);
  PrimRecDef back = parse_prdef_text(print_prdef(d, lang), env);
  CHECK(back.name == d.name);
  CHECK(back.arity == d.arity);
  CHECK(back.clauses.size() == d.clauses.size());
  CHECK(print_prdef(back, lang) == print_prdef(d, lang));
}
