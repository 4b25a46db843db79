#include "demod/s_axioms.hpp"

#include <algorithm>

namespace demod {

namespace {

TermPtr tv(const Name& n) { return mk_var(n, Name(kTreeSort)); }

FormulaPtr eq(TermPtr a, TermPtr b) {
  return mk_atom("=", {std::move(a), std::move(b)});
}

// Quantifier names for schema instances must not clash with the instance's
// own free variables (its parameters).
Name fresh_named(const std::string& base, const FormulaPtr& avoid,
                 const std::vector<Name>& taken) {
  auto ok = [&](const Name& cand) {
    return !occurs_free(cand, avoid) &&
           std::find(taken.begin(), taken.end(), cand) == taken.end();
  };
  if (ok(base)) return base;
  for (int k = 1;; ++k) {
    Name cand = base + std::to_string(k);
    if (ok(cand)) return cand;
  }
}

struct EquationCtx {
  const PrimRecDef& def;
  bool has_cond;
};

Name child_var(std::size_t i) { return "y" + std::to_string(i + 1); }
Name param_var(std::size_t j) { return "x" + std::to_string(j + 1); }

TermPtr expr_term(const PrExpr& e, const EquationCtx& ctx) {
  switch (e.kind) {
    case PrKind::Child:
      return tv(child_var(e.index));
    case PrKind::Arg:
      return tv(param_var(e.index));
    case PrKind::Lit:
      return tree_to_term(e.lit);
    case PrKind::Make:
    case PrKind::Call: {
      std::vector<TermPtr> args;
      args.reserve(e.args.size());
      for (const auto& a : e.args) args.push_back(expr_term(*a, ctx));
      return mk_app(e.name, std::move(args));
    }
    case PrKind::If: {
      if (!ctx.has_cond) {
        throw InputError("def '" + ctx.def.name +
                         "' uses a conditional but no cond definition is present");
      }
      return mk_app("cond", {expr_term(*e.args[0], ctx), expr_term(*e.args[1], ctx),
                             expr_term(*e.args[2], ctx)});
    }
    case PrKind::Rec: {
      std::vector<TermPtr> args(ctx.def.arity);
      args[ctx.def.rec_pos] = tv(child_var(e.index));
      std::size_t k = 0;
      for (std::size_t j = 0; j < ctx.def.arity; ++j) {
        if (j == ctx.def.rec_pos) continue;
        args[j] = expr_term(*e.args[k++], ctx);
      }
      return mk_app(ctx.def.name, std::move(args));
    }
  }
  throw Error("unreachable PR expression kind");
}

}  // namespace

FormulaTemplate derived_relation(const std::string& name) {
  Name tree(kTreeSort);
  if (name == "Red*") {
    FormulaPtr body = mk_exists(
        "n", tree,
        mk_and(mk_atom("Nat", {tv("n")}), mk_atom("Redn", {tv("x"), tv("n"), tv("y")})));
    return FormulaTemplate{{"x", "y"}, body};
  }
  if (name == "SN") {
    FormulaPtr no_reduct = mk_forall(
        "y", tree,
        mk_imp(mk_atom("Proof", {tv("y")}),
               mk_not(mk_atom("Redn", {tv("x"), tv("n"), tv("y")}))));
    FormulaPtr body =
        mk_and(mk_atom("Proof", {tv("x")}),
               mk_exists("n", tree, mk_and(mk_atom("Nat", {tv("n")}), no_reduct)));
    return FormulaTemplate{{"x"}, body};
  }
  throw InputError("unknown derived relation '" + name + "'");
}

TermPtr tree_to_term(TreePtr t) {
  if (tree_height(t) > 4000) {
    throw BudgetError("literal tree too tall to render as a term");
  }
  std::vector<TermPtr> args;
  args.reserve(t->kids.size());
  for (TreePtr k : t->kids) args.push_back(tree_to_term(k));
  return mk_app(tree_ctor_name(t->ctor), std::move(args));
}

Theory emit_s_axioms(const TreeLang& lang, const std::vector<PrimRecDef>& defs,
                     const std::vector<FormulaTemplate>& induction_instances) {
  lang.validate();
  Name tree(kTreeSort);
  Theory th;
  th.sig.add_sort(tree);
  for (const auto& c : lang.ctors) {
    th.sig.add_function(c.name, FunRank{std::vector<Name>(c.arity, tree), tree});
  }
  bool has_cond = false;
  for (const auto& d : defs) {
    th.sig.add_function(d.name, FunRank{std::vector<Name>(d.arity, tree), tree});
    if (d.name == "cond") has_cond = true;
  }
  th.sig.add_predicate("=", {tree, tree});

  auto vars = [&](const char* base, std::size_t n) {
    std::vector<TermPtr> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(tv(base + std::to_string(i + 1)));
    return vs;
  };

  // Equality: reflexivity, combined symmetry/transitivity, congruence.
  th.axioms.push_back(close_universally(eq(tv("x"), tv("x"))));
  th.axioms.push_back(close_universally(
      mk_imp(mk_and(eq(tv("x"), tv("y")), eq(tv("x"), tv("z"))), eq(tv("y"), tv("z")))));
  for (const auto& [fn, rank] : th.sig.functions) {
    std::size_t n = rank.args.size();
    if (n == 0) {
      th.axioms.push_back(eq(mk_app(fn, {}), mk_app(fn, {})));
      continue;
    }
    std::vector<FormulaPtr> eqs;
    for (std::size_t i = 0; i < n; ++i) {
      eqs.push_back(eq(tv(param_var(i)), tv(child_var(i))));
    }
    th.axioms.push_back(close_universally(
        mk_imp(mk_and_chain(std::move(eqs)),
               eq(mk_app(fn, vars("x", n)), mk_app(fn, vars("y", n))))));
  }

  // Constructor injectivity and pairwise non-confusion.
  for (const auto& c : lang.ctors) {
    std::size_t k = c.arity;
    std::vector<FormulaPtr> eqs;
    for (std::size_t i = 0; i < k; ++i) {
      eqs.push_back(eq(tv(param_var(i)), tv(child_var(i))));
    }
    th.axioms.push_back(close_universally(
        mk_imp(eq(mk_app(c.name, vars("x", k)), mk_app(c.name, vars("y", k))),
               mk_and_chain(std::move(eqs)))));
  }
  for (const auto& ci : lang.ctors) {
    for (const auto& cj : lang.ctors) {
      if (ci.id == cj.id) continue;
      th.axioms.push_back(close_universally(
          mk_imp(eq(mk_app(ci.name, vars("x", ci.arity)),
                    mk_app(cj.name, vars("y", cj.arity))),
                 mk_bot())));
    }
  }

  // One equation per defining clause.
  for (const auto& d : defs) {
    EquationCtx ctx{d, has_cond};
    for (std::size_t pos = 0; pos < d.clauses.size(); ++pos) {
      const auto& c = lang.ctors[pos];
      std::vector<TermPtr> lhs_args(d.arity);
      lhs_args[d.rec_pos] = mk_app(c.name, vars("y", c.arity));
      for (std::size_t j = 0; j < d.arity; ++j) {
        if (j != d.rec_pos) lhs_args[j] = tv(param_var(j));
      }
      th.axioms.push_back(close_universally(
          eq(mk_app(d.name, std::move(lhs_args)), expr_term(*d.clauses[pos], ctx))));
    }
  }

  // Induction, one axiom per supplied instance:
  //   (/\_i forall y1..yk A(c_i(y1..yk))) -> forall x A(x)
  for (const auto& inst : induction_instances) {
    if (inst.holes.size() != 1) {
      throw InputError("induction instance must have exactly one hole");
    }
    std::vector<Name> taken;
    std::vector<FormulaPtr> comps;
    for (const auto& c : lang.ctors) {
      std::vector<Name> ys;
      for (std::size_t i = 0; i < c.arity; ++i) {
        Name y = fresh_named(child_var(i), inst.body, taken);
        taken.push_back(y);
        ys.push_back(y);
      }
      std::vector<TermPtr> args;
      for (const auto& y : ys) args.push_back(tv(y));
      FormulaPtr comp = instantiate_template(inst, {mk_app(c.name, std::move(args))});
      for (auto it = ys.rbegin(); it != ys.rend(); ++it) {
        comp = mk_forall(*it, tree, comp);
      }
      comps.push_back(std::move(comp));
    }
    Name x = fresh_named("x", inst.body, taken);
    th.axioms.push_back(close_universally(
        mk_imp(mk_and_chain(std::move(comps)),
               mk_forall(x, tree, instantiate_template(inst, {tv(x)})))));
  }

  th.validate();
  return th;
}

Signature s_extended_signature(const TreeLang& lang,
                               const std::vector<PrimRecDef>& defs) {
  Name tree(kTreeSort);
  Signature sig;
  sig.add_sort(tree);
  for (const auto& c : lang.ctors) {
    sig.add_function(c.name, FunRank{std::vector<Name>(c.arity, tree), tree});
  }
  for (const auto& d : defs) {
    sig.add_function(d.name, FunRank{std::vector<Name>(d.arity, tree), tree});
  }
  sig.add_predicate("=", {tree, tree});
  struct Rel {
    const char* name;
    std::size_t arity;
  };
  constexpr Rel kRels[] = {{"Nat", 1},     {"Le", 2},    {"Sort", 1}, {"TermVar", 2},
                           {"Term", 2},    {"ProofVar", 1}, {"Proof", 1}, {"Elim", 1},
                           {"Red", 2},     {"Redn", 3}};
  for (const auto& r : kRels) {
    for (const auto& d : defs) {
      if (d.name == r.name && d.arity == r.arity) {
        sig.add_predicate(r.name, std::vector<Name>(r.arity, tree));
        break;
      }
    }
  }
  sig.add_predicate("Red*", {tree, tree});
  sig.add_predicate("SN", {tree});
  sig.add_predicate("L", {tree});
  sig.validate();
  return sig;
}

}  // namespace demod
