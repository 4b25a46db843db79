#include "demod/checker.hpp"

#include <algorithm>
#include <sstream>

#include "demod/syntax_io.hpp"

namespace demod {

namespace {

struct Ctx {
  const Theory* th;
  std::size_t fuel;
  std::vector<std::pair<Name, FormulaPtr>> pctx;  // innermost last
  std::vector<std::pair<Name, Name>> tctx;        // term variable sorts
};

[[noreturn]] void reject(const ProofPtr& at, const std::string& msg) {
  throw CheckError("at " + print_proof(at) + ": " + msg);
}

FormulaPtr norm(const Ctx& c, const FormulaPtr& f) {
  return normalize_formula(f, c.th->rules, c.fuel);
}

// Validates an embedded term against the sorts in scope; free variables must
// be bound by the context, annotations must agree.
void check_term_sort(const Ctx& c, const ProofPtr& at, const TermPtr& t, const Name& expected) {
  if (const Term::Var* v = as_var(t)) {
    for (auto it = c.tctx.rbegin(); it != c.tctx.rend(); ++it) {
      if (it->first != v->name) continue;
      if (v->sort && *v->sort != it->second)
        reject(at, "variable " + v->name + " annotated " + *v->sort + " but bound at sort " +
                       it->second);
      if (it->second != expected)
        reject(at, "term variable " + v->name + " has sort " + it->second + ", expected " +
                       expected);
      return;
    }
    reject(at, "unbound term variable " + v->name);
  }
  const Term::App& a = *as_app(t);
  const FunRank* r = c.th->sig.function(a.fn);
  if (!r) reject(at, "unknown function symbol " + a.fn);
  if (r->args.size() != a.args.size())
    reject(at, "function " + a.fn + " expects " + std::to_string(r->args.size()) + " arguments");
  for (std::size_t i = 0; i < a.args.size(); ++i) check_term_sort(c, at, a.args[i], r->args[i]);
  if (r->result != expected)
    reject(at, "term " + print_term(t) + " has sort " + r->result + ", expected " + expected);
}

// Copies the term with every variable annotated at its context sort, so the
// substituted formula stays well-sorted.
TermPtr annotate_term(const Ctx& c, const TermPtr& t) {
  if (const Term::Var* v = as_var(t)) {
    for (auto it = c.tctx.rbegin(); it != c.tctx.rend(); ++it)
      if (it->first == v->name) return mk_var(v->name, it->second);
    return t;
  }
  const Term::App& a = *as_app(t);
  std::vector<TermPtr> args;
  for (const TermPtr& x : a.args) args.push_back(annotate_term(c, x));
  return mk_app(a.fn, std::move(args));
}

void eigen_check(const Ctx& c, const ProofPtr& at, const Name& x,
                 const std::vector<FormulaPtr>& also) {
  for (const auto& [a, f] : c.pctx)
    if (occurs_free(x, f))
      reject(at, "eigenvariable " + x + " occurs free in hypothesis " + a);
  for (const FormulaPtr& f : also)
    if (occurs_free(x, f))
      reject(at, "eigenvariable " + x + " occurs free in " + print_formula(f));
}

// Sort of an embedded term's head, for cut clauses on unannotated binders.
Name term_sort(const Ctx& c, const ProofPtr& at, const TermPtr& t) {
  if (const Term::Var* v = as_var(t)) {
    for (auto it = c.tctx.rbegin(); it != c.tctx.rend(); ++it)
      if (it->first == v->name) return it->second;
    reject(at, "unbound term variable " + v->name);
  }
  const FunRank* r = c.th->sig.function(as_app(t)->fn);
  if (!r) reject(at, "unknown function symbol " + as_app(t)->fn);
  return r->result;
}

Derivation check(Ctx& c, const ProofPtr& p, const FormulaPtr& goal);

Derivation node(const Ctx& c, std::string rule, FormulaPtr shown,
                std::vector<Derivation> premises = {}) {
  return Derivation{std::move(rule), c.pctx, std::move(shown), std::move(premises)};
}

// Formulas synthesized for Axiom/App/Fst/Snd/TApp spines plus the formers
// with a unique formula (TopI, Pair of synthesizable components) and cuts
// whose formula is recoverable from the introduction under the elimination
// (beta with a synthesizable argument, tbeta with a synthesizable body).
// Everything else is rejected here and handled in checking mode.
std::optional<std::pair<FormulaPtr, Derivation>> infer(Ctx& c, const ProofPtr& p) {
  using R = std::optional<std::pair<FormulaPtr, Derivation>>;
  if (const PAxiom* x = proof_as<PAxiom>(p)) {
    for (auto it = c.pctx.rbegin(); it != c.pctx.rend(); ++it)
      if (it->first == x->name) return R{{it->second, node(c, "axiom", it->second)}};
    reject(p, "unbound hypothesis " + x->name);
  }
  if (proof_as<PTopI>(p)) return R{{mk_top(), node(c, "top-intro", mk_top())}};
  if (const PPair* x = proof_as<PPair>(p)) {
    auto a = infer(c, x->fst);
    if (!a) return std::nullopt;
    auto b = infer(c, x->snd);
    if (!b) return std::nullopt;
    FormulaPtr f = mk_and(a->first, b->first);
    return R{{f, node(c, "and-intro", f, {std::move(a->second), std::move(b->second)})}};
  }
  if (const PApp* x = proof_as<PApp>(p)) {
    if (const PLam* l = proof_as<PLam>(x->fn)) {
      auto a = infer(c, x->arg);
      if (!a) reject(x->arg, "cut argument cannot synthesize the cut formula");
      c.pctx.emplace_back(l->hyp, a->first);
      auto b = infer(c, l->body);
      c.pctx.pop_back();
      if (!b) reject(l->body, "cut body cannot synthesize a formula");
      Derivation lam =
          node(c, "imp-intro", mk_imp(a->first, b->first), {std::move(b->second)});
      return R{{b->first,
                node(c, "imp-elim", b->first, {std::move(lam), std::move(a->second)})}};
    }
    auto f = infer(c, x->fn);
    if (!f) reject(x->fn, "cannot synthesize a formula for the function position");
    FormulaPtr nf = norm(c, f->first);
    const Formula::Imp* imp = std::get_if<Formula::Imp>(&nf->node);
    if (!imp)
      reject(p, "function position proves " + print_formula(f->first) +
                    ", which does not rewrite to an implication");
    Derivation arg = check(c, x->arg, imp->l);
    return R{{imp->r, node(c, "imp-elim", imp->r, {std::move(f->second), std::move(arg)})}};
  }
  if (const PFst* x = proof_as<PFst>(p)) {
    auto f = infer(c, x->p);
    if (!f) reject(x->p, "cannot synthesize a formula for the projected pair");
    FormulaPtr nf = norm(c, f->first);
    const Formula::And* an = std::get_if<Formula::And>(&nf->node);
    if (!an)
      reject(p, "projection of " + print_formula(f->first) +
                    ", which does not rewrite to a conjunction");
    return R{{an->l, node(c, "and-elim-1", an->l, {std::move(f->second)})}};
  }
  if (const PSnd* x = proof_as<PSnd>(p)) {
    auto f = infer(c, x->p);
    if (!f) reject(x->p, "cannot synthesize a formula for the projected pair");
    FormulaPtr nf = norm(c, f->first);
    const Formula::And* an = std::get_if<Formula::And>(&nf->node);
    if (!an)
      reject(p, "projection of " + print_formula(f->first) +
                    ", which does not rewrite to a conjunction");
    return R{{an->r, node(c, "and-elim-2", an->r, {std::move(f->second)})}};
  }
  if (const PTApp* x = proof_as<PTApp>(p)) {
    if (const PTLam* l = proof_as<PTLam>(x->fn)) {
      Name s = l->sort ? *l->sort : term_sort(c, p, x->arg);
      check_term_sort(c, p, x->arg, s);
      eigen_check(c, p, l->var, {});
      c.tctx.emplace_back(l->var, s);
      auto b = infer(c, l->body);
      c.tctx.pop_back();
      if (!b) reject(l->body, "cut body cannot synthesize a formula");
      FormulaPtr shown = subst_in_formula(b->first, l->var, annotate_term(c, x->arg));
      Derivation lam =
          node(c, "forall-intro", mk_forall(l->var, s, b->first), {std::move(b->second)});
      return R{{shown, node(c, "forall-elim", shown, {std::move(lam)})}};
    }
    auto f = infer(c, x->fn);
    if (!f) reject(x->fn, "cannot synthesize a formula for the instantiated proof");
    FormulaPtr nf = norm(c, f->first);
    const Formula::Forall* fa = std::get_if<Formula::Forall>(&nf->node);
    if (!fa)
      reject(p, "instantiation of " + print_formula(f->first) +
                    ", which does not rewrite to a universal");
    check_term_sort(c, p, x->arg, fa->sort);
    FormulaPtr shown = subst_in_formula(fa->body, fa->var, annotate_term(c, x->arg));
    return R{{shown, node(c, "forall-elim", shown, {std::move(f->second)})}};
  }
  return std::nullopt;
}

Derivation check(Ctx& c, const ProofPtr& p, const FormulaPtr& goal) {
  FormulaPtr ngoal = norm(c, goal);
  if (const PLam* x = proof_as<PLam>(p)) {
    const Formula::Imp* imp = std::get_if<Formula::Imp>(&ngoal->node);
    if (!imp)
      reject(p, "lam against " + print_formula(goal) +
                    ", which does not rewrite to an implication");
    c.pctx.emplace_back(x->hyp, imp->l);
    Derivation b = check(c, x->body, imp->r);
    c.pctx.pop_back();
    return node(c, "imp-intro", goal, {std::move(b)});
  }
  if (const PPair* x = proof_as<PPair>(p)) {
    const Formula::And* an = std::get_if<Formula::And>(&ngoal->node);
    if (!an)
      reject(p, "pair against " + print_formula(goal) +
                    ", which does not rewrite to a conjunction");
    Derivation l = check(c, x->fst, an->l);
    Derivation r = check(c, x->snd, an->r);
    return node(c, "and-intro", goal, {std::move(l), std::move(r)});
  }
  if (const PInl* x = proof_as<PInl>(p)) {
    const Formula::Or* o = std::get_if<Formula::Or>(&ngoal->node);
    if (!o)
      reject(p, "inl against " + print_formula(goal) +
                    ", which does not rewrite to a disjunction");
    return node(c, "or-intro-1", goal, {check(c, x->p, o->l)});
  }
  if (const PInr* x = proof_as<PInr>(p)) {
    const Formula::Or* o = std::get_if<Formula::Or>(&ngoal->node);
    if (!o)
      reject(p, "inr against " + print_formula(goal) +
                    ", which does not rewrite to a disjunction");
    return node(c, "or-intro-2", goal, {check(c, x->p, o->r)});
  }
  if (proof_as<PTopI>(p)) {
    if (!std::get_if<Formula::Top>(&ngoal->node))
      reject(p, "topI against " + print_formula(goal) + ", which does not rewrite to top");
    return node(c, "top-intro", goal);
  }
  if (const PBotE* x = proof_as<PBotE>(p)) {
    Derivation b = check(c, x->p, mk_bot());
    return node(c, "bot-elim", goal, {std::move(b)});
  }
  if (const PCase* x = proof_as<PCase>(p)) {
    // Case over an injection: a cut. The injected side is synthesized, the
    // vacant side is taken at the goal (one valid derivation suffices).
    if (const PInl* il = proof_as<PInl>(x->scrut)) {
      auto a = infer(c, il->p);
      if (!a) reject(il->p, "cut scrutinee cannot synthesize the cut formula");
      c.pctx.emplace_back(x->lhyp, a->first);
      Derivation l = check(c, x->lbody, goal);
      c.pctx.pop_back();
      c.pctx.emplace_back(x->rhyp, goal);
      Derivation r = check(c, x->rbody, goal);
      c.pctx.pop_back();
      Derivation sc = node(c, "or-intro-1", mk_or(a->first, goal), {std::move(a->second)});
      return node(c, "or-elim", goal, {std::move(sc), std::move(l), std::move(r)});
    }
    if (const PInr* ir = proof_as<PInr>(x->scrut)) {
      auto a = infer(c, ir->p);
      if (!a) reject(ir->p, "cut scrutinee cannot synthesize the cut formula");
      c.pctx.emplace_back(x->lhyp, goal);
      Derivation l = check(c, x->lbody, goal);
      c.pctx.pop_back();
      c.pctx.emplace_back(x->rhyp, a->first);
      Derivation r = check(c, x->rbody, goal);
      c.pctx.pop_back();
      Derivation sc = node(c, "or-intro-2", mk_or(goal, a->first), {std::move(a->second)});
      return node(c, "or-elim", goal, {std::move(sc), std::move(l), std::move(r)});
    }
    auto f = infer(c, x->scrut);
    if (!f) reject(x->scrut, "cannot synthesize a formula for the case scrutinee");
    FormulaPtr nf = norm(c, f->first);
    const Formula::Or* o = std::get_if<Formula::Or>(&nf->node);
    if (!o)
      reject(p, "case scrutinee proves " + print_formula(f->first) +
                    ", which does not rewrite to a disjunction");
    c.pctx.emplace_back(x->lhyp, o->l);
    Derivation l = check(c, x->lbody, goal);
    c.pctx.pop_back();
    c.pctx.emplace_back(x->rhyp, o->r);
    Derivation r = check(c, x->rbody, goal);
    c.pctx.pop_back();
    return node(c, "or-elim", goal, {std::move(f->second), std::move(l), std::move(r)});
  }
  if (const PTLam* x = proof_as<PTLam>(p)) {
    const Formula::Forall* fa = std::get_if<Formula::Forall>(&ngoal->node);
    if (!fa)
      reject(p, "tlam against " + print_formula(goal) +
                    ", which does not rewrite to a universal");
    if (x->sort && *x->sort != fa->sort)
      reject(p, "binder annotated " + *x->sort + " but the universal quantifies over " +
                    fa->sort);
    eigen_check(c, p, x->var, {ngoal});
    c.tctx.emplace_back(x->var, fa->sort);
    FormulaPtr body = subst_in_formula(fa->body, fa->var, mk_var(x->var, fa->sort));
    Derivation b = check(c, x->body, body);
    c.tctx.pop_back();
    return node(c, "forall-intro", goal, {std::move(b)});
  }
  if (const PWit* x = proof_as<PWit>(p)) {
    const Formula::Exists* ex = std::get_if<Formula::Exists>(&ngoal->node);
    if (!ex)
      reject(p, "wit against " + print_formula(goal) +
                    ", which does not rewrite to an existential");
    check_term_sort(c, p, x->witness, ex->sort);
    FormulaPtr body = subst_in_formula(ex->body, ex->var, annotate_term(c, x->witness));
    return node(c, "exists-intro", goal, {check(c, x->body, body)});
  }
  if (const PExElim* x = proof_as<PExElim>(p)) {
    // Unpacking a witness: a cut, read at the vacuous existential over the
    // synthesized body formula.
    if (const PWit* w = proof_as<PWit>(x->scrut)) {
      auto a = infer(c, w->body);
      if (!a) reject(w->body, "cut witness body cannot synthesize the cut formula");
      Name s = x->sort ? *x->sort : term_sort(c, p, w->witness);
      check_term_sort(c, p, w->witness, s);
      eigen_check(c, p, x->var, {a->first, goal});
      c.tctx.emplace_back(x->var, s);
      c.pctx.emplace_back(x->hyp, a->first);
      Derivation b = check(c, x->body, goal);
      c.pctx.pop_back();
      c.tctx.pop_back();
      Derivation sc =
          node(c, "exists-intro", mk_exists(x->var, s, a->first), {std::move(a->second)});
      return node(c, "exists-elim", goal, {std::move(sc), std::move(b)});
    }
    auto f = infer(c, x->scrut);
    if (!f) reject(x->scrut, "cannot synthesize a formula for the unpacked existential");
    FormulaPtr nf = norm(c, f->first);
    const Formula::Exists* ex = std::get_if<Formula::Exists>(&nf->node);
    if (!ex)
      reject(p, "exelim scrutinee proves " + print_formula(f->first) +
                    ", which does not rewrite to an existential");
    if (x->sort && *x->sort != ex->sort)
      reject(p, "binder annotated " + *x->sort + " but the existential quantifies over " +
                    ex->sort);
    eigen_check(c, p, x->var, {nf, goal});
    c.tctx.emplace_back(x->var, ex->sort);
    FormulaPtr hyp = subst_in_formula(ex->body, ex->var, mk_var(x->var, ex->sort));
    c.pctx.emplace_back(x->hyp, hyp);
    Derivation b = check(c, x->body, goal);
    c.pctx.pop_back();
    c.tctx.pop_back();
    return node(c, "exists-elim", goal, {std::move(f->second), std::move(b)});
  }
  // Eliminations applied directly to their introductions: cuts whose cut
  // formula is synthesized from the introduction's components, with the
  // consumed side checked against the goal.
  if (const PApp* x = proof_as<PApp>(p)) {
    if (const PLam* l = proof_as<PLam>(x->fn)) {
      auto a = infer(c, x->arg);
      if (!a) reject(x->arg, "cut argument cannot synthesize the cut formula");
      c.pctx.emplace_back(l->hyp, a->first);
      Derivation b = check(c, l->body, goal);
      c.pctx.pop_back();
      Derivation lam = node(c, "imp-intro", mk_imp(a->first, goal), {std::move(b)});
      return node(c, "imp-elim", goal, {std::move(lam), std::move(a->second)});
    }
  }
  if (const PFst* x = proof_as<PFst>(p)) {
    if (const PPair* pr = proof_as<PPair>(x->p)) {
      Derivation l = check(c, pr->fst, goal);
      auto b = infer(c, pr->snd);
      if (!b) reject(pr->snd, "cut component cannot synthesize the cut formula");
      Derivation pair =
          node(c, "and-intro", mk_and(goal, b->first), {std::move(l), std::move(b->second)});
      return node(c, "and-elim-1", goal, {std::move(pair)});
    }
  }
  if (const PSnd* x = proof_as<PSnd>(p)) {
    if (const PPair* pr = proof_as<PPair>(x->p)) {
      auto a = infer(c, pr->fst);
      if (!a) reject(pr->fst, "cut component cannot synthesize the cut formula");
      Derivation r = check(c, pr->snd, goal);
      Derivation pair =
          node(c, "and-intro", mk_and(a->first, goal), {std::move(a->second), std::move(r)});
      return node(c, "and-elim-2", goal, {std::move(pair)});
    }
  }
  if (const PTApp* x = proof_as<PTApp>(p)) {
    // Instantiating a term abstraction: read at the vacuous universal.
    if (const PTLam* l = proof_as<PTLam>(x->fn)) {
      Name s = l->sort ? *l->sort : term_sort(c, p, x->arg);
      check_term_sort(c, p, x->arg, s);
      eigen_check(c, p, l->var, {ngoal});
      c.tctx.emplace_back(l->var, s);
      Derivation b = check(c, l->body, goal);
      c.tctx.pop_back();
      Derivation lam = node(c, "forall-intro", mk_forall(l->var, s, goal), {std::move(b)});
      return node(c, "forall-elim", goal, {std::move(lam)});
    }
  }
  // Synthesizing formers: accept iff the synthesized formula is congruent to
  // the goal.
  auto f = infer(c, p);
  if (!f) reject(p, "former cannot be checked against " + print_formula(goal));
  if (!congruent(f->first, goal, c.th->rules, c.fuel))
    reject(p, "proves " + print_formula(f->first) + " but the goal is " + print_formula(goal));
  return f->second;
}

}  // namespace

Derivation check_proof(const Theory& th, const Sequent& seq, const ProofPtr& p,
                       std::size_t fuel) {
  Ctx c;
  c.th = &th;
  c.fuel = fuel;
  for (const auto& [a, f] : seq.hyps) {
    for (const auto& [b, g] : c.pctx)
      if (a == b) throw CheckError("duplicate hypothesis name " + a);
    check_formula_sorts(f, th.sig);
    c.pctx.emplace_back(a, f);
  }
  check_formula_sorts(seq.goal, th.sig);
  for (const auto& [x, s] : free_vars(seq)) c.tctx.emplace_back(x, s);
  Derivation d = check(c, p, seq.goal);
  d.shown = seq.goal;
  return d;
}

namespace {

void print_deriv_rec(const Derivation& d, std::size_t depth, std::ostringstream& os) {
  os << std::string(2 * depth, ' ') << d.rule << ": ";
  for (std::size_t i = 0; i < d.hyps.size(); ++i)
    os << (i ? ", " : "") << d.hyps[i].first << ":" << print_formula(d.hyps[i].second);
  os << " |- " << print_formula(d.shown) << "\n";
  for (const Derivation& q : d.premises) print_deriv_rec(q, depth + 1, os);
}

}  // namespace

std::string print_derivation(const Derivation& d) {
  std::ostringstream os;
  print_deriv_rec(d, 0, os);
  return os.str();
}

}  // namespace demod
