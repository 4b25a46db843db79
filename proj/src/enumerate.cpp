#include "demod/enumerate.hpp"

#include <algorithm>
#include <functional>

namespace demod {

namespace {

// Calls emit on every composition of total into parts summands, each >= 1,
// first summand ascending.
void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& acc,
                  const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (parts == 1) {
    if (total >= 1) {
      acc.push_back(total);
      emit(acc);
      acc.pop_back();
    }
    return;
  }
  for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
    acc.push_back(first);
    compositions(total - first, parts - 1, acc, emit);
    acc.pop_back();
  }
}

void for_compositions(std::size_t total, std::size_t parts,
                      const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (parts == 0 || total < parts) return;
  std::vector<std::size_t> acc;
  acc.reserve(parts);
  compositions(total, parts, acc, emit);
}

}  // namespace

std::vector<ProofPtr> enumerate_proofs(const ProofEnumOptions& opt) {
  std::vector<TermPtr> terms = opt.terms;
  if (terms.empty())
    for (const Name& x : opt.tvars) terms.push_back(mk_var(x, std::nullopt));
  std::vector<std::size_t> tsize;
  tsize.reserve(terms.size());
  for (const TermPtr& t : terms) tsize.push_back(term_size(t));

  const bool full = !opt.imp_pair_only;
  const bool tf = full && opt.term_formers;
  std::vector<std::vector<ProofPtr>> lv(opt.max_size + 1);
  for (std::size_t n = 1; n <= opt.max_size; ++n) {
    std::vector<ProofPtr>& out = lv[n];
    if (n == 1) {
      for (const Name& a : opt.pvars) out.push_back(mk_proof(PAxiom{a}));
      out.push_back(mk_proof(PTopI{}));
      continue;
    }
    for (const Name& a : opt.pvars)
      for (const ProofPtr& b : lv[n - 1]) out.push_back(mk_proof(PLam{a, b}));
    for_compositions(n - 1, 2, [&](const std::vector<std::size_t>& s) {
      for (const ProofPtr& f : lv[s[0]])
        for (const ProofPtr& a : lv[s[1]]) out.push_back(mk_proof(PApp{f, a}));
    });
    for_compositions(n - 1, 2, [&](const std::vector<std::size_t>& s) {
      for (const ProofPtr& f : lv[s[0]])
        for (const ProofPtr& g : lv[s[1]]) out.push_back(mk_proof(PPair{f, g}));
    });
    for (const ProofPtr& b : lv[n - 1]) out.push_back(mk_proof(PFst{b}));
    for (const ProofPtr& b : lv[n - 1]) out.push_back(mk_proof(PSnd{b}));
    if (full) {
      for (const ProofPtr& b : lv[n - 1]) out.push_back(mk_proof(PInl{b}));
      for (const ProofPtr& b : lv[n - 1]) out.push_back(mk_proof(PInr{b}));
      if (opt.case_former) {
        for_compositions(n - 1, 3, [&](const std::vector<std::size_t>& s) {
          for (const ProofPtr& sc : lv[s[0]])
            for (const Name& lh : opt.pvars)
              for (const ProofPtr& lb : lv[s[1]])
                for (const Name& rh : opt.pvars)
                  for (const ProofPtr& rb : lv[s[2]])
                    out.push_back(mk_proof(PCase{sc, lh, lb, rh, rb}));
        });
      }
      for (const ProofPtr& b : lv[n - 1]) out.push_back(mk_proof(PBotE{b}));
    }
    if (tf) {
      for (const Name& x : opt.tvars)
        for (const ProofPtr& b : lv[n - 1])
          out.push_back(mk_proof(PTLam{x, std::nullopt, b}));
      for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        if (n < 2 + tsize[ti]) continue;
        for (const ProofPtr& f : lv[n - 1 - tsize[ti]])
          out.push_back(mk_proof(PTApp{f, terms[ti]}));
      }
      for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        if (n < 2 + tsize[ti]) continue;
        for (const ProofPtr& b : lv[n - 1 - tsize[ti]])
          out.push_back(mk_proof(PWit{terms[ti], b}));
      }
      for_compositions(n - 1, 2, [&](const std::vector<std::size_t>& s) {
        for (const ProofPtr& sc : lv[s[0]])
          for (const Name& x : opt.tvars)
            for (const Name& h : opt.pvars)
              for (const ProofPtr& b : lv[s[1]])
                out.push_back(mk_proof(PExElim{sc, x, std::nullopt, h, b}));
      });
    }
  }
  std::size_t total = 0;
  for (std::size_t n = 1; n <= opt.max_size; ++n) total += lv[n].size();
  std::vector<ProofPtr> all;
  all.reserve(total);
  for (std::size_t n = 1; n <= opt.max_size; ++n)
    all.insert(all.end(), lv[n].begin(), lv[n].end());
  return all;
}

std::vector<TermPtr> enumerate_terms(const Signature& sig, const Name& sort,
                                     const std::vector<std::pair<Name, Name>>& vars,
                                     std::size_t max_size) {
  if (!sig.has_sort(sort)) throw InputError("enumerate_terms: unknown sort " + sort);
  std::map<Name, std::vector<std::vector<TermPtr>>> lv;
  for (const Name& s : sig.sorts) lv[s].assign(max_size + 1, {});
  for (const auto& [x, s] : vars) {
    auto it = lv.find(s);
    if (it == lv.end())
      throw InputError("enumerate_terms: variable " + x + " has unknown sort " + s);
    if (max_size >= 1) it->second[1].push_back(mk_var(x, s));
  }
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const auto& [f, rank] : sig.functions) {
      std::vector<std::vector<TermPtr>>& res = lv.at(rank.result);
      const std::size_t k = rank.args.size();
      if (k == 0) {
        if (n == 1) res[1].push_back(mk_app(f, {}));
        continue;
      }
      for_compositions(n - 1, k, [&](const std::vector<std::size_t>& parts) {
        std::vector<TermPtr> args(k);
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
          if (i == k) {
            res[n].push_back(mk_app(f, args));
            return;
          }
          for (const TermPtr& a : lv.at(rank.args[i])[parts[i]]) {
            args[i] = a;
            fill(i + 1);
          }
        };
        fill(0);
      });
    }
  }
  std::vector<TermPtr> out;
  const std::vector<std::vector<TermPtr>>& mine = lv.at(sort);
  for (std::size_t n = 1; n <= max_size; ++n)
    out.insert(out.end(), mine[n].begin(), mine[n].end());
  return out;
}

std::vector<TreePtr> enumerate_trees(const TreeLang& lang, std::size_t max_size,
                                     std::size_t max_count) {
  std::vector<std::vector<TreePtr>> lv(max_size + 1);
  std::size_t count = 0;
  auto bump = [&] {
    if (++count > max_count) throw BudgetError("enumerate_trees: count cap exceeded");
  };
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const TreeLang::Ctor& c : lang.ctors) {
      if (c.arity == 0) {
        if (n == 1) {
          bump();
          lv[1].push_back(mk_tree(c.id, {}));
        }
        continue;
      }
      for_compositions(n - 1, c.arity, [&](const std::vector<std::size_t>& parts) {
        std::vector<TreePtr> kids(c.arity);
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
          if (i == c.arity) {
            bump();
            lv[n].push_back(mk_tree(c.id, kids));
            return;
          }
          for (TreePtr k : lv[parts[i]]) {
            kids[i] = k;
            fill(i + 1);
          }
        };
        fill(0);
      });
    }
  }
  std::vector<TreePtr> all;
  all.reserve(count);
  for (std::size_t n = 1; n <= max_size; ++n)
    all.insert(all.end(), lv[n].begin(), lv[n].end());
  return all;
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) {
  return static_cast<std::size_t>(next() % static_cast<std::uint64_t>(n));
}

namespace {

bool contains(const std::vector<Name>& v, const Name& n) {
  return std::find(v.begin(), v.end(), n) != v.end();
}

// Sorts with a term generator available: a variable in scope, or a function
// all of whose argument sorts already qualify.
std::vector<Name> anchored_sorts(const Signature& sig,
                                 const std::vector<std::pair<Name, Name>>& vars) {
  std::vector<Name> anch;
  for (const auto& v : vars)
    if (!contains(anch, v.second)) anch.push_back(v.second);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [f, rank] : sig.functions) {
      if (contains(anch, rank.result)) continue;
      bool ok = true;
      for (const Name& a : rank.args) ok = ok && contains(anch, a);
      if (ok) {
        anch.push_back(rank.result);
        grew = true;
      }
    }
  }
  return anch;
}

TermPtr random_term_of(Rng& rng, const Signature& sig, const Name& sort,
                       const std::vector<std::pair<Name, Name>>& vars,
                       std::size_t budget) {
  struct Gen {
    const Name* var = nullptr;
    const std::pair<Name, FunRank>* fn = nullptr;
  };
  std::vector<Gen> gens;
  for (const auto& v : vars)
    if (v.second == sort) gens.push_back({&v.first, nullptr});
  std::vector<Name> anch = anchored_sorts(sig, vars);
  for (const auto& f : sig.functions) {
    if (f.second.result != sort) continue;
    if (!f.second.args.empty() && budget == 0) continue;
    bool ok = true;
    for (const Name& a : f.second.args) ok = ok && contains(anch, a);
    if (ok) gens.push_back({nullptr, &f});
  }
  if (gens.empty())
    throw InputError("random_term_of: no generator for sort " + sort);
  const Gen& g = gens[rng.below(gens.size())];
  if (g.var) return mk_var(*g.var, sort);
  std::vector<TermPtr> args;
  args.reserve(g.fn->second.args.size());
  for (const Name& s : g.fn->second.args)
    args.push_back(random_term_of(rng, sig, s, vars, budget == 0 ? 0 : budget - 1));
  return mk_app(g.fn->first, args);
}

// budget == 0 admits variables and nullary functions only; anchored_sorts
// guarantees progress, so termination needs no further argument.
FormulaPtr random_formula_rec(Rng& rng, const Signature& sig,
                              std::vector<std::pair<Name, Name>>& vars, std::size_t depth,
                              std::size_t& counter) {
  std::vector<Name> anch = anchored_sorts(sig, vars);
  std::vector<const std::pair<Name, std::vector<Name>>*> preds;
  for (const auto& p : sig.predicates) {
    bool ok = true;
    for (const Name& s : p.second) ok = ok && contains(anch, s);
    if (ok) preds.push_back(&p);
  }
  enum Kind { kAtom, kTop, kBot, kAnd, kOr, kImp, kForall, kExists };
  std::vector<Kind> kinds;
  if (!preds.empty()) kinds.insert(kinds.end(), 3, kAtom);
  kinds.push_back(kTop);
  kinds.push_back(kBot);
  if (depth > 0) {
    for (Kind k : {kAnd, kOr, kImp}) kinds.insert(kinds.end(), 2, k);
    if (!sig.sorts.empty()) {
      kinds.insert(kinds.end(), 2, kForall);
      kinds.insert(kinds.end(), 2, kExists);
    }
  }
  const Kind kind = kinds[rng.below(kinds.size())];
  switch (kind) {
    case kAtom: {
      const auto& pr = *preds[rng.below(preds.size())];
      std::vector<TermPtr> args;
      args.reserve(pr.second.size());
      for (const Name& s : pr.second) args.push_back(random_term_of(rng, sig, s, vars, 2));
      return mk_atom(pr.first, args);
    }
    case kTop:
      return mk_top();
    case kBot:
      return mk_bot();
    case kAnd:
      return mk_and(random_formula_rec(rng, sig, vars, depth - 1, counter),
                    random_formula_rec(rng, sig, vars, depth - 1, counter));
    case kOr:
      return mk_or(random_formula_rec(rng, sig, vars, depth - 1, counter),
                   random_formula_rec(rng, sig, vars, depth - 1, counter));
    case kImp:
      return mk_imp(random_formula_rec(rng, sig, vars, depth - 1, counter),
                    random_formula_rec(rng, sig, vars, depth - 1, counter));
    default:
      break;
  }
  Name s = sig.sorts[rng.below(sig.sorts.size())];
  Name x = "q" + std::to_string(++counter);
  while (std::any_of(vars.begin(), vars.end(),
                     [&](const auto& v) { return v.first == x; }))
    x = "q" + std::to_string(++counter);
  vars.emplace_back(x, s);
  FormulaPtr body = random_formula_rec(rng, sig, vars, depth - 1, counter);
  vars.pop_back();
  return kind == kForall ? mk_forall(x, s, body) : mk_exists(x, s, body);
}

}  // namespace

FormulaPtr random_formula(Rng& rng, const Signature& sig,
                          const std::vector<std::pair<Name, Name>>& vars,
                          std::size_t depth) {
  std::vector<std::pair<Name, Name>> scope = vars;
  std::size_t counter = 0;
  return random_formula_rec(rng, sig, scope, depth, counter);
}

namespace {

struct DerivState {
  Rng* rng;
  const Theory* th;
  std::vector<std::pair<Name, FormulaPtr>> scope;  // hypotheses, innermost last
  std::vector<Name> anch;                          // sorts with closed terms
  std::size_t hyp_n = 0, var_n = 0, fml_n = 0;

  Name fresh_hyp() { return "h" + std::to_string(++hyp_n); }
  Name fresh_tvar() { return "w" + std::to_string(++var_n); }
  FormulaPtr rand_formula(std::size_t d) {
    std::vector<std::pair<Name, Name>> none;
    return random_formula_rec(*rng, th->sig, none, d, fml_n);
  }
  TermPtr rand_term(const Name& s) { return random_term_of(*rng, th->sig, s, {}, 2); }
};

using Judged = std::pair<ProofPtr, FormulaPtr>;

Judged gen_checkable(DerivState& st, std::size_t d);

// Proofs whose formula the checker synthesizes: hypotheses, TopI, pairs of
// synthesizable parts, beta cuts with synthesizable bodies.
Judged gen_inferable(DerivState& st, std::size_t d) {
  enum Kind { kAx, kTop, kPair, kBeta };
  std::vector<Kind> kinds;
  if (!st.scope.empty()) kinds.insert(kinds.end(), 2, kAx);
  kinds.push_back(kTop);
  if (d > 0) {
    kinds.insert(kinds.end(), 2, kPair);
    kinds.insert(kinds.end(), 2, kBeta);
  }
  switch (kinds[st.rng->below(kinds.size())]) {
    case kAx: {
      const auto& h = st.scope[st.rng->below(st.scope.size())];
      return {mk_proof(PAxiom{h.first}), h.second};
    }
    case kTop:
      return {mk_proof(PTopI{}), mk_top()};
    case kPair: {
      Judged a = gen_inferable(st, d - 1);
      Judged b = gen_inferable(st, d - 1);
      return {mk_proof(PPair{a.first, b.first}), mk_and(a.second, b.second)};
    }
    default: {
      Judged arg = gen_inferable(st, d - 1);
      Name a = st.fresh_hyp();
      st.scope.emplace_back(a, arg.second);
      Judged body = gen_inferable(st, d - 1);
      st.scope.pop_back();
      return {mk_proof(PApp{mk_proof(PLam{a, body.first}), arg.first}), body.second};
    }
  }
}

Judged gen_checkable(DerivState& st, std::size_t d) {
  enum Kind {
    kAx, kTop, kImpI, kAndI, kOrI1, kOrI2, kBeta, kFstCut, kSndCut, kCaseCut,
    kForallI, kTBetaCut, kExI, kWitCut, kBotE, kHypProj, kHypInst
  };
  std::vector<std::pair<Name, FormulaPtr>> bots, ands, alls;
  for (const auto& h : st.scope) {
    if (std::get_if<Formula::Bot>(&h.second->node)) bots.push_back(h);
    if (std::get_if<Formula::And>(&h.second->node)) ands.push_back(h);
    if (const auto* fa = std::get_if<Formula::Forall>(&h.second->node))
      if (contains(st.anch, fa->sort)) alls.push_back(h);
  }
  std::vector<Kind> kinds;
  if (!st.scope.empty()) kinds.insert(kinds.end(), 2, kAx);
  kinds.push_back(kTop);
  if (d > 0) {
    for (Kind k : {kImpI, kAndI, kBeta, kFstCut, kSndCut, kCaseCut})
      kinds.insert(kinds.end(), 2, k);
    kinds.push_back(kOrI1);
    kinds.push_back(kOrI2);
    if (!st.th->sig.sorts.empty()) kinds.push_back(kForallI);
    if (!st.anch.empty()) {
      for (Kind k : {kTBetaCut, kExI, kWitCut}) kinds.insert(kinds.end(), 2, k);
    }
    if (!bots.empty()) kinds.insert(kinds.end(), 2, kBotE);
    if (!ands.empty()) kinds.insert(kinds.end(), 2, kHypProj);
    if (!alls.empty()) kinds.insert(kinds.end(), 2, kHypInst);
  }
  switch (kinds[st.rng->below(kinds.size())]) {
    case kAx: {
      const auto& h = st.scope[st.rng->below(st.scope.size())];
      return {mk_proof(PAxiom{h.first}), h.second};
    }
    case kTop:
      return {mk_proof(PTopI{}), mk_top()};
    case kImpI: {
      FormulaPtr a = st.rand_formula(std::min<std::size_t>(2, d));
      Name h = st.fresh_hyp();
      st.scope.emplace_back(h, a);
      Judged body = gen_checkable(st, d - 1);
      st.scope.pop_back();
      return {mk_proof(PLam{h, body.first}), mk_imp(a, body.second)};
    }
    case kAndI: {
      Judged a = gen_checkable(st, d - 1);
      Judged b = gen_checkable(st, d - 1);
      return {mk_proof(PPair{a.first, b.first}), mk_and(a.second, b.second)};
    }
    case kOrI1: {
      Judged a = gen_checkable(st, d - 1);
      return {mk_proof(PInl{a.first}), mk_or(a.second, st.rand_formula(1))};
    }
    case kOrI2: {
      Judged a = gen_checkable(st, d - 1);
      return {mk_proof(PInr{a.first}), mk_or(st.rand_formula(1), a.second)};
    }
    case kBeta: {
      Judged arg = gen_inferable(st, d - 1);
      Name h = st.fresh_hyp();
      st.scope.emplace_back(h, arg.second);
      Judged body = gen_checkable(st, d - 1);
      st.scope.pop_back();
      return {mk_proof(PApp{mk_proof(PLam{h, body.first}), arg.first}), body.second};
    }
    case kFstCut: {
      Judged kept = gen_checkable(st, d - 1);
      Judged aux = gen_inferable(st, d - 1);
      return {mk_proof(PFst{mk_proof(PPair{kept.first, aux.first})}), kept.second};
    }
    case kSndCut: {
      Judged aux = gen_inferable(st, d - 1);
      Judged kept = gen_checkable(st, d - 1);
      return {mk_proof(PSnd{mk_proof(PPair{aux.first, kept.first})}), kept.second};
    }
    case kCaseCut: {
      Judged sc = gen_inferable(st, d - 1);
      Name a = st.fresh_hyp();
      st.scope.emplace_back(a, sc.second);
      Judged body = gen_checkable(st, d - 1);
      st.scope.pop_back();
      Name b = st.fresh_hyp();
      ProofPtr echo = mk_proof(PAxiom{b});
      if (st.rng->below(2) == 0)
        return {mk_proof(PCase{mk_proof(PInl{sc.first}), a, body.first, b, echo}),
                body.second};
      return {mk_proof(PCase{mk_proof(PInr{sc.first}), b, echo, a, body.first}),
              body.second};
    }
    case kForallI: {
      Name s = st.th->sig.sorts[st.rng->below(st.th->sig.sorts.size())];
      Judged body = gen_checkable(st, d - 1);
      Name x = st.fresh_tvar();
      return {mk_proof(PTLam{x, s, body.first}), mk_forall(x, s, body.second)};
    }
    case kTBetaCut: {
      Name s = st.anch[st.rng->below(st.anch.size())];
      Judged body = gen_checkable(st, d - 1);
      Name x = st.fresh_tvar();
      return {mk_proof(PTApp{mk_proof(PTLam{x, s, body.first}), st.rand_term(s)}),
              body.second};
    }
    case kExI: {
      Name s = st.anch[st.rng->below(st.anch.size())];
      Judged body = gen_checkable(st, d - 1);
      Name x = st.fresh_tvar();
      return {mk_proof(PWit{st.rand_term(s), body.first}),
              mk_exists(x, s, body.second)};
    }
    case kWitCut: {
      Name s = st.anch[st.rng->below(st.anch.size())];
      Judged packed = gen_inferable(st, d - 1);
      Name a = st.fresh_hyp();
      st.scope.emplace_back(a, packed.second);
      Judged body = gen_checkable(st, d - 1);
      st.scope.pop_back();
      Name x = st.fresh_tvar();
      return {mk_proof(PExElim{mk_proof(PWit{st.rand_term(s), packed.first}), x, s, a,
                               body.first}),
              body.second};
    }
    case kBotE: {
      const auto& h = bots[st.rng->below(bots.size())];
      return {mk_proof(PBotE{mk_proof(PAxiom{h.first})}),
              st.rand_formula(std::min<std::size_t>(2, d))};
    }
    case kHypProj: {
      const auto& h = ands[st.rng->below(ands.size())];
      const auto* an = std::get_if<Formula::And>(&h.second->node);
      if (st.rng->below(2) == 0)
        return {mk_proof(PFst{mk_proof(PAxiom{h.first})}), an->l};
      return {mk_proof(PSnd{mk_proof(PAxiom{h.first})}), an->r};
    }
    default: {
      const auto& h = alls[st.rng->below(alls.size())];
      const auto* fa = std::get_if<Formula::Forall>(&h.second->node);
      TermPtr t = st.rand_term(fa->sort);
      return {mk_proof(PTApp{mk_proof(PAxiom{h.first}), t}),
              subst_in_formula(fa->body, fa->var, t)};
    }
  }
}

// ---------------------------------------------------------------------------
// Congruence detours: a term rule whose right side is a bare variable
// covering the left side's variables inverts to an expansion t -> lhs[x:=t].

struct ExpandRule {
  const RewriteRule* rule;
  Name var;
  Name sort;  // sort the replaced subterm must have
};

void term_var_names(const TermPtr& t, std::vector<Name>& out) {
  if (const Term::Var* v = as_var(t)) {
    out.push_back(v->name);
    return;
  }
  for (const TermPtr& a : as_app(t)->args) term_var_names(a, out);
}

std::optional<Name> lhs_var_sort(const Signature& sig, const TermPtr& lhs, const Name& x) {
  const Term::App* a = as_app(lhs);
  if (!a) return std::nullopt;
  const FunRank* r = sig.function(a->fn);
  if (!r) return std::nullopt;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (const Term::Var* v = as_var(a->args[i]); v && v->name == x) return r->args[i];
    if (auto s = lhs_var_sort(sig, a->args[i], x)) return s;
  }
  return std::nullopt;
}

std::vector<ExpandRule> expanding_rules(const Theory& th) {
  std::vector<ExpandRule> out;
  for (const RewriteRule& r : th.rules) {
    if (!r.term_level) continue;
    const Term::Var* v = as_var(r.rhs_t);
    if (!v) continue;
    std::vector<Name> lvs;
    term_var_names(r.lhs_t, lvs);
    bool only = !lvs.empty();
    for (const Name& n : lvs) only = only && n == v->name;
    if (!only) continue;
    if (auto s = lhs_var_sort(th.sig, r.lhs_t, v->name))
      out.push_back({&r, v->name, *s});
  }
  return out;
}

TermPtr wrap_kth(const TermPtr& t, std::size_t& k, bool& done, const Signature& sig,
                 const ExpandRule& er) {
  if (done) return t;
  if (k == 0) {
    done = true;
    Name s;
    try {
      s = sort_of(t, sig);
    } catch (const Error&) {
      return t;  // unannotated corner: skip the detour
    }
    if (s != er.sort) return t;
    TermSubst env;
    env.emplace_back(er.var, t);
    return subst_in_term(er.rule->lhs_t, env);
  }
  --k;
  if (const Term::App* a = as_app(t)) {
    std::vector<TermPtr> args = a->args;
    bool changed = false;
    for (std::size_t i = 0; i < args.size() && !done; ++i) {
      TermPtr r = wrap_kth(args[i], k, done, sig, er);
      changed = changed || r != args[i];
      args[i] = r;
    }
    if (changed) return mk_app(a->fn, std::move(args));
  }
  return t;
}

std::size_t formula_term_nodes(const FormulaPtr& f) {
  return std::visit(
      overloaded{[](const Formula::Atom& a) {
                   std::size_t n = 0;
                   for (const TermPtr& t : a.args) n += term_size(t);
                   return n;
                 },
                 [](const Formula::Top&) { return std::size_t{0}; },
                 [](const Formula::Bot&) { return std::size_t{0}; },
                 [](const Formula::And& x) {
                   return formula_term_nodes(x.l) + formula_term_nodes(x.r);
                 },
                 [](const Formula::Or& x) {
                   return formula_term_nodes(x.l) + formula_term_nodes(x.r);
                 },
                 [](const Formula::Imp& x) {
                   return formula_term_nodes(x.l) + formula_term_nodes(x.r);
                 },
                 [](const Formula::Forall& x) { return formula_term_nodes(x.body); },
                 [](const Formula::Exists& x) { return formula_term_nodes(x.body); }},
      f->node);
}

FormulaPtr wrap_kth_formula(const FormulaPtr& f, std::size_t& k, bool& done,
                            const Signature& sig, const ExpandRule& er) {
  if (done) return f;
  return std::visit(
      overloaded{
          [&](const Formula::Atom& a) {
            std::vector<TermPtr> args = a.args;
            bool changed = false;
            for (std::size_t i = 0; i < args.size() && !done; ++i) {
              TermPtr r = wrap_kth(args[i], k, done, sig, er);
              changed = changed || r != args[i];
              args[i] = r;
            }
            return changed ? mk_atom(a.pred, std::move(args)) : f;
          },
          [&](const Formula::Top&) { return f; },
          [&](const Formula::Bot&) { return f; },
          [&](const Formula::And& x) {
            FormulaPtr l = wrap_kth_formula(x.l, k, done, sig, er);
            FormulaPtr r = wrap_kth_formula(x.r, k, done, sig, er);
            return l == x.l && r == x.r ? f : mk_and(l, r);
          },
          [&](const Formula::Or& x) {
            FormulaPtr l = wrap_kth_formula(x.l, k, done, sig, er);
            FormulaPtr r = wrap_kth_formula(x.r, k, done, sig, er);
            return l == x.l && r == x.r ? f : mk_or(l, r);
          },
          [&](const Formula::Imp& x) {
            FormulaPtr l = wrap_kth_formula(x.l, k, done, sig, er);
            FormulaPtr r = wrap_kth_formula(x.r, k, done, sig, er);
            return l == x.l && r == x.r ? f : mk_imp(l, r);
          },
          [&](const Formula::Forall& x) {
            FormulaPtr b = wrap_kth_formula(x.body, k, done, sig, er);
            return b == x.body ? f : mk_forall(x.var, x.sort, b);
          },
          [&](const Formula::Exists& x) {
            FormulaPtr b = wrap_kth_formula(x.body, k, done, sig, er);
            return b == x.body ? f : mk_exists(x.var, x.sort, b);
          }},
      f->node);
}

FormulaPtr expand_formula(Rng& rng, const Theory& th,
                          const std::vector<ExpandRule>& ers, FormulaPtr f) {
  if (ers.empty()) return f;
  std::size_t times = rng.below(3);
  for (std::size_t i = 0; i < times; ++i) {
    std::size_t n = formula_term_nodes(f);
    if (n == 0) return f;
    std::size_t k = rng.below(n);
    bool done = false;
    f = wrap_kth_formula(f, k, done, th.sig, ers[rng.below(ers.size())]);
  }
  return f;
}

}  // namespace

RandomDerivation random_derivation(Rng& rng, const Theory& th, std::size_t depth) {
  DerivState st;
  st.rng = &rng;
  st.th = &th;
  st.anch = anchored_sorts(th.sig, {});
  std::vector<std::pair<Name, FormulaPtr>> init;
  std::size_t nh = rng.below(3);
  for (std::size_t i = 0; i < nh; ++i) init.emplace_back(st.fresh_hyp(), st.rand_formula(2));
  st.scope = init;
  Judged j = gen_checkable(st, depth);
  std::vector<ExpandRule> ers = expanding_rules(th);
  Sequent seq;
  for (const auto& [a, f] : init) seq.hyps.emplace_back(a, expand_formula(rng, th, ers, f));
  seq.goal = expand_formula(rng, th, ers, j.second);
  return {seq, j.first};
}

}  // namespace demod

