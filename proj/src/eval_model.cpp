#include "demod/eval_model.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "demod/names.hpp"
#include "demod/reduction.hpp"
#include "demod/s_axioms.hpp"

namespace demod {

namespace {

constexpr std::size_t kReachCap = 5000;  // reachable-set node cap for Red*
constexpr std::size_t kRawCap = 4000;    // sample cap for unguided quantifiers

EvalVerdict vtrue() { return {Verdict::True, {}}; }
EvalVerdict vfalse() { return {Verdict::False, {}}; }
EvalVerdict vunknown(std::string r) { return {Verdict::Unknown, std::move(r)}; }
EvalVerdict vbool(bool b) { return b ? vtrue() : vfalse(); }

EvalVerdict and3(const EvalVerdict& l, const EvalVerdict& r) {
  if (l.verdict == Verdict::False) return l;
  if (r.verdict == Verdict::False) return r;
  if (l.verdict == Verdict::Unknown) return l;
  return r;
}

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (const auto* a = std::get_if<Formula::And>(&f->node)) {
    flatten_and(a->l, out);
    flatten_and(a->r, out);
  } else {
    out.push_back(f);
  }
}

bool contains_name(const std::vector<Name>& v, const Name& n) {
  return std::find(v.begin(), v.end(), n) != v.end();
}

void term_fvars(const TermPtr& t, std::vector<Name>& bound, std::vector<Name>& out) {
  if (const Term::Var* v = as_var(t)) {
    if (!contains_name(bound, v->name) && !contains_name(out, v->name))
      out.push_back(v->name);
    return;
  }
  for (const TermPtr& a : as_app(t)->args) term_fvars(a, bound, out);
}

void formula_fvars(const FormulaPtr& f, std::vector<Name>& bound, std::vector<Name>& out) {
  std::visit(overloaded{[&](const Formula::Atom& a) {
                          for (const TermPtr& t : a.args) term_fvars(t, bound, out);
                        },
                        [](const Formula::Top&) {}, [](const Formula::Bot&) {},
                        [&](const Formula::And& x) {
                          formula_fvars(x.l, bound, out);
                          formula_fvars(x.r, bound, out);
                        },
                        [&](const Formula::Or& x) {
                          formula_fvars(x.l, bound, out);
                          formula_fvars(x.r, bound, out);
                        },
                        [&](const Formula::Imp& x) {
                          formula_fvars(x.l, bound, out);
                          formula_fvars(x.r, bound, out);
                        },
                        [&](const Formula::Forall& x) {
                          bound.push_back(x.var);
                          formula_fvars(x.body, bound, out);
                          bound.pop_back();
                        },
                        [&](const Formula::Exists& x) {
                          bound.push_back(x.var);
                          formula_fvars(x.body, bound, out);
                          bound.pop_back();
                        }},
             f->node);
}

std::vector<Name> free_names(const std::vector<FormulaPtr>& guards, const FormulaPtr& core) {
  std::vector<Name> bound, out;
  for (const FormulaPtr& g : guards) formula_fvars(g, bound, out);
  formula_fvars(core, bound, out);
  return out;
}

// Exact-size pool table: entry [n] lists the trees of size n, n <= bound.
using Sized = std::vector<std::vector<TreePtr>>;

void compose_kids(const std::vector<const Sized*>& kidpools, std::size_t budget,
                  std::size_t from, std::vector<TreePtr>& kids,
                  const std::string& ctor, std::vector<TreePtr>& out) {
  if (from == kidpools.size()) {
    if (budget == 0) out.push_back(mk_tree(ctor, kids));
    return;
  }
  std::size_t rest = kidpools.size() - from - 1;  // each later kid needs >= 1
  for (std::size_t sz = 1; sz + rest <= budget; ++sz) {
    const Sized& pool = *kidpools[from];
    if (sz >= pool.size()) break;
    for (TreePtr k : pool[sz]) {
      kids.push_back(k);
      compose_kids(kidpools, budget - sz, from + 1, kids, ctor, out);
      kids.pop_back();
    }
  }
}

void add_composed(Sized& level, std::size_t n, const std::string& ctor,
                  const std::vector<const Sized*>& kidpools) {
  if (n < 1 + kidpools.size()) return;
  std::vector<TreePtr> kids;
  compose_kids(kidpools, n - 1, 0, kids, ctor, level[n]);
}

Sized numeral_pool(std::size_t bound, std::size_t min_value) {
  Sized out(bound + 1);
  for (std::size_t k = min_value; k + 1 <= bound; ++k) out[k + 1].push_back(nat_tree(k));
  return out;
}

Sized pvarnode_pool(std::size_t bound) {  // Axiom(j), j >= 1
  Sized out(bound + 1);
  for (std::size_t j = 1; j + 2 <= bound; ++j)
    out[j + 2].push_back(mk_tree("Axiom", {nat_tree(j)}));
  return out;
}

Sized sortc_pool(std::size_t bound) {  // Sortc(k), k >= 1
  Sized out(bound + 1);
  for (std::size_t k = 1; k + 2 <= bound; ++k)
    out[k + 2].push_back(mk_tree("Sortc", {nat_tree(k)}));
  return out;
}

Sized binder_pool(std::size_t bound) {  // TVar(j, 0 | Sortc(k))
  Sized out(bound + 1);
  TreePtr zero = nat_tree(0);
  for (std::size_t j = 1; j + 3 <= bound; ++j)
    out[j + 3].push_back(mk_tree("TVar", {nat_tree(j), zero}));
  for (std::size_t j = 1; j + 4 <= bound; ++j)
    for (std::size_t k = 1; j + k + 4 <= bound; ++k)
      out[j + k + 4].push_back(mk_tree("TVar", {nat_tree(j), mk_tree("Sortc", {nat_tree(k)})}));
  return out;
}

std::vector<TreePtr> flatten_sized(const Sized& s) {
  std::vector<TreePtr> out;
  for (const auto& level : s)
    for (TreePtr t : level) out.push_back(t);
  return out;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "True";
    case Verdict::False: return "False";
    default: return "Unknown";
  }
}

struct TreeModel::Env {
  std::vector<std::pair<Name, TreePtr>> vars;
  TreePtr find(const Name& n) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (it->first == n) return it->second;
    return nullptr;
  }
};

TreeModel::TreeModel(const TreeCodec& codec) : codec_(&codec), eval_(codec.prs()) {}

bool TreeModel::pr_bool(const std::string& name, const std::vector<TreePtr>& args) {
  return tree_nat(eval_.call(name, args)) == 1;
}

TreePtr TreeModel::tree_of(const TermPtr& t, const Env& env) {
  if (const Term::Var* v = as_var(t)) {
    if (TreePtr b = env.find(v->name)) return b;
    throw InputError("eval: unbound variable " + v->name);
  }
  const Term::App* a = as_app(t);
  std::vector<TreePtr> kids;
  kids.reserve(a->args.size());
  for (const TermPtr& x : a->args) kids.push_back(tree_of(x, env));
  if (codec_->lang().find(a->fn)) return mk_tree(a->fn, std::move(kids));
  if (codec_->prs().find(a->fn)) return eval_.call(a->fn, kids);
  throw InputError("eval: unregistered function " + a->fn);
}

std::vector<TreePtr> TreeModel::step_trees(TreePtr t) {
  std::vector<TreePtr> raw;
  if (pr_bool("Proof", {t})) {
    ProofPtr p = codec_->decode_proof(t);
    for (const ReductionStep& s : step(p)) raw.push_back(codec_->encode_proof(s.target));
  } else {
    raw = tree_list_items(eval_.call("reducts", {t}));
  }
  std::vector<TreePtr> out;
  for (TreePtr r : raw)
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  return out;
}

std::pair<std::vector<TreePtr>, bool> TreeModel::reachable(TreePtr t) {
  auto hit = reach_.find(t);
  if (hit != reach_.end()) return hit->second;
  std::vector<TreePtr> seen{t};
  std::unordered_set<TreePtr> mark{t};
  std::deque<TreePtr> q{t};
  bool complete = true;
  while (!q.empty() && complete) {
    TreePtr x = q.front();
    q.pop_front();
    for (TreePtr r : step_trees(x)) {
      if (!mark.insert(r).second) continue;
      if (seen.size() >= kReachCap) {
        complete = false;
        break;
      }
      seen.push_back(r);
      q.push_back(r);
    }
  }
  auto res = std::make_pair(std::move(seen), complete);
  reach_[t] = res;
  return res;
}

EvalVerdict TreeModel::sn_native(TreePtr t, const EvalBounds& b) {
  if (!pr_bool("Proof", {t})) return vfalse();
  SnVerdict v = sn_check(codec_->decode_proof(t), b.sn_bound);
  switch (v.status) {
    case SnVerdict::Status::StronglyNormalizing: return vtrue();
    case SnVerdict::Status::CycleFound: return vfalse();
    default: return vunknown("sn-bound " + std::to_string(b.sn_bound));
  }
}

EvalVerdict TreeModel::relation(const Name& rel, const std::vector<TreePtr>& args,
                                const EvalBounds& b) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw InputError("eval: " + rel + " expects " + std::to_string(n) + " arguments");
  };
  try {
    if (rel == "=") {
      need(2);
      return vbool(args[0] == args[1]);  // trees are hash-consed
    }
    if (rel == "L") {
      need(1);
      return vtrue();
    }
    if (rel == "SN") {
      need(1);
      return sn_native(args[0], b);
    }
    if (rel == "Red*") {
      need(2);
      auto [set, complete] = reachable(args[0]);
      if (std::find(set.begin(), set.end(), args[1]) != set.end()) return vtrue();
      return complete ? vfalse() : vunknown("red*-cap");
    }
    if (rel == "Red") {
      need(2);
      std::vector<TreePtr> s = step_trees(args[0]);
      return vbool(std::find(s.begin(), s.end(), args[1]) != s.end());
    }
    if (rel == "Redn") {
      need(3);
      long long n = tree_nat(args[1]);
      if (n < 0) return vbool(pr_bool("Redn", args));
      std::vector<TreePtr> cur{args[0]};
      for (long long i = 0; i < n; ++i) {
        std::vector<TreePtr> next;
        for (TreePtr x : cur)
          for (TreePtr r : step_trees(x))
            if (std::find(next.begin(), next.end(), r) == next.end()) next.push_back(r);
        cur = std::move(next);
        if (cur.empty()) break;
        if (cur.size() > kReachCap) return vunknown("redn-cap");
      }
      return vbool(std::find(cur.begin(), cur.end(), args[2]) != cur.end());
    }
    if (const PrimRecDef* d = codec_->prs().find(rel)) {
      need(d->arity);
      return vbool(pr_bool(rel, args));
    }
  } catch (const BudgetError& e) {
    return vunknown(std::string("pr-budget: ") + e.what());
  }
  throw InputError("eval: unregistered relation " + rel);
}

EvalVerdict TreeModel::eval_atom(const Formula::Atom& a, Env& env, const EvalBounds& b) {
  std::vector<TreePtr> args;
  try {
    for (const TermPtr& t : a.args) args.push_back(tree_of(t, env));
  } catch (const BudgetError& e) {
    return vunknown(std::string("pr-budget: ") + e.what());
  }
  return relation(a.pred, args, b);
}

EvalVerdict TreeModel::eval_rec(const FormulaPtr& f, Env& env, const EvalBounds& b) {
  return std::visit(
      overloaded{
          [&](const Formula::Atom& a) { return eval_atom(a, env, b); },
          [&](const Formula::Top&) { return vtrue(); },
          [&](const Formula::Bot&) { return vfalse(); },
          [&](const Formula::And& x) {
            return and3(eval_rec(x.l, env, b), eval_rec(x.r, env, b));
          },
          [&](const Formula::Or& x) {
            EvalVerdict l = eval_rec(x.l, env, b);
            if (l.verdict == Verdict::True) return l;
            EvalVerdict r = eval_rec(x.r, env, b);
            if (r.verdict == Verdict::True) return r;
            if (l.verdict == Verdict::Unknown) return l;
            return r;
          },
          [&](const Formula::Imp& x) {
            EvalVerdict l = eval_rec(x.l, env, b);
            if (l.verdict == Verdict::False) return vtrue();
            EvalVerdict r = eval_rec(x.r, env, b);
            if (r.verdict == Verdict::True) return r;
            if (l.verdict == Verdict::Unknown) return vunknown(l.reason);
            return r;  // l True: False refutes, Unknown stays
          },
          [&](const Formula::Forall&) {
            std::vector<Name> vars;
            FormulaPtr m = f;
            while (const auto* fa = std::get_if<Formula::Forall>(&m->node)) {
              if (fa->sort != kTreeSort)
                throw InputError("eval: quantifier over non-tree sort " + fa->sort);
              vars.push_back(fa->var);
              m = fa->body;
            }
            std::vector<FormulaPtr> guards;
            FormulaPtr core = m;
            if (const auto* im = std::get_if<Formula::Imp>(&m->node)) {
              flatten_and(im->l, guards);
              core = im->r;
            }
            return solve_block(true, std::move(vars), std::move(guards), core, env, b);
          },
          [&](const Formula::Exists&) {
            std::vector<Name> vars;
            FormulaPtr m = f;
            while (const auto* ex = std::get_if<Formula::Exists>(&m->node)) {
              if (ex->sort != kTreeSort)
                throw InputError("eval: quantifier over non-tree sort " + ex->sort);
              vars.push_back(ex->var);
              m = ex->body;
            }
            std::vector<FormulaPtr> guards;
            flatten_and(m, guards);
            return solve_block(false, std::move(vars), std::move(guards), mk_top(), env, b);
          }},
      f->node);
}

namespace {

// Depth-1 constructor pattern over block variables; fixed slots hold closed
// terms evaluated before matching.
struct Pattern {
  bool whole_var = false;
  Name var;
  std::uint32_t ctor = 0;
  struct Slot {
    bool is_var;
    Name var;
    TreePtr fixed;
  };
  std::vector<Slot> slots;
};

}  // namespace

EvalVerdict TreeModel::solve_block(bool universal, std::vector<Name> vars,
                                   std::vector<FormulaPtr> guards, FormulaPtr core,
                                   Env& env, const EvalBounds& b) {
  // Trees are nonempty, so variables absent from the matrix drop out.
  {
    std::vector<Name> used = free_names(guards, core);
    std::erase_if(vars, [&](const Name& v) { return !contains_name(used, v); });
  }

  if (vars.empty()) {
    EvalVerdict g = vtrue();
    for (const FormulaPtr& x : guards) {
      g = and3(g, eval_rec(x, env, b));
      if (g.verdict == Verdict::False) break;
    }
    if (universal) {
      if (g.verdict == Verdict::False) return vtrue();
      EvalVerdict c = eval_rec(core, env, b);
      if (c.verdict == Verdict::True) return c;
      if (g.verdict == Verdict::Unknown) return vunknown(g.reason);
      return c;
    }
    return and3(g, eval_rec(core, env, b));
  }

  auto recurse = [&](std::size_t guard_index, const std::vector<std::pair<Name, TreePtr>>& binds) {
    std::vector<Name> subvars = vars;
    std::vector<FormulaPtr> subguards = guards;
    subguards.erase(subguards.begin() + static_cast<std::ptrdiff_t>(guard_index));
    for (const auto& [n, t] : binds) {
      std::erase(subvars, n);
      env.vars.emplace_back(n, t);
    }
    EvalVerdict r = solve_block(universal, std::move(subvars), std::move(subguards), core, env, b);
    env.vars.resize(env.vars.size() - binds.size());
    return r;
  };

  // Strategy 1: a Red/Red* guard with closed source and constructor pattern
  // branches exactly over the finite reduct set.
  for (std::size_t i = 0; i < guards.size(); ++i) {
    const auto* at = std::get_if<Formula::Atom>(&guards[i]->node);
    if (!at || (at->pred != "Red" && at->pred != "Red*") || at->args.size() != 2) continue;
    {
      std::vector<Name> bound, fv;
      term_fvars(at->args[0], bound, fv);
      bool closed = true;
      for (const Name& n : fv) closed = closed && !contains_name(vars, n);
      if (!closed) continue;
    }
    Pattern pat;
    bool ok = true;
    if (const Term::Var* v = as_var(at->args[1])) {
      if (!contains_name(vars, v->name)) continue;
      pat.whole_var = true;
      pat.var = v->name;
    } else {
      const Term::App* app = as_app(at->args[1]);
      const TreeLang::Ctor* c = codec_->lang().find(app->fn);
      if (!c || c->arity != app->args.size()) continue;
      pat.ctor = c->id;
      for (const TermPtr& s : app->args) {
        if (const Term::Var* sv = as_var(s); sv && contains_name(vars, sv->name)) {
          pat.slots.push_back({true, sv->name, nullptr});
          continue;
        }
        std::vector<Name> bound, fv;
        term_fvars(s, bound, fv);
        for (const Name& n : fv) ok = ok && !contains_name(vars, n);
        if (!ok) break;
        pat.slots.push_back({false, {}, tree_of(s, env)});
      }
      if (!ok) continue;
    }
    TreePtr src;
    try {
      src = tree_of(at->args[0], env);
    } catch (const BudgetError&) {
      continue;
    }
    std::vector<TreePtr> range;
    bool complete = true;
    if (at->pred == "Red") {
      range = step_trees(src);
    } else {
      auto [set, comp] = reachable(src);
      range = std::move(set);
      complete = comp;
    }
    bool unknown = false;
    std::string reason = complete ? "" : "red*-cap";
    for (TreePtr r : range) {
      std::vector<std::pair<Name, TreePtr>> binds;
      if (pat.whole_var) {
        binds.emplace_back(pat.var, r);
      } else {
        if (r->ctor != pat.ctor) continue;
        bool match = true;
        for (std::size_t k = 0; k < pat.slots.size() && match; ++k) {
          const Pattern::Slot& sl = pat.slots[k];
          if (!sl.is_var) {
            match = sl.fixed == r->kids[k];
            continue;
          }
          bool seen = false;
          for (const auto& [n, t] : binds)
            if (n == sl.var) {
              seen = true;
              match = t == r->kids[k];
            }
          if (!seen) binds.emplace_back(sl.var, r->kids[k]);
        }
        if (!match) continue;
      }
      EvalVerdict sub = recurse(i, binds);
      if (universal && sub.verdict == Verdict::False) return sub;
      if (!universal && sub.verdict == Verdict::True) return sub;
      if (sub.verdict == Verdict::Unknown && !unknown) {
        unknown = true;
        reason = sub.reason;
      }
    }
    if (!complete || unknown) return vunknown(reason);
    return universal ? vtrue() : vfalse();
  }

  // Strategy 2: a guard pinning a block variable to a relation enumerates
  // the constructive member pool; the verdict is relative to the bound.
  for (std::size_t i = 0; i < guards.size(); ++i) {
    const auto* at = std::get_if<Formula::Atom>(&guards[i]->node);
    if (!at || at->args.empty()) continue;
    const Term::Var* v = as_var(at->args[0]);
    if (!v || !contains_name(vars, v->name)) continue;
    static const char* kUnary[] = {"SN", "Proof", "Elim", "Nat", "ProofVar", "Sort", "L"};
    bool unary = at->args.size() == 1 &&
                 std::find_if(std::begin(kUnary), std::end(kUnary),
                              [&](const char* n) { return at->pred == n; }) != std::end(kUnary);
    bool sorted = (at->pred == "Term" || at->pred == "TermVar") && at->args.size() == 2;
    if (!unary && !sorted) continue;
    TreePtr sc = nullptr;
    if (sorted) {
      std::vector<Name> bound, fv;
      term_fvars(at->args[1], bound, fv);
      bool closed = true;
      for (const Name& n : fv) closed = closed && !contains_name(vars, n);
      if (!closed) continue;
      try {
        sc = tree_of(at->args[1], env);
      } catch (const BudgetError&) {
        continue;
      }
    }
    const std::vector<TreePtr>& pool = relation_pool(at->pred, sc, b);
    bool unknown = false;
    std::string reason;
    for (TreePtr t : pool) {
      EvalVerdict sub = recurse(i, {{v->name, t}});
      if (universal && sub.verdict == Verdict::False) return sub;
      if (!universal && sub.verdict == Verdict::True) return sub;
      if (sub.verdict == Verdict::Unknown && !unknown) {
        unknown = true;
        reason = sub.reason;
      }
    }
    if (unknown) return vunknown(reason);
    if (universal) return vtrue();  // relative to the pool bound
    return vunknown("tree-bound " + std::to_string(b.tree_bound));
  }

  // Strategy 3: sample trees by size; can only refute or witness.
  {
    Name x = vars.front();
    std::vector<Name> subvars(vars.begin() + 1, vars.end());
    auto [trees, complete] = raw_trees(b.tree_bound);
    (void)complete;  // the tree domain is infinite either way
    for (TreePtr t : *trees) {
      env.vars.emplace_back(x, t);
      EvalVerdict sub = solve_block(universal, subvars, guards, core, env, b);
      env.vars.pop_back();
      if (universal && sub.verdict == Verdict::False) return sub;
      if (!universal && sub.verdict == Verdict::True) return sub;
    }
    return vunknown("tree-bound " + std::to_string(b.tree_bound));
  }
}

const std::vector<TreePtr>& TreeModel::relation_pool(const Name& rel, TreePtr sort_code,
                                                     const EvalBounds& b) {
  std::string key = rel + "#" + std::to_string(b.tree_bound);
  if (rel == "SN") key += "#sn" + std::to_string(b.sn_bound);
  if (sort_code) key += "#" + print_tree(sort_code);
  auto hit = pools_.find(key);
  if (hit != pools_.end()) return hit->second;

  std::size_t B = b.tree_bound;
  std::vector<TreePtr> out;
  if (rel == "Nat") {
    out = flatten_sized(numeral_pool(B, 0));
  } else if (rel == "ProofVar") {
    out = flatten_sized(numeral_pool(B, 1));
  } else if (rel == "Sort") {
    out = flatten_sized(sortc_pool(B));
  } else if (rel == "L") {
    out = *raw_trees(B).first;
  } else if (rel == "TermVar") {
    if (sort_code && pr_bool("Sort", {sort_code})) {
      std::size_t scs = tree_size(sort_code);
      for (std::size_t j = 1; 1 + (j + 1) + scs <= B; ++j)
        out.push_back(mk_tree("TVar", {nat_tree(j), sort_code}));
    }
  } else if (rel == "Term") {
    if (sort_code && pr_bool("Sort", {sort_code})) {
      const Signature& sig = codec_->signature();
      long long idx = tree_nat(sort_code->kids[0]);
      Name target = idx >= 1 ? index_name(static_cast<std::uint64_t>(idx)) : Name();
      if (sig.has_sort(target)) {
        // Sized DP per sort over the signature's function symbols.
        std::unordered_map<Name, Sized> by_sort;
        for (const Name& s : sig.sorts) by_sort[s] = Sized(B + 1);
        for (std::size_t n = 1; n <= B; ++n) {
          for (const Name& s : sig.sorts) {
            TreePtr sc = codec_->encode_sort(s);
            if (std::size_t need = 2 + tree_size(sc); n >= need + 1)
              by_sort[s][n].push_back(mk_tree("TVar", {nat_tree(n - need), sc}));
          }
          for (const auto& [fname, rank] : sig.functions) {
            std::vector<const Sized*> kidpools;
            for (const Name& as : rank.args) kidpools.push_back(&by_sort[as]);
            add_composed(by_sort[rank.result], n, std::string(kFnCtorPrefix) + fname,
                         kidpools);
          }
        }
        out = flatten_sized(by_sort[target]);
      } else {
        // Valid sort code outside the signature: only variables inhabit it.
        std::size_t scs = tree_size(sort_code);
        for (std::size_t j = 1; 2 + j + scs <= B; ++j)
          out.push_back(mk_tree("TVar", {nat_tree(j), sort_code}));
      }
    }
  } else if (rel == "TermAny" || rel == "Proof" || rel == "SN" || rel == "Elim") {
    Sized terma(B + 1), proofs(B + 1);
    Sized pvn = pvarnode_pool(B);
    Sized binders = binder_pool(B);
    std::vector<std::string> fns;
    for (const auto& c : codec_->lang().ctors)
      if (c.name.rfind(kFnCtorPrefix, 0) == 0) fns.push_back(c.name);
    for (std::size_t n = 1; n <= B; ++n) {
      // TermAny: TVar with any well-formed slot, function nodes recursively.
      for (TreePtr bd : binders[n]) terma[n].push_back(bd);
      for (const std::string& f : fns) {
        std::size_t arity = codec_->lang().find(f)->arity;
        add_composed(terma, n, f, std::vector<const Sized*>(arity, &terma));
      }
      // Proofs, former by former.
      if (n == 1) proofs[n].push_back(mk_tree("TopI", {}));
      for (TreePtr a : pvn[n]) proofs[n].push_back(a);
      for (const char* u : {"AndE1", "AndE2", "OrI1", "OrI2", "BotE"})
        add_composed(proofs, n, u, {&proofs});
      for (const char* bin : {"ImpE", "AndI"}) add_composed(proofs, n, bin, {&proofs, &proofs});
      add_composed(proofs, n, "ImpI", {&pvn, &proofs});
      add_composed(proofs, n, "OrE", {&proofs, &pvn, &proofs, &pvn, &proofs});
      add_composed(proofs, n, "ForallI", {&binders, &proofs});
      add_composed(proofs, n, "ForallE", {&proofs, &terma});
      add_composed(proofs, n, "ExistsI", {&terma, &proofs});
      add_composed(proofs, n, "ExistsE", {&proofs, &binders, &pvn, &proofs});
    }
    if (rel == "TermAny") {
      out = flatten_sized(terma);
    } else {
      out = flatten_sized(proofs);
      if (rel == "SN") {
        std::erase_if(out, [&](TreePtr t) { return sn_native(t, b).verdict != Verdict::True; });
      } else if (rel == "Elim") {
        std::erase_if(out, [&](TreePtr t) { return !pr_bool("Elim", {t}); });
      }
    }
  } else {
    throw InputError("eval: no pool for relation " + rel);
  }
  return pools_.emplace(std::move(key), std::move(out)).first->second;
}

std::pair<const std::vector<TreePtr>*, bool> TreeModel::raw_trees(std::size_t bound) {
  auto hit = raw_.find(bound);
  if (hit == raw_.end()) {
    Sized levels(bound + 1);
    std::vector<TreePtr> flat;
    bool complete = true;
    for (std::size_t n = 1; n <= bound && complete; ++n) {
      for (const auto& c : codec_->lang().ctors) {
        add_composed(levels, n, c.name, std::vector<const Sized*>(c.arity, &levels));
        if (flat.size() + levels[n].size() > kRawCap) {
          complete = false;
          break;
        }
      }
      for (TreePtr t : levels[n]) flat.push_back(t);
      if (flat.size() > kRawCap) {
        flat.resize(kRawCap);
        complete = false;
      }
    }
    hit = raw_.emplace(bound, std::make_pair(std::move(flat), complete)).first;
  }
  return {&hit->second.first, hit->second.second};
}

EvalVerdict TreeModel::eval(const FormulaPtr& f, const EvalBounds& bounds) {
  Env env;
  try {
    return eval_rec(f, env, bounds);
  } catch (const BudgetError& e) {
    return vunknown(std::string("pr-budget: ") + e.what());
  }
}

EvalVerdict eval_formula(const TreeCodec& codec, const FormulaPtr& f,
                         const EvalBounds& bounds) {
  TreeModel m(codec);
  return m.eval(f, bounds);
}

EvalVerdict verify_witness(const TreeCodec& codec, const Name& rel,
                           const std::vector<TreePtr>& witness, const EvalBounds& bounds) {
  TreeModel m(codec);
  return m.relation(rel, witness, bounds);
}

}  // namespace demod
