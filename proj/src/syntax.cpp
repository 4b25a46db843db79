#include "demod/syntax.hpp"

#include <algorithm>
#include <set>

#include "demod/names.hpp"

namespace demod {

// ---------------------------------------------------------------------------
// Signature

bool Signature::has_sort(const Name& s) const {
  return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
}

const FunRank* Signature::function(const Name& f) const {
  for (auto& [n, r] : functions)
    if (n == f) return &r;
  return nullptr;
}

const std::vector<Name>* Signature::predicate(const Name& p) const {
  for (auto& [n, r] : predicates)
    if (n == p) return &r;
  return nullptr;
}

void Signature::add_sort(const Name& s) {
  if (!has_sort(s)) sorts.push_back(s);
}

void Signature::add_function(const Name& f, FunRank rank) {
  functions.emplace_back(f, std::move(rank));
}

void Signature::add_predicate(const Name& p, std::vector<Name> argsorts) {
  predicates.emplace_back(p, std::move(argsorts));
}

void Signature::validate() const {
  std::set<Name> seen;
  for (auto& s : sorts) {
    if (!is_ident(s)) throw InputError("bad sort name: " + s);
    if (!seen.insert(s).second) throw InputError("duplicate sort: " + s);
  }
  auto check_rank = [&](const Name& owner, const std::vector<Name>& args) {
    for (auto& a : args)
      if (!has_sort(a)) throw InputError(owner + ": undeclared sort " + a);
  };
  std::set<Name> fn;
  for (auto& [f, r] : functions) {
    if (!is_ident(f)) throw InputError("bad function name: " + f);
    if (!fn.insert(f).second) throw InputError("duplicate function: " + f);
    check_rank(f, r.args);
    if (!has_sort(r.result)) throw InputError(f + ": undeclared sort " + r.result);
  }
  std::set<Name> pd;
  for (auto& [p, r] : predicates) {
    if (!is_ident(p)) throw InputError("bad predicate name: " + p);
    if (!pd.insert(p).second) throw InputError("duplicate predicate: " + p);
    check_rank(p, r);
  }
}

// ---------------------------------------------------------------------------
// Constructors

TermPtr mk_var(Name name, std::optional<Name> sort) {
  return std::make_shared<Term>(Term{Term::Var{std::move(name), std::move(sort)}});
}

TermPtr mk_app(Name fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{Term::App{std::move(fn), std::move(args)}});
}

const Term::Var* as_var(const TermPtr& t) { return std::get_if<Term::Var>(&t->node); }
const Term::App* as_app(const TermPtr& t) { return std::get_if<Term::App>(&t->node); }

FormulaPtr mk_atom(Name pred, std::vector<TermPtr> args) {
  return std::make_shared<Formula>(Formula{Formula::Atom{std::move(pred), std::move(args)}});
}
FormulaPtr mk_top() { return std::make_shared<Formula>(Formula{Formula::Top{}}); }
FormulaPtr mk_bot() { return std::make_shared<Formula>(Formula{Formula::Bot{}}); }
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Formula::And{std::move(l), std::move(r)}});
}
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Formula::Or{std::move(l), std::move(r)}});
}
FormulaPtr mk_imp(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Formula::Imp{std::move(l), std::move(r)}});
}
FormulaPtr mk_not(FormulaPtr a) { return mk_imp(std::move(a), mk_bot()); }

FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
  return mk_and(mk_imp(a, b), mk_imp(b, a));
}

FormulaPtr mk_and_chain(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return mk_top();
  FormulaPtr r = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) r = mk_and(fs[i], r);
  return r;
}

FormulaPtr close_universally(FormulaPtr f) {
  auto fv = free_vars(f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) f = mk_forall(it->first, it->second, f);
  return f;
}
FormulaPtr mk_forall(Name var, Name sort, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{Formula::Forall{std::move(var), std::move(sort), std::move(body)}});
}
FormulaPtr mk_exists(Name var, Name sort, FormulaPtr body) {
  return std::make_shared<Formula>(Formula{Formula::Exists{std::move(var), std::move(sort), std::move(body)}});
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

struct FvAcc {
  std::vector<std::pair<Name, Name>> out;
  std::set<Name> bound_stack_guard;  // unused; bound tracking via vector below

  void add(const Name& n, const std::optional<Name>& sort) {
    for (auto& [m, s] : out) {
      if (m == n) {
        if (sort && *sort != s)
          throw InputError("variable " + n + " occurs at sorts " + s + " and " + *sort);
        return;
      }
    }
    if (!sort) throw InputError("variable " + n + " has no sort annotation");
    out.emplace_back(n, *sort);
  }
};

void fv_term(const TermPtr& t, std::vector<Name>& bound, FvAcc& acc) {
  std::visit(overloaded{[&](const Term::Var& v) {
                          if (std::find(bound.rbegin(), bound.rend(), v.name) == bound.rend())
                            acc.add(v.name, v.sort);
                        },
                        [&](const Term::App& a) {
                          for (auto& arg : a.args) fv_term(arg, bound, acc);
                        }},
             t->node);
}

void fv_formula(const FormulaPtr& f, std::vector<Name>& bound, FvAcc& acc) {
  std::visit(overloaded{[&](const Formula::Atom& a) {
                          for (auto& t : a.args) fv_term(t, bound, acc);
                        },
                        [&](const Formula::Top&) {}, [&](const Formula::Bot&) {},
                        [&](const Formula::And& n) {
                          fv_formula(n.l, bound, acc);
                          fv_formula(n.r, bound, acc);
                        },
                        [&](const Formula::Or& n) {
                          fv_formula(n.l, bound, acc);
                          fv_formula(n.r, bound, acc);
                        },
                        [&](const Formula::Imp& n) {
                          fv_formula(n.l, bound, acc);
                          fv_formula(n.r, bound, acc);
                        },
                        [&](const Formula::Forall& n) {
                          bound.push_back(n.var);
                          fv_formula(n.body, bound, acc);
                          bound.pop_back();
                        },
                        [&](const Formula::Exists& n) {
                          bound.push_back(n.var);
                          fv_formula(n.body, bound, acc);
                          bound.pop_back();
                        }},
             f->node);
}

}  // namespace

std::vector<std::pair<Name, Name>> free_vars(const FormulaPtr& f) {
  FvAcc acc;
  std::vector<Name> bound;
  fv_formula(f, bound, acc);
  return acc.out;
}

std::vector<std::pair<Name, Name>> free_vars(const TermPtr& t) {
  FvAcc acc;
  std::vector<Name> bound;
  fv_term(t, bound, acc);
  return acc.out;
}

std::vector<std::pair<Name, Name>> free_vars(const Sequent& seq) {
  FvAcc acc;
  std::vector<Name> bound;
  for (auto& [h, a] : seq.hyps) fv_formula(a, bound, acc);
  fv_formula(seq.goal, bound, acc);
  return acc.out;
}

bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

namespace {

bool occurs_term(const Name& x, const TermPtr& t) {
  return std::visit(overloaded{[&](const Term::Var& v) { return v.name == x; },
                               [&](const Term::App& a) {
                                 for (auto& arg : a.args)
                                   if (occurs_term(x, arg)) return true;
                                 return false;
                               }},
                    t->node);
}

}  // namespace

bool occurs_free(const Name& x, const TermPtr& t) { return occurs_term(x, t); }

bool occurs_free(const Name& x, const FormulaPtr& f) {
  return std::visit(
      overloaded{[&](const Formula::Atom& a) {
                   for (auto& t : a.args)
                     if (occurs_term(x, t)) return true;
                   return false;
                 },
                 [&](const Formula::Top&) { return false; }, [&](const Formula::Bot&) { return false; },
                 [&](const Formula::And& n) { return occurs_free(x, n.l) || occurs_free(x, n.r); },
                 [&](const Formula::Or& n) { return occurs_free(x, n.l) || occurs_free(x, n.r); },
                 [&](const Formula::Imp& n) { return occurs_free(x, n.l) || occurs_free(x, n.r); },
                 [&](const Formula::Forall& n) { return n.var != x && occurs_free(x, n.body); },
                 [&](const Formula::Exists& n) { return n.var != x && occurs_free(x, n.body); }},
      f->node);
}

// ---------------------------------------------------------------------------
// Largest variable name

std::optional<Name> max_var_name(const TermPtr& t) {
  return std::visit(overloaded{[&](const Term::Var& v) -> std::optional<Name> { return v.name; },
                               [&](const Term::App& a) -> std::optional<Name> {
                                 std::optional<Name> m;
                                 for (auto& arg : a.args) m = name_max(m, max_var_name(arg));
                                 return m;
                               }},
                    t->node);
}

std::optional<Name> max_var_name(const FormulaPtr& f) {
  return std::visit(
      overloaded{[&](const Formula::Atom& a) -> std::optional<Name> {
                   std::optional<Name> m;
                   for (auto& t : a.args) m = name_max(m, max_var_name(t));
                   return m;
                 },
                 [&](const Formula::Top&) -> std::optional<Name> { return std::nullopt; },
                 [&](const Formula::Bot&) -> std::optional<Name> { return std::nullopt; },
                 [&](const Formula::And& n) -> std::optional<Name> {
                   return name_max(max_var_name(n.l), max_var_name(n.r));
                 },
                 [&](const Formula::Or& n) -> std::optional<Name> {
                   return name_max(max_var_name(n.l), max_var_name(n.r));
                 },
                 [&](const Formula::Imp& n) -> std::optional<Name> {
                   return name_max(max_var_name(n.l), max_var_name(n.r));
                 },
                 [&](const Formula::Forall& n) -> std::optional<Name> {
                   std::optional<Name> m = n.var;
                   return name_max(m, max_var_name(n.body));
                 },
                 [&](const Formula::Exists& n) -> std::optional<Name> {
                   std::optional<Name> m = n.var;
                   return name_max(m, max_var_name(n.body));
                 }},
      f->node);
}

std::size_t term_size(const TermPtr& t) {
  return std::visit(overloaded{[](const Term::Var&) -> std::size_t { return 1; },
                               [](const Term::App& a) -> std::size_t {
                                 std::size_t n = 1;
                                 for (auto& arg : a.args) n += term_size(arg);
                                 return n;
                               }},
                    t->node);
}

std::size_t formula_size(const FormulaPtr& f) {
  return std::visit(
      overloaded{[](const Formula::Atom& a) -> std::size_t {
                   std::size_t n = 1;
                   for (auto& t : a.args) n += term_size(t);
                   return n;
                 },
                 [](const Formula::Top&) -> std::size_t { return 1; },
                 [](const Formula::Bot&) -> std::size_t { return 1; },
                 [](const Formula::And& n) -> std::size_t {
                   return 1 + formula_size(n.l) + formula_size(n.r);
                 },
                 [](const Formula::Or& n) -> std::size_t {
                   return 1 + formula_size(n.l) + formula_size(n.r);
                 },
                 [](const Formula::Imp& n) -> std::size_t {
                   return 1 + formula_size(n.l) + formula_size(n.r);
                 },
                 [](const Formula::Forall& n) -> std::size_t { return 1 + formula_size(n.body); },
                 [](const Formula::Exists& n) -> std::size_t { return 1 + formula_size(n.body); }},
      f->node);
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

TermSubst drop_key(const TermSubst& env, const Name& x) {
  TermSubst out;
  for (auto& e : env)
    if (e.first != x) out.push_back(e);
  return out;
}

bool any_value_has(const TermSubst& env, const Name& x) {
  for (auto& [k, v] : env)
    if (occurs_term(x, v)) return true;
  return false;
}

std::optional<Name> env_max_name(const TermSubst& env) {
  std::optional<Name> m;
  for (auto& [k, v] : env) {
    m = name_max(m, std::optional<Name>(k));
    m = name_max(m, max_var_name(v));
  }
  return m;
}

// Binder handling shared by forall/exists: returns (new binder, env for body).
std::pair<Name, TermSubst> enter_binder(const Name& var, const Name& sort,
                                        const FormulaPtr& body, const TermSubst& env,
                                        TermSubst* rename_out) {
  TermSubst inner = drop_key(env, var);
  if (!any_value_has(inner, var)) return {var, inner};
  std::optional<Name> m = max_var_name(body);
  m = name_max(m, env_max_name(inner));
  m = name_max(m, std::optional<Name>(var));
  Name fresh = succ_name(*m);
  inner.emplace_back(var, mk_var(fresh, sort));
  if (rename_out) rename_out->emplace_back(var, mk_var(fresh, sort));
  return {fresh, inner};
}

}  // namespace

TermPtr subst_in_term(const TermPtr& t, const TermSubst& env) {
  if (env.empty()) return t;
  return std::visit(overloaded{[&](const Term::Var& v) -> TermPtr {
                                 for (auto& [k, val] : env)
                                   if (k == v.name) return val;
                                 return t;
                               },
                               [&](const Term::App& a) -> TermPtr {
                                 std::vector<TermPtr> args;
                                 args.reserve(a.args.size());
                                 for (auto& arg : a.args) args.push_back(subst_in_term(arg, env));
                                 return mk_app(a.fn, std::move(args));
                               }},
                    t->node);
}

FormulaPtr subst_in_formula_env(const FormulaPtr& f, const TermSubst& env) {
  if (env.empty()) return f;
  return std::visit(
      overloaded{[&](const Formula::Atom& a) -> FormulaPtr {
                   std::vector<TermPtr> args;
                   args.reserve(a.args.size());
                   for (auto& t : a.args) args.push_back(subst_in_term(t, env));
                   return mk_atom(a.pred, std::move(args));
                 },
                 [&](const Formula::Top&) -> FormulaPtr { return f; },
                 [&](const Formula::Bot&) -> FormulaPtr { return f; },
                 [&](const Formula::And& n) -> FormulaPtr {
                   return mk_and(subst_in_formula_env(n.l, env), subst_in_formula_env(n.r, env));
                 },
                 [&](const Formula::Or& n) -> FormulaPtr {
                   return mk_or(subst_in_formula_env(n.l, env), subst_in_formula_env(n.r, env));
                 },
                 [&](const Formula::Imp& n) -> FormulaPtr {
                   return mk_imp(subst_in_formula_env(n.l, env), subst_in_formula_env(n.r, env));
                 },
                 [&](const Formula::Forall& n) -> FormulaPtr {
                   auto [v, inner] = enter_binder(n.var, n.sort, n.body, env, nullptr);
                   return mk_forall(v, n.sort, subst_in_formula_env(n.body, inner));
                 },
                 [&](const Formula::Exists& n) -> FormulaPtr {
                   auto [v, inner] = enter_binder(n.var, n.sort, n.body, env, nullptr);
                   return mk_exists(v, n.sort, subst_in_formula_env(n.body, inner));
                 }},
      f->node);
}

FormulaPtr subst_in_formula(const FormulaPtr& f, const Name& x, const TermPtr& t) {
  return subst_in_formula_env(f, TermSubst{{x, t}});
}

// ---------------------------------------------------------------------------
// Alpha equality

namespace {

struct AlphaEnv {
  std::vector<std::pair<Name, Name>> pairs;

  bool vars_match(const Name& a, const Name& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      if (it->first == a || it->second == b) return it->first == a && it->second == b;
    }
    return a == b;
  }
};

bool alpha_term(const TermPtr& a, const TermPtr& b, const AlphaEnv& env) {
  if (a->node.index() != b->node.index()) return false;
  if (auto* va = as_var(a)) {
    auto* vb = as_var(b);
    return env.vars_match(va->name, vb->name);
  }
  auto* pa = as_app(a);
  auto* pb = as_app(b);
  if (pa->fn != pb->fn || pa->args.size() != pb->args.size()) return false;
  for (size_t i = 0; i < pa->args.size(); ++i)
    if (!alpha_term(pa->args[i], pb->args[i], env)) return false;
  return true;
}

bool alpha_formula(const FormulaPtr& a, const FormulaPtr& b, AlphaEnv& env) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Formula::Atom& na) {
            auto& nb = std::get<Formula::Atom>(b->node);
            if (na.pred != nb.pred || na.args.size() != nb.args.size()) return false;
            for (size_t i = 0; i < na.args.size(); ++i)
              if (!alpha_term(na.args[i], nb.args[i], env)) return false;
            return true;
          },
          [&](const Formula::Top&) { return true; }, [&](const Formula::Bot&) { return true; },
          [&](const Formula::And& na) {
            auto& nb = std::get<Formula::And>(b->node);
            return alpha_formula(na.l, nb.l, env) && alpha_formula(na.r, nb.r, env);
          },
          [&](const Formula::Or& na) {
            auto& nb = std::get<Formula::Or>(b->node);
            return alpha_formula(na.l, nb.l, env) && alpha_formula(na.r, nb.r, env);
          },
          [&](const Formula::Imp& na) {
            auto& nb = std::get<Formula::Imp>(b->node);
            return alpha_formula(na.l, nb.l, env) && alpha_formula(na.r, nb.r, env);
          },
          [&](const Formula::Forall& na) {
            auto& nb = std::get<Formula::Forall>(b->node);
            if (na.sort != nb.sort) return false;
            env.pairs.emplace_back(na.var, nb.var);
            bool ok = alpha_formula(na.body, nb.body, env);
            env.pairs.pop_back();
            return ok;
          },
          [&](const Formula::Exists& na) {
            auto& nb = std::get<Formula::Exists>(b->node);
            if (na.sort != nb.sort) return false;
            env.pairs.emplace_back(na.var, nb.var);
            bool ok = alpha_formula(na.body, nb.body, env);
            env.pairs.pop_back();
            return ok;
          }},
      a->node);
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  AlphaEnv env;
  return alpha_formula(a, b, env);
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  AlphaEnv env;
  return alpha_term(a, b, env);
}

// ---------------------------------------------------------------------------
// Sorts

Name sort_of(const TermPtr& t, const Signature& sig) {
  return std::visit(overloaded{[&](const Term::Var& v) -> Name {
                                 if (!v.sort) throw InputError("variable " + v.name + " has no sort");
                                 if (!sig.has_sort(*v.sort))
                                   throw InputError("variable " + v.name + ": undeclared sort " + *v.sort);
                                 return *v.sort;
                               },
                               [&](const Term::App& a) -> Name {
                                 const FunRank* r = sig.function(a.fn);
                                 if (!r) throw InputError("unknown function symbol: " + a.fn);
                                 if (r->args.size() != a.args.size())
                                   throw InputError(a.fn + ": expects " + std::to_string(r->args.size()) +
                                                    " arguments");
                                 for (size_t i = 0; i < a.args.size(); ++i) {
                                   Name s = sort_of(a.args[i], sig);
                                   if (s != r->args[i])
                                     throw InputError(a.fn + ": argument " + std::to_string(i + 1) +
                                                      " has sort " + s + ", expected " + r->args[i]);
                                 }
                                 return r->result;
                               }},
                    t->node);
}

namespace {

void check_sorts_rec(const FormulaPtr& f, const Signature& sig,
                     std::vector<std::pair<Name, Name>>& bound) {
  auto term_sort = [&](const TermPtr& t) {
    // A bound occurrence must agree with its binder.
    struct Walk {
      const Signature& sig;
      std::vector<std::pair<Name, Name>>& bound;
      Name operator()(const TermPtr& t) {
        if (auto* v = as_var(t)) {
          for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
            if (it->first == v->name) {
              if (v->sort && *v->sort != it->second)
                throw InputError("variable " + v->name + " annotated " + *v->sort +
                                 " but bound at sort " + it->second);
              return it->second;
            }
          }
          if (!v->sort) throw InputError("free variable " + v->name + " has no sort");
          if (!sig.has_sort(*v->sort))
            throw InputError("variable " + v->name + ": undeclared sort " + *v->sort);
          return *v->sort;
        }
        auto* a = as_app(t);
        const FunRank* r = sig.function(a->fn);
        if (!r) throw InputError("unknown function symbol: " + a->fn);
        if (r->args.size() != a->args.size())
          throw InputError(a->fn + ": expects " + std::to_string(r->args.size()) + " arguments");
        for (size_t i = 0; i < a->args.size(); ++i) {
          Name s = (*this)(a->args[i]);
          if (s != r->args[i])
            throw InputError(a->fn + ": argument " + std::to_string(i + 1) + " has sort " + s +
                             ", expected " + r->args[i]);
        }
        return r->result;
      }
    };
    return Walk{sig, bound}(t);
  };

  std::visit(overloaded{[&](const Formula::Atom& a) {
                          const std::vector<Name>* r = sig.predicate(a.pred);
                          if (!r) throw InputError("unknown predicate symbol: " + a.pred);
                          if (r->size() != a.args.size())
                            throw InputError(a.pred + ": expects " + std::to_string(r->size()) +
                                             " arguments");
                          for (size_t i = 0; i < a.args.size(); ++i) {
                            Name s = term_sort(a.args[i]);
                            if (s != (*r)[i])
                              throw InputError(a.pred + ": argument " + std::to_string(i + 1) +
                                               " has sort " + s + ", expected " + (*r)[i]);
                          }
                        },
                        [&](const Formula::Top&) {}, [&](const Formula::Bot&) {},
                        [&](const Formula::And& n) {
                          check_sorts_rec(n.l, sig, bound);
                          check_sorts_rec(n.r, sig, bound);
                        },
                        [&](const Formula::Or& n) {
                          check_sorts_rec(n.l, sig, bound);
                          check_sorts_rec(n.r, sig, bound);
                        },
                        [&](const Formula::Imp& n) {
                          check_sorts_rec(n.l, sig, bound);
                          check_sorts_rec(n.r, sig, bound);
                        },
                        [&](const Formula::Forall& n) {
                          if (!sig.has_sort(n.sort)) throw InputError("undeclared sort " + n.sort);
                          bound.emplace_back(n.var, n.sort);
                          check_sorts_rec(n.body, sig, bound);
                          bound.pop_back();
                        },
                        [&](const Formula::Exists& n) {
                          if (!sig.has_sort(n.sort)) throw InputError("undeclared sort " + n.sort);
                          bound.emplace_back(n.var, n.sort);
                          check_sorts_rec(n.body, sig, bound);
                          bound.pop_back();
                        }},
             f->node);
}

}  // namespace

void check_formula_sorts(const FormulaPtr& f, const Signature& sig) {
  std::vector<std::pair<Name, Name>> bound;
  check_sorts_rec(f, sig, bound);
}

// ---------------------------------------------------------------------------
// Theory validation

void Theory::validate() const {
  sig.validate();
  for (auto& r : rules) {
    if (r.term_level) {
      if (!r.lhs_t || !r.rhs_t) throw InputError("term rule missing sides");
      if (as_var(r.lhs_t)) throw InputError("term rule left-hand side must not be a bare variable");
      Name ls = sort_of(r.lhs_t, sig);
      Name rs = sort_of(r.rhs_t, sig);
      if (ls != rs) throw InputError("term rule rewrites sort " + ls + " to sort " + rs);
      auto lv = free_vars(r.lhs_t);
      for (auto& [n, s] : free_vars(r.rhs_t)) {
        bool found = false;
        for (auto& [m, t] : lv) found = found || (m == n && t == s);
        if (!found) throw InputError("term rule right-hand side has unbound variable " + n);
      }
    } else {
      if (!r.lhs_p || !r.rhs_p) throw InputError("prop rule missing sides");
      if (!std::holds_alternative<Formula::Atom>(r.lhs_p->node))
        throw InputError("prop rule left-hand side must be an atom");
      check_formula_sorts(r.lhs_p, sig);
      check_formula_sorts(r.rhs_p, sig);
      auto lv = free_vars(r.lhs_p);
      for (auto& [n, s] : free_vars(r.rhs_p)) {
        bool found = false;
        for (auto& [m, t] : lv) found = found || (m == n && t == s);
        if (!found) throw InputError("prop rule right-hand side has unbound variable " + n);
      }
    }
  }
  for (auto& a : axioms) {
    check_formula_sorts(a, sig);
    if (!is_closed(a)) throw InputError("axiom is not closed");
  }
}

FormulaPtr instantiate_template(const FormulaTemplate& t,
                                const std::vector<TermPtr>& args) {
  if (args.size() != t.holes.size()) {
    throw InputError("template expects " + std::to_string(t.holes.size()) +
                     " arguments, got " + std::to_string(args.size()));
  }
  TermSubst env;
  for (std::size_t i = 0; i < args.size(); ++i) env.emplace_back(t.holes[i], args[i]);
  return subst_in_formula_env(t.body, env);
}

}  // namespace demod
