#include "demod/rewriting.hpp"

namespace demod {

bool match_term(const TermPtr& pattern, const TermPtr& subject, TermSubst& binding) {
  if (const Term::Var* v = as_var(pattern)) {
    for (const auto& [k, t] : binding)
      if (k == v->name) return term_equal(t, subject);
    binding.emplace_back(v->name, subject);
    return true;
  }
  const Term::App& pa = *as_app(pattern);
  const Term::App* sa = as_app(subject);
  if (!sa || sa->fn != pa.fn || sa->args.size() != pa.args.size()) return false;
  for (std::size_t i = 0; i < pa.args.size(); ++i)
    if (!match_term(pa.args[i], sa->args[i], binding)) return false;
  return true;
}

namespace {

void spend(std::size_t& fuel) {
  if (fuel == 0) throw BudgetError("rewrite fuel exhausted (rule set may not terminate)");
  --fuel;
}

TermPtr norm_t(const TermPtr& t, const std::vector<RewriteRule>& rules, std::size_t& fuel) {
  if (as_var(t)) return t;
  const Term::App& a = *as_app(t);
  std::vector<TermPtr> args;
  args.reserve(a.args.size());
  for (const TermPtr& c : a.args) args.push_back(norm_t(c, rules, fuel));
  TermPtr cur = mk_app(a.fn, std::move(args));
  for (const RewriteRule& r : rules) {
    if (!r.term_level) continue;
    TermSubst binding;
    if (match_term(r.lhs_t, cur, binding)) {
      spend(fuel);
      return norm_t(subst_in_term(r.rhs_t, binding), rules, fuel);
    }
  }
  return cur;
}

FormulaPtr norm_f(const FormulaPtr& f, const std::vector<RewriteRule>& rules, std::size_t& fuel) {
  return std::visit(
      overloaded{
          [&](const Formula::Atom& at) -> FormulaPtr {
            std::vector<TermPtr> args;
            args.reserve(at.args.size());
            for (const TermPtr& t : at.args) args.push_back(norm_t(t, rules, fuel));
            for (const RewriteRule& r : rules) {
              if (r.term_level) continue;
              const Formula::Atom& lhs = std::get<Formula::Atom>(r.lhs_p->node);
              if (lhs.pred != at.pred) continue;
              TermSubst binding;
              bool ok = lhs.args.size() == args.size();
              for (std::size_t i = 0; ok && i < args.size(); ++i)
                ok = match_term(lhs.args[i], args[i], binding);
              if (ok) {
                spend(fuel);
                return norm_f(subst_in_formula_env(r.rhs_p, binding), rules, fuel);
              }
            }
            return mk_atom(at.pred, std::move(args));
          },
          [&](const Formula::Top&) -> FormulaPtr { return f; },
          [&](const Formula::Bot&) -> FormulaPtr { return f; },
          [&](const Formula::And& n) -> FormulaPtr {
            return mk_and(norm_f(n.l, rules, fuel), norm_f(n.r, rules, fuel));
          },
          [&](const Formula::Or& n) -> FormulaPtr {
            return mk_or(norm_f(n.l, rules, fuel), norm_f(n.r, rules, fuel));
          },
          [&](const Formula::Imp& n) -> FormulaPtr {
            return mk_imp(norm_f(n.l, rules, fuel), norm_f(n.r, rules, fuel));
          },
          [&](const Formula::Forall& n) -> FormulaPtr {
            return mk_forall(n.var, n.sort, norm_f(n.body, rules, fuel));
          },
          [&](const Formula::Exists& n) -> FormulaPtr {
            return mk_exists(n.var, n.sort, norm_f(n.body, rules, fuel));
          },
      },
      f->node);
}

}  // namespace

TermPtr normalize_term(const TermPtr& t, const std::vector<RewriteRule>& rules,
                       std::size_t fuel) {
  return norm_t(t, rules, fuel);
}

FormulaPtr normalize_formula(const FormulaPtr& f, const std::vector<RewriteRule>& rules,
                             std::size_t fuel) {
  return norm_f(f, rules, fuel);
}

bool congruent(const FormulaPtr& a, const FormulaPtr& b, const std::vector<RewriteRule>& rules,
               std::size_t fuel) {
  return alpha_equal(normalize_formula(a, rules, fuel), normalize_formula(b, rules, fuel));
}

bool congruent_terms(const TermPtr& a, const TermPtr& b, const std::vector<RewriteRule>& rules,
                     std::size_t fuel) {
  return term_equal(normalize_term(a, rules, fuel), normalize_term(b, rules, fuel));
}

}  // namespace demod
