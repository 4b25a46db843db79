#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "demod/sexpr.hpp"

namespace demod {

using Name = std::string;

// ---------------------------------------------------------------------------
// Signatures

struct FunRank {
  std::vector<Name> args;
  Name result;
};

struct Signature {
  std::vector<Name> sorts;  // declaration order
  std::vector<std::pair<Name, FunRank>> functions;
  std::vector<std::pair<Name, std::vector<Name>>> predicates;

  bool has_sort(const Name& s) const;
  const FunRank* function(const Name& f) const;
  const std::vector<Name>* predicate(const Name& p) const;
  void add_sort(const Name& s);
  void add_function(const Name& f, FunRank rank);
  void add_predicate(const Name& p, std::vector<Name> argsorts);
  void validate() const;  // distinct names, ranks over declared sorts
};

// ---------------------------------------------------------------------------
// Terms

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  struct Var {
    Name name;
    // Sorted everywhere formulas are involved; proofs may carry bare variables.
    std::optional<Name> sort;
  };
  struct App {
    Name fn;
    std::vector<TermPtr> args;
  };
  std::variant<Var, App> node;
};

TermPtr mk_var(Name name, std::optional<Name> sort);
TermPtr mk_app(Name fn, std::vector<TermPtr> args);

const Term::Var* as_var(const TermPtr& t);
const Term::App* as_app(const TermPtr& t);

// ---------------------------------------------------------------------------
// Formulas

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  struct Atom {
    Name pred;
    std::vector<TermPtr> args;
  };
  struct Top {};
  struct Bot {};
  struct And {
    FormulaPtr l, r;
  };
  struct Or {
    FormulaPtr l, r;
  };
  struct Imp {
    FormulaPtr l, r;
  };
  struct Forall {
    Name var;
    Name sort;
    FormulaPtr body;
  };
  struct Exists {
    Name var;
    Name sort;
    FormulaPtr body;
  };
  std::variant<Atom, Top, Bot, And, Or, Imp, Forall, Exists> node;
};

FormulaPtr mk_atom(Name pred, std::vector<TermPtr> args);
FormulaPtr mk_top();
FormulaPtr mk_bot();
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_imp(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_not(FormulaPtr a);            // sugar: a -> bot
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);  // sugar: (a -> b) ∧ (b -> a)
FormulaPtr mk_forall(Name var, Name sort, FormulaPtr body);
FormulaPtr mk_exists(Name var, Name sort, FormulaPtr body);

// Right-associated conjunction; empty list yields ⊤.
FormulaPtr mk_and_chain(std::vector<FormulaPtr> fs);
// Universal closure over the formula's free variables, outermost first.
FormulaPtr close_universally(FormulaPtr f);

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

// ---------------------------------------------------------------------------
// Rules, theories, sequents

struct RewriteRule {
  bool term_level = true;
  // Term rule: lhs/rhs terms; prop rule: lhs an atom, rhs any formula.
  TermPtr lhs_t, rhs_t;
  FormulaPtr lhs_p, rhs_p;
};

struct Theory {
  Signature sig;
  std::vector<RewriteRule> rules;
  std::vector<FormulaPtr> axioms;
  void validate() const;
};

struct Sequent {
  std::vector<std::pair<Name, FormulaPtr>> hyps;  // distinct proof-variable names
  FormulaPtr goal;
};

// ---------------------------------------------------------------------------
// Operations

// Free variables with their sorts, in first-occurrence order. Throws
// InputError if one name occurs free at two sorts or without a sort.
std::vector<std::pair<Name, Name>> free_vars(const FormulaPtr& f);
std::vector<std::pair<Name, Name>> free_vars(const TermPtr& t);
std::vector<std::pair<Name, Name>> free_vars(const Sequent& seq);
bool is_closed(const FormulaPtr& f);

bool occurs_free(const Name& x, const FormulaPtr& f);
bool occurs_free(const Name& x, const TermPtr& t);

// Simultaneous capture-avoiding substitution; binders that would capture a
// variable of a substituted value are renamed to the successor of the largest
// name in scope.
using TermSubst = std::vector<std::pair<Name, TermPtr>>;
TermPtr subst_in_term(const TermPtr& t, const TermSubst& env);
FormulaPtr subst_in_formula_env(const FormulaPtr& f, const TermSubst& env);
FormulaPtr subst_in_formula(const FormulaPtr& f, const Name& x, const TermPtr& t);

// Structural equality up to renaming of bound variables (binder sorts must match).
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);
bool term_equal(const TermPtr& a, const TermPtr& b);

// A first-order formula with distinguished free variables as holes.
struct FormulaTemplate {
  std::vector<Name> holes;
  FormulaPtr body;
};

// Simultaneous capture-avoiding instantiation; argument count must match.
FormulaPtr instantiate_template(const FormulaTemplate& t,
                                const std::vector<TermPtr>& args);

// Sort of a term; requires annotations on free variables.
Name sort_of(const TermPtr& t, const Signature& sig);
// Well-sortedness of a formula whose free variables carry annotations.
void check_formula_sorts(const FormulaPtr& f, const Signature& sig);

// Largest variable name occurring anywhere (free, bound or as a binder).
std::optional<Name> max_var_name(const TermPtr& t);
std::optional<Name> max_var_name(const FormulaPtr& f);

// Node counts (variables and constructors each count one).
std::size_t term_size(const TermPtr& t);
std::size_t formula_size(const FormulaPtr& f);

}  // namespace demod
