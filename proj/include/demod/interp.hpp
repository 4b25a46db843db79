#pragma once

#include "demod/syntax.hpp"

namespace demod {

// Sort image: s ↦ (s_*, relativization predicate s*(·) as a one-hole template).
struct SortInterp {
  Name target;
  FormulaTemplate rel;
};

// Function macro: f(z1,…,zn) ↦ a target-side term over the holes.
struct TermTemplate {
  std::vector<Name> holes;
  TermPtr body;
};

struct InterpretationSpec {
  std::vector<std::pair<Name, SortInterp>> sorts;
  std::vector<std::pair<Name, TermTemplate>> funs;
  std::vector<std::pair<Name, FormulaTemplate>> preds;

  const SortInterp* sort(const Name& s) const;
  const TermTemplate* fun(const Name& f) const;
  const FormulaTemplate* pred(const Name& p) const;
};

// The fixed variable renaming x ↦ x* (injective: appends one character).
Name star_name(const Name& x);

// s*(t): the sort's relativization predicate instantiated at t.
FormulaPtr relativize(const InterpretationSpec& spec, const Name& sort,
                      const TermPtr& t);

// s1*(x1*) ∧ … ∧ sn*(xn*) → body over the given source variables; no
// implication when there are none.
FormulaPtr relativization_guard(const InterpretationSpec& spec,
                                const std::vector<std::pair<Name, Name>>& fv,
                                FormulaPtr body);

// Structural translations: variables rename to their star image at the
// target sort, applications instantiate the function macro, connectives map
// homomorphically, and quantifiers relativize:
//   (∀x A)* = ∀x* (s*(x*) → A*)        (∃x A)* = ∃x* (s*(x*) ∧ A*)
TermPtr translate_term(const InterpretationSpec& spec, const TermPtr& t);
FormulaPtr translate_formula(const InterpretationSpec& spec, const FormulaPtr& A);

struct Obligation {
  std::string tag;
  FormulaPtr formula;  // closed, well-sorted in the target theory
  std::string provenance;
};

// One non-emptiness obligation per source sort, one relativized-closure
// obligation per function symbol, one translated image per axiom. The
// per-connective equivalences hold by construction for a structural
// translation; when requested they are emitted instantiated at the atomic
// base case p(z̄) (plus the closed ⊤/⊥ displays).
std::vector<Obligation> emit_interpretation_obligations(
    const InterpretationSpec& spec, const Theory& T, const Theory& U,
    bool item2_equivalences = false);

// ∀-closed  s1*(x1*) ∧ … ∧ sn*(xn*) → A*  over A's free variables.
FormulaPtr theorem_statement(const InterpretationSpec& spec, const FormulaPtr& A);

// (interp (sort <s> <s_*> (rel (<x>) <formula>))
//         (fun <f> ((<z1> …)) <term>)
//         (pred <p> ((<z1> …)) <formula>) …)
// Templates parse against U's signature with holes seeded at the translated
// argument sorts. When `leftover` is given, unrecognized entries are handed
// back instead of rejected (the realizability format adds entry kinds).
InterpretationSpec parse_interp_spec(const SExpr& e, const Signature& T,
                                     const Signature& U,
                                     std::vector<SExpr>* leftover = nullptr);
InterpretationSpec parse_interp_spec_text(const std::string& text,
                                          const Signature& T, const Signature& U);

}  // namespace demod
