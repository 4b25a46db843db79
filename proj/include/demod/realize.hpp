#pragma once

#include "demod/codec.hpp"
#include "demod/interp.hpp"

namespace demod {

// p ↦ (π ⊩ p(z1,…,zn)): one hole per argument plus the realizer hole π.
struct RealPred {
  std::vector<Name> holes;
  Name pi;
  FormulaPtr body;
};

struct RealizabilitySpec {
  InterpretationSpec base;
  std::vector<std::pair<Name, RealPred>> realpreds;

  const RealPred* realpred(const Name& p) const;
};

// π ⊩ A by the recursive equations over the codec's tree language; the
// realizer is an arbitrary term of the tree sort. Bound variables introduced
// by the clauses come from the reserved '_' namespace indexed by recursion
// depth; quantified source variables appear as their star images.
FormulaPtr realize(const RealizabilitySpec& spec, const TreeCodec& codec,
                   const FormulaPtr& A, const TermPtr& realizer);

// CR_π(A(π)): membership implies Proof ∧ SN; proof variables are members;
// closure under Red; eliminations with all one-step reducts members are
// members. The hole variable has the tree sort.
FormulaPtr cr_formula(const Name& pi, const FormulaPtr& A);

// π ⊩ (A1,…,Ak ⊢ B) = ImpI(⌜α1⌝, … ImpI(⌜αk⌝, π) …) ⊩ A1→…→Ak→B, with the
// hypothesis proof-variables encoded from their sequent names.
FormulaPtr realize_sequent(const RealizabilitySpec& spec, const TreeCodec& codec,
                           const Sequent& seq, const TermPtr& realizer);

// The four interpretation conditions: sort non-emptiness, function closure,
// the CR obligation per predicate symbol, and the guarded equivalence
// ∀π (π ⊩ A ↔ π ⊩ A′) per congruent pair; a term rule contributes its
// atomic one-step contexts p(…, lhs, …) ≡ p(…, rhs, …).
std::vector<Obligation> emit_realizability_obligations(const RealizabilitySpec& spec,
                                                       const Theory& T,
                                                       const Theory& U);

struct RealStatement {
  std::string kind;
  FormulaPtr formula;  // closed, well-sorted in the target theory
  std::string provenance;
};

// ∀x̄* (guard → s*(t*)) for a term of sort s.
RealStatement typing_term_statement(const RealizabilitySpec& spec,
                                    const Signature& T, const TermPtr& t);
// ∀x̄* (guard → CR_π(π ⊩ A)).
RealStatement typing_formula_statement(const RealizabilitySpec& spec,
                                       const TreeCodec& codec, const FormulaPtr& A);
// ∀x̄* ∀π (guard ∧ π ⊩ A → SN(π)).
RealStatement normalization_statement(const RealizabilitySpec& spec,
                                      const TreeCodec& codec, const FormulaPtr& A);
// ∀x̄* ∀π (guard ∧ π ⊩ (Γ ⊢ B) → SN(π)).
RealStatement normalization_sequent_statement(const RealizabilitySpec& spec,
                                              const TreeCodec& codec,
                                              const Sequent& seq);
// ∀x̄* (guard → ⌜π⌝ ⊩ (Γ ⊢ B)) for a concrete proof term.
RealStatement existence_statement(const RealizabilitySpec& spec,
                                  const TreeCodec& codec, const Sequent& seq,
                                  const ProofPtr& proof);

// The interpretation spec format plus (realpred <p> ((<z> …)) (<pi>) <formula>)
// entries; the realizer hole parses at the tree sort.
RealizabilitySpec parse_realizability_spec(const SExpr& e, const Signature& T,
                                           const Signature& U);
RealizabilitySpec parse_realizability_spec_text(const std::string& text,
                                                const Signature& T,
                                                const Signature& U);

}  // namespace demod
