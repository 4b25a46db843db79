#pragma once

#include "demod/primrec.hpp"
#include "demod/syntax.hpp"

namespace demod {

// The non-primitive-recursive relations derived from the builtin ones:
//   Red*(x, y) = ∃n (Nat(n) ∧ Redn(x, n, y))
//   SN(x)      = Proof(x) ∧ ∃n (Nat(n) ∧ ∀y (Proof(y) → ¬Redn(x, n, y)))
FormulaTemplate derived_relation(const std::string& name);

inline constexpr const char* kTreeSort = "tree";

// First-order image of a tree: constructors applied as function symbols.
TermPtr tree_to_term(TreePtr t);

// The mono-sorted theory of syntactic constructions over the language:
// equality (reflexivity, combined symmetry/transitivity, congruence per
// function symbol), constructor injectivity and pairwise non-confusion, one
// equation per defining clause of each definition, and one induction axiom
// per supplied instance, each universally closed.
Theory emit_s_axioms(const TreeLang& lang, const std::vector<PrimRecDef>& defs,
                     const std::vector<FormulaTemplate>& induction_instances);

// The S signature extended with relation predicates: =, the ten builtin
// relations, the derived Red* and SN, and the tree-domain predicate L.
// Realizability output and evaluator input parse against this signature.
Signature s_extended_signature(const TreeLang& lang,
                               const std::vector<PrimRecDef>& defs);

}  // namespace demod
