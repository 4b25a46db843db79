#pragma once

#include <cstdint>

#include "demod/proof.hpp"
#include "demod/tree.hpp"

namespace demod {

// Deterministic corpus generators: exhaustive by-size streams of proofs,
// terms and trees, plus a seeded generator for the randomized sweeps. Every
// order is stable across runs and platforms.

// Leaves are Axiom(pvar) and TopI; Lam/Case/ExElim hypotheses cycle through
// `pvars`, TLam/ExElim binders through `tvars`; TApp/Wit term positions draw
// from `terms` (empty: the unannotated variables of `tvars`).
struct ProofEnumOptions {
  std::size_t max_size = 4;
  std::vector<Name> pvars{"a", "b"};
  std::vector<Name> tvars{"x"};
  std::vector<TermPtr> terms;
  bool term_formers = true;   // TLam/TApp/Wit/ExElim
  bool case_former = true;    // Case (widest fan-out)
  bool imp_pair_only = false; // restrict to Axiom/TopI/Lam/App/Pair/Fst/Snd
};

// Every proof-term with proof_size <= max_size, sizes ascending; within one
// size, former declaration order then operand order. Duplicate-free.
std::vector<ProofPtr> enumerate_proofs(const ProofEnumOptions& opt);

// Every well-sorted term of `sort` with term_size <= max_size whose free
// variables come from `vars` (annotated), sizes ascending.
std::vector<TermPtr> enumerate_terms(const Signature& sig, const Name& sort,
                                     const std::vector<std::pair<Name, Name>>& vars,
                                     std::size_t max_size);

// Every tree of the language with tree_size <= max_size, sizes ascending;
// within one size, language constructor order then child order. The count
// grows near (#ctors)^size; exceeding max_count throws BudgetError.
std::vector<TreePtr> enumerate_trees(const TreeLang& lang, std::size_t max_size,
                                     std::size_t max_count = 5000000);

// splitmix64: identical streams per seed everywhere, unlike the
// distribution-dependent <random> engines.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::size_t below(std::size_t n);  // uniform over [0, n); n > 0
 private:
  std::uint64_t state_;
};

// Random well-sorted formula of connective depth <= depth over sig; free
// variables drawn from `vars`, quantifiers bind fresh names (prefix "q").
FormulaPtr random_formula(Rng& rng, const Signature& sig,
                          const std::vector<std::pair<Name, Name>>& vars,
                          std::size_t depth);

// Random derivation accepted by construction: the proof checks against the
// sequent by typed bottom-up rule application. Cut redexes (introductions
// under their matching eliminations) are injected throughout, and hypothesis
// and goal formulas are expanded right-to-left through th's variable-rhs
// term rules, so acceptance exercises reduction and the congruence both.
struct RandomDerivation {
  Sequent seq;
  ProofPtr proof;
};
RandomDerivation random_derivation(Rng& rng, const Theory& th, std::size_t depth);

}  // namespace demod
