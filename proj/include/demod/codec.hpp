#pragma once

#include <memory>

#include "demod/primrec.hpp"
#include "demod/proof.hpp"

namespace demod {

// List helpers over the nil/cons constructors.
TreePtr tree_nil();
TreePtr tree_cons(TreePtr head, TreePtr tail);
TreePtr tree_list(const std::vector<TreePtr>& items);
std::vector<TreePtr> tree_list_items(TreePtr t);  // input error on non-lists

// Tree encoding of the proof calculus over a signature. Constructors, in
// language order: numerals 0/s, lists nil/cons, Sortc(index), TVar(index,
// sort-slot) with slot 0 meaning unannotated, the fifteen rule-named proof
// formers (Axiom doubles as the proof-variable node, binder slots hold the
// full Axiom/TVar node), then one fn.<f> constructor per function symbol.
//
// On top of the language sit the builtin primitive recursive definitions:
// booleans as numerals 0/1, tree equality, environment operations, the
// unified substitution usubst mirroring the direct one clause for clause,
// PSubst/TSubst, one-step reduct lists, and the relations of the encoded
// calculus (Nat, Le, Sort, TermVar, Term, ProofVar, Proof, Elim, Red, Redn).
class TreeCodec {
 public:
  explicit TreeCodec(const Signature& sig);
  TreeCodec(TreeCodec&&) noexcept = default;
  TreeCodec& operator=(TreeCodec&&) noexcept = default;

  const Signature& signature() const { return *sig_; }
  const TreeLang& lang() const { return *lang_; }
  const PrimRecEnv& prs() const { return *prs_; }

  TreePtr encode_pvar(const Name& a) const;
  TreePtr encode_tvar(const Name& x, const std::optional<Name>& sort) const;
  TreePtr encode_sort(const Name& s) const;
  TreePtr encode_term(const TermPtr& t) const;
  TreePtr encode_proof(const ProofPtr& p) const;
  // Environments as assoc lists of cons(index, value), in iteration order.
  TreePtr encode_penv(const PEnv& env) const;
  TreePtr encode_tenv(const TermSubst& env) const;

  TermPtr decode_term(TreePtr t) const;
  ProofPtr decode_proof(TreePtr t) const;

 private:
  TreePtr encode_slot(const std::optional<Name>& sort) const;
  std::optional<Name> decode_slot(TreePtr t) const;
  Name decode_var_name(TreePtr numeral, TreePtr at) const;

  const Signature* sig_;
  std::unique_ptr<TreeLang> lang_;
  std::unique_ptr<PrimRecEnv> prs_;
};

inline constexpr const char* kFnCtorPrefix = "fn.";

}  // namespace demod
