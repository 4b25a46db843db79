#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "demod/codec.hpp"
#include "demod/primrec.hpp"
#include "demod/syntax.hpp"

namespace demod {

enum class Verdict { True, False, Unknown };

struct EvalBounds {
  std::size_t tree_bound = 6;  // quantifier enumeration: max tree size
  std::size_t sn_bound = 50;   // reduction-graph depth for SN
};

// True/False are bound-independent; Unknown carries the limiting bound or
// the approximation that blocked a verdict.
struct EvalVerdict {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
};

const char* verdict_name(Verdict v);

// The standard tree model of the syntactic-constructions theory. Terms
// denote hash-consed trees (constructors build nodes, other function symbols
// run their primitive recursive definitions), = is pointer equality, L holds
// everywhere, the registered relations run their definitions, and Red, Redn,
// SN run the reduction engine natively and exactly on encoded proofs.
//
// Quantifiers over trees are solved per block by three strategies:
//   - a Red/Red* guard whose source is closed and whose other side is a
//     constructor pattern over block variables branches exactly over the
//     finite reduct/reachable set;
//   - a guard pinning a variable to a registered unary relation (or to
//     Term/TermVar at a fixed sort) enumerates the constructive pool of
//     members up to the size bound — a universal that holds on the whole
//     pool counts as True, so pinned verdicts are relative to the bound;
//   - anything else samples trees by size, which can only refute a
//     universal or witness an existential; otherwise Unknown.
class TreeModel {
 public:
  explicit TreeModel(const TreeCodec& codec);

  EvalVerdict eval(const FormulaPtr& f, const EvalBounds& bounds);

  // Atom evaluation on tree arguments; rel must be =, L, SN, Red*, or a
  // registered relation definition.
  EvalVerdict relation(const Name& rel, const std::vector<TreePtr>& args,
                       const EvalBounds& bounds);

  // Members of a pinning relation up to tree size `bound`, constructed
  // directly (not by filtering all trees). `sort_code` applies to Term and
  // TermVar and must be an encoded sort. Exposed for cross-checks against
  // enumeration plus definition-evaluation at small bounds.
  const std::vector<TreePtr>& relation_pool(const Name& rel, TreePtr sort_code,
                                            const EvalBounds& bounds);

  // All one-step reducts of any tree: native engine on encoded proofs, the
  // reducts definition otherwise.
  std::vector<TreePtr> step_trees(TreePtr t);

  const TreeCodec& codec() const { return *codec_; }

 private:
  struct Env;
  struct Agg;

  TreePtr tree_of(const TermPtr& t, const Env& env);
  EvalVerdict eval_rec(const FormulaPtr& f, Env& env, const EvalBounds& b);
  EvalVerdict eval_atom(const Formula::Atom& a, Env& env, const EvalBounds& b);
  EvalVerdict solve_block(bool universal, std::vector<Name> vars,
                          std::vector<FormulaPtr> guards, FormulaPtr core,
                          Env& env, const EvalBounds& b);
  EvalVerdict sn_native(TreePtr t, const EvalBounds& b);
  // Reachable set from t; second component false when the cap was hit.
  std::pair<std::vector<TreePtr>, bool> reachable(TreePtr t);
  std::pair<const std::vector<TreePtr>*, bool> raw_trees(std::size_t bound);
  bool pr_bool(const std::string& name, const std::vector<TreePtr>& args);

  const TreeCodec* codec_;
  PrEval eval_;
  std::unordered_map<std::string, std::vector<TreePtr>> pools_;
  std::unordered_map<std::size_t, std::pair<std::vector<TreePtr>, bool>> raw_;
  std::unordered_map<TreePtr, std::pair<std::vector<TreePtr>, bool>> reach_;
};

EvalVerdict eval_formula(const TreeCodec& codec, const FormulaPtr& f,
                         const EvalBounds& bounds);

// 1-consistency desk check: evaluate a relation at candidate witness trees.
EvalVerdict verify_witness(const TreeCodec& codec, const Name& rel,
                           const std::vector<TreePtr>& witness,
                           const EvalBounds& bounds);

}  // namespace demod
