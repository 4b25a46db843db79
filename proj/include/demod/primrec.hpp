#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "demod/tree.hpp"

namespace demod {

// Primitive recursive definitions over a tree language: one clause per
// constructor, structural recursion on a single argument position, calls
// only to previously defined functions. If is lazy in its branches and is
// the one extension beyond the textbook schema; it denotes the same values
// as the eager definition cond (0 -> else, s -> then, others -> else).
enum class PrKind { Child, Arg, Rec, Call, Make, Lit, If };

struct PrExpr;
using PrExprPtr = std::shared_ptr<const PrExpr>;

struct PrExpr {
  PrKind kind;
  std::size_t index = 0;        // Child/Arg position, Rec child position
  std::string name;             // Call target, Make constructor
  std::vector<PrExprPtr> args;  // Rec lists the non-recursion arguments in order
  TreePtr lit = nullptr;
};

PrExprPtr pr_child(std::size_t i);
PrExprPtr pr_arg(std::size_t j);
PrExprPtr pr_rec(std::size_t child, std::vector<PrExprPtr> rest = {});
PrExprPtr pr_call(std::string fn, std::vector<PrExprPtr> args);
PrExprPtr pr_make(std::string ctor, std::vector<PrExprPtr> args);
PrExprPtr pr_lit(TreePtr t);
PrExprPtr pr_if(PrExprPtr c, PrExprPtr t, PrExprPtr e);

struct PrimRecDef {
  std::string name;
  std::size_t arity = 1;
  std::size_t rec_pos = 0;
  std::vector<PrExprPtr> clauses;  // aligned with the language's constructors
};

class PrimRecEnv {
 public:
  explicit PrimRecEnv(const TreeLang* lang) : lang_(lang) {}
  const TreeLang& lang() const { return *lang_; }

  // Validates the definition (clause count, index ranges, call targets
  // already present, Arg never names the recursion position) and appends it.
  std::size_t add(PrimRecDef def);
  const PrimRecDef* find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;
  const std::vector<PrimRecDef>& defs() const { return defs_; }

 private:
  const TreeLang* lang_;
  std::vector<PrimRecDef> defs_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct PrStats {
  std::size_t calls = 0;
  std::size_t memo_hits = 0;
  std::size_t max_depth = 0;
};

// Expression-evaluation depth budget, counted in evaluator frames (a few per
// numeral layer). Numeral-recursing definitions descend to the numeral's
// value, so identifiers whose base-90 index runs past roughly 1500 — most
// multi-character names — fail with a BudgetError instead of exhausting the
// machine stack. Encoded data is expected to use short names.
inline constexpr std::size_t kMaxEvalDepth = 6000;

// Memoising evaluator; memo keys are (definition, argument pointers), so a
// session amortises repeated subcalls across queries.
class PrEval {
 public:
  explicit PrEval(const PrimRecEnv& env) : env_(&env) {}
  TreePtr call(const std::string& name, const std::vector<TreePtr>& args);
  TreePtr call_index(std::size_t def_index, std::vector<TreePtr> args);
  const PrStats& stats() const { return stats_; }

 private:
  struct Key {
    std::size_t def;
    std::vector<TreePtr> args;
    bool operator==(const Key& o) const { return def == o.def && args == o.args; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  TreePtr eval(const PrExpr& e, std::size_t def_index, TreePtr rec_arg,
               const std::vector<TreePtr>& args);

  const PrimRecEnv* env_;
  PrStats stats_;
  std::size_t depth_ = 0;
  std::unordered_map<Key, TreePtr, KeyHash> memo_;
};

TreePtr eval_pr(const PrimRecEnv& env, const std::string& name,
                const std::vector<TreePtr>& args);

// File form: (prdef <name> <arity> (rec <argpos>) (clause <ctor> <expr>) ...)
// with expressions (child i) (arg j) (rec i e...) (call f e...) (if c t e),
// constructor applications, and digit atoms as numerals. A final clause for
// constructor _ fills every constructor not named explicitly.
PrimRecDef parse_prdef(const SExpr& e, const PrimRecEnv& scope);
PrimRecDef parse_prdef_text(const std::string& text, const PrimRecEnv& scope);
SExpr prdef_to_sx(const PrimRecDef& def, const TreeLang& lang);
std::string print_prdef(const PrimRecDef& def, const TreeLang& lang);

}  // namespace demod
