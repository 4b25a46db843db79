#pragma once

#include "demod/proof.hpp"

namespace demod {

// One reduction step: `target` is `source` with the tagged rule fired at
// `path`. Paths index proof-term children only (terms embedded in tapp/wit
// contain no redexes): app/pair 0,1; case 0=scrutinee,1,2=branches;
// exelim 0=scrutinee,1=body; unary formers and binder bodies are child 0.
struct ReductionStep {
  ProofPtr source;
  ProofPtr target;
  std::string rule;  // beta | fst | snd | case-inl | case-inr | tbeta | unpack
  std::vector<int> path;
};

// Fires the applicable rule at the root, if any.
std::optional<std::pair<std::string, ProofPtr>> root_reduct(const ProofPtr& p);

// All one-step reducts, root redex first, then children left to right.
std::vector<ReductionStep> step(const ProofPtr& p);
bool is_normal(const ProofPtr& p);

// Terms reachable in exactly n steps, deduplicated syntactically.
std::vector<ProofPtr> redn(const ProofPtr& p, std::size_t n);

struct SnVerdict {
  enum class Status { StronglyNormalizing, CycleFound, BoundExceeded };
  Status status = Status::StronglyNormalizing;
  std::size_t longest = 0;      // StronglyNormalizing: longest reduction path
  std::vector<ProofPtr> cycle;  // CycleFound: segment from first repeat to its recurrence
  std::size_t bound = 0;        // BoundExceeded: the exhausted bound
};

// Exhaustive reduction-graph search, memoized up to alpha. Cycles are
// detected per path; a reducible term at depth `bound` exhausts the bound.
SnVerdict sn_check(const ProofPtr& p, std::size_t bound);

// Leftmost-outermost reduction for at most `fuel` steps; second component
// tells whether a normal form was reached.
std::pair<std::vector<ReductionStep>, bool> reduce_trace(const ProofPtr& p, std::size_t fuel);

}  // namespace demod
