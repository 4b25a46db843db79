#pragma once

#include <functional>
#include <map>

#include "demod/proof.hpp"
#include "demod/reduction.hpp"
#include "demod/syntax.hpp"

namespace demod {

enum class Member { Yes, No, Unknown };
const char* member_name(Member m);

struct PmBounds {
  std::size_t sn_bound = 50;
  std::size_t term_bound = 3;   // term enumeration size in the forall clause
  std::size_t reach_cap = 2000; // reachable-set cap when scanning reducts
  // Approximates the inner quantifier of the implication clause; null means
  // no members are available to test against.
  const std::vector<ProofPtr>* corpus = nullptr;
};

struct PreModel;

// A three-valued membership oracle over proof-terms. Members must be
// strongly normalizable. Tags: sn (all strongly normalizable proofs),
// normal (normal forms only — deliberately not a candidate),
// empty-plus-vars (proof variables only — likewise defective), interp
// (membership in the denotation of a closed formula), custom
// (test-constructed).
struct Candidate {
  std::string tag;
  FormulaPtr formula;                              // interp
  std::function<Member(const ProofPtr&)> custom;   // custom
};

Member candidate_member(const Candidate& c, const PreModel& m, const ProofPtr& pi,
                        const PmBounds& b);

// Finite many-valued model: carriers are element names, functions are total
// tuple maps, predicate values are candidates per tuple.
struct PreModel {
  const Theory* theory = nullptr;
  std::vector<std::pair<Name, std::vector<Name>>> carriers;
  std::vector<std::pair<Name, std::map<std::vector<Name>, Name>>> funs;
  std::vector<std::pair<Name, std::map<std::vector<Name>, Candidate>>> preds;

  const std::vector<Name>& carrier(const Name& sort) const;
  Name app(const Name& fn, const std::vector<Name>& args) const;
  const Candidate& pred(const Name& p, const std::vector<Name>& args) const;
  void validate() const;  // nonempty carriers, total maps over them
};

using Assignment = std::vector<std::pair<Name, Name>>;  // variable -> element

// Value of a term under an assignment.
Name eval_term_m(const PreModel& m, const TermPtr& t, const Assignment& phi);

// Membership of pi in the denotation of A under phi: strong normalization
// plus, for every reachable introduction of the connective's shape, the
// clause's condition. The forall clause quantifies the substituted term and
// the assignment element independently, exactly as stated; terms are
// enumerated well-sorted and closed up to term_bound. The implication
// clause's inner quantifier runs over corpus members of the antecedent and
// reports Unknown when an introduction was reachable (the approximation is
// then load-bearing).
Member interp_membership(const PreModel& m, const FormulaPtr& a, const Assignment& phi,
                         const ProofPtr& pi, const PmBounds& b);

// Per-axiom reports for the four reducibility-candidate conditions.
struct AxiomReport {
  struct Row {
    std::string axiom;  // sn | variables | reduction-closed | eliminations
    bool passed = true;
    std::vector<ProofPtr> counterexamples;
    std::size_t unknown = 0;
  };
  std::vector<Row> rows;
  bool all_passed() const;
};

AxiomReport check_candidate_axioms(const Candidate& c, const PreModel& m,
                                   const std::vector<ProofPtr>& corpus,
                                   const PmBounds& b);

// Agreement of lhs/rhs denotations for every rewrite rule, instantiated over
// carrier assignments of the rule's variables; term rules are lifted through
// one-slot atomic predicate contexts.
struct CongruenceReport {
  struct Case {
    std::size_t rule = 0;
    std::string detail;
    ProofPtr pi;
    Member lhs = Member::Unknown, rhs = Member::Unknown;
  };
  std::vector<Case> disagreements;
  std::size_t unknown = 0;
  std::size_t checked = 0;
  bool passed() const { return disagreements.empty(); }
};

CongruenceReport check_premodel_congruence(const PreModel& m,
                                           const std::vector<RewriteRule>& rules,
                                           const std::vector<ProofPtr>& corpus,
                                           const PmBounds& b);

// File form:
//   (premodel (carrier <sort> (<elem> ...)) ...
//              (fun <f> ((<elems>) <elem>) ...)
//              (pred <p> ((<elems>) <tag>) ...))
// with tags sn, normal, empty-plus-vars, or (interp <formula>).
PreModel parse_premodel(const SExpr& e, const Theory& th);
PreModel parse_premodel_text(const std::string& text, const Theory& th);

}  // namespace demod
