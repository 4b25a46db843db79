#pragma once

#include "demod/syntax.hpp"

namespace demod {

struct ProofTerm;
using ProofPtr = std::shared_ptr<const ProofTerm>;

// The fifteen proof-term formers. Binders carry no formula annotations; term
// binders (TLam/ExElim) may carry an optional sort annotation that printing
// round-trips and encoding preserves.
struct PAxiom { Name name; };
struct PLam { Name hyp; ProofPtr body; };
struct PApp { ProofPtr fn, arg; };
struct PPair { ProofPtr fst, snd; };
struct PFst { ProofPtr p; };
struct PSnd { ProofPtr p; };
struct PInl { ProofPtr p; };
struct PInr { ProofPtr p; };
struct PCase { ProofPtr scrut; Name lhyp; ProofPtr lbody; Name rhyp; ProofPtr rbody; };
struct PTopI {};
struct PBotE { ProofPtr p; };
struct PTLam { Name var; std::optional<Name> sort; ProofPtr body; };
struct PTApp { ProofPtr fn; TermPtr arg; };
struct PWit { TermPtr witness; ProofPtr body; };
struct PExElim { ProofPtr scrut; Name var; std::optional<Name> sort; Name hyp; ProofPtr body; };

using ProofVariant = std::variant<PAxiom, PLam, PApp, PPair, PFst, PSnd, PInl, PInr, PCase,
                                  PTopI, PBotE, PTLam, PTApp, PWit, PExElim>;

struct ProofTerm : ProofVariant {
  using ProofVariant::variant;
};

ProofPtr mk_proof(ProofTerm p);

template <class T>
const T* proof_as(const ProofPtr& p) {
  return std::get_if<T>(static_cast<const ProofVariant*>(p.get()));
}

bool proof_equal(const ProofPtr& a, const ProofPtr& b);
bool proof_alpha_equal(const ProofPtr& a, const ProofPtr& b);
// Canonical key: printed form with binders replaced by their de Bruijn level;
// equal keys iff alpha-equal proofs.
std::string proof_canon_key(const ProofPtr& p);
std::size_t proof_size(const ProofPtr& p);

std::vector<Name> free_proof_vars(const ProofPtr& p);
std::vector<Name> free_term_vars(const ProofPtr& p);
bool occurs_free_pvar(const ProofPtr& p, const Name& a);
bool occurs_free_tvar(const ProofPtr& p, const Name& x);

// Shortlex maximum over every proof-variable (resp. term-variable) name
// occurring anywhere in the proof, binders included. Freshness is the
// shortlex successor of these maxima.
std::optional<Name> max_pvar_name(const ProofPtr& p);
std::optional<Name> max_tvar_name(const ProofPtr& p);

using PEnv = std::vector<std::pair<Name, ProofPtr>>;

// One-pass environment substitution: applies the proof environment and the
// term environment simultaneously. Binders shadow by dropping their key; a
// binder occurring anywhere in a surviving environment value is renamed to
// the successor of the shortlex max over body, environment values and binder.
ProofPtr usubst(const ProofPtr& p, const PEnv& penv, const TermSubst& tenv);
ProofPtr subst_proof(const ProofPtr& p, const Name& a, const ProofPtr& r);
ProofPtr subst_term_in_proof(const ProofPtr& p, const Name& x, const TermPtr& t);

ProofPtr parse_proof_term(const SExpr& e, const Signature& sig);
ProofPtr parse_proof_term(const std::string& text, const Signature& sig);
std::string print_proof(const ProofPtr& p);
SExpr proof_to_sx(const ProofPtr& p);

// Proof file: (proof (context (a A) ...) (goal A) (term p)).
struct ProofFile {
  Sequent seq;
  ProofPtr term;
};
ProofFile parse_proof_file(const std::string& text, const Signature& sig);
std::string print_proof_file(const ProofFile& pf);

}  // namespace demod
