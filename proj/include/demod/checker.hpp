#pragma once

#include "demod/proof.hpp"
#include "demod/rewriting.hpp"

namespace demod {

// Rejection: rule mismatch, scope violation or eigenvariable violation. The
// message names the offending proof node and the expected/actual formulas.
struct CheckError : Error {
  using Error::Error;
};

struct Derivation {
  std::string rule;
  std::vector<std::pair<Name, FormulaPtr>> hyps;
  FormulaPtr shown;
  std::vector<Derivation> premises;
};

// Natural deduction modulo: every shape match is performed on rewrite-normal
// forms and every leaf comparison is congruence modulo the theory's rules.
// Returns the derivation; throws CheckError on rejection.
Derivation check_proof(const Theory& th, const Sequent& seq, const ProofPtr& p,
                       std::size_t fuel = kDefaultFuel);

std::string print_derivation(const Derivation& d);

}  // namespace demod
