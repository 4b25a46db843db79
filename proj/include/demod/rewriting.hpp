#pragma once

#include "demod/syntax.hpp"

namespace demod {

// First-order matching of a rule pattern against a subject; nonlinear
// patterns require equal subjects. Extends `binding`, returns false (leaving
// the binding partially extended) on mismatch.
bool match_term(const TermPtr& pattern, const TermPtr& subject, TermSubst& binding);

// Exhaustive innermost rewriting, deterministic via declaration order. Each
// rule firing consumes one unit of fuel; exhaustion throws BudgetError.
TermPtr normalize_term(const TermPtr& t, const std::vector<RewriteRule>& rules,
                       std::size_t fuel);
FormulaPtr normalize_formula(const FormulaPtr& f, const std::vector<RewriteRule>& rules,
                             std::size_t fuel);

// Identical normal forms up to bound-variable renaming.
bool congruent(const FormulaPtr& a, const FormulaPtr& b, const std::vector<RewriteRule>& rules,
               std::size_t fuel);
bool congruent_terms(const TermPtr& a, const TermPtr& b, const std::vector<RewriteRule>& rules,
                     std::size_t fuel);

inline constexpr std::size_t kDefaultFuel = 10000;

}  // namespace demod
