#pragma once

#include <map>

#include "demod/syntax.hpp"

namespace demod {

// Sort context used while elaborating parsed terms: binder scopes plus an
// inference table for free variables (a free variable takes the sort of its
// first sorted position; later occurrences must agree).
struct SortCtx {
  const Signature* sig = nullptr;
  std::vector<std::pair<Name, Name>> bound;
  std::map<Name, Name> free;
};

TermPtr parse_term_sx(const SExpr& e, SortCtx& ctx, const std::optional<Name>& expected);
FormulaPtr parse_formula_sx(const SExpr& e, SortCtx& ctx);

FormulaPtr parse_formula(const std::string& text, const Signature& sig);
TermPtr parse_term(const std::string& text, const Signature& sig,
                   const std::optional<Name>& expected = std::nullopt);

Theory parse_theory(const std::string& text);
Theory parse_theory_sx(const std::vector<SExpr>& forms);

std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);
std::string print_theory(const Theory& th);
SExpr term_to_sx(const TermPtr& t);
SExpr formula_to_sx(const FormulaPtr& f);

}  // namespace demod
