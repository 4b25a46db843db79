#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace demod {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input-side problems: unreadable syntax, unknown symbols, ill-sorted input.
struct InputError : Error {
  using Error::Error;
};

// A search or rewrite ran out of its configured budget.
struct BudgetError : Error {
  using Error::Error;
};

struct SExpr {
  // Atom when items is unused; list otherwise.
  bool atom = false;
  std::string text;
  std::vector<SExpr> items;
  int line = 0, col = 0;

  bool is_atom(const std::string& s) const { return atom && text == s; }
  const SExpr& at(size_t i) const;
  size_t size() const { return items.size(); }
  // Of a list whose head is an atom; "" when not.
  std::string head() const;
  std::string loc() const;
};

SExpr sx_atom(std::string s);
SExpr sx_list(std::vector<SExpr> items);

// Reads one s-expression; fails on trailing garbage.
SExpr parse_sexpr(const std::string& input);
// Reads a whole file of forms.
std::vector<SExpr> parse_sexprs(const std::string& input);

std::string print_sexpr(const SExpr& e);

[[noreturn]] void fail_at(const SExpr& e, const std::string& msg);

}  // namespace demod
