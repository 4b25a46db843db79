#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demod/sexpr.hpp"

namespace demod {

// First-order trees over a global constructor registry, hash-consed so that
// structural equality is pointer equality and shared subtrees are stored once.
// Interned nodes live for the whole process; TreePtr is non-owning.
struct Tree {
  std::uint32_t ctor;
  std::vector<const Tree*> kids;
  std::size_t hash;
};
using TreePtr = const Tree*;

// Registers (name, arity) on first use and returns a stable id; a second
// registration of the same name with a different arity is an input error.
std::uint32_t tree_ctor_id(const std::string& name, std::size_t arity);
const std::string& tree_ctor_name(std::uint32_t id);
std::size_t tree_ctor_arity(std::uint32_t id);

// Interns a node; kids.size() must match the registered arity.
TreePtr mk_tree(std::uint32_t ctor, std::vector<TreePtr> kids);
TreePtr mk_tree(const std::string& name, std::vector<TreePtr> kids);

// A tree language: an ordered subset of constructors. Every language must
// contain the numeral constructors 0 (arity 0) and s (arity 1). Names
// consisting solely of digits are reserved for numeral sugar (except "0").
struct TreeLang {
  struct Ctor {
    std::string name;
    std::size_t arity;
    std::uint32_t id;
  };
  std::vector<Ctor> ctors;

  std::size_t add(const std::string& name, std::size_t arity);
  const Ctor* find(const std::string& name) const;
  // Position of a registered ctor id in this language, or npos when foreign.
  std::size_t position(std::uint32_t id) const;
  bool contains(std::uint32_t id) const { return position(id) != npos; }
  void validate() const;  // requires 0 and s

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::pair<std::uint32_t, std::size_t>> by_id_;  // sorted by id
};

// Numerals: nat_tree(3) = (s (s (s 0))); tree_nat returns -1 on non-numerals.
TreePtr nat_tree(std::uint64_t n);
long long tree_nat(TreePtr t);

// True when every constructor of t belongs to lang.
bool tree_in_lang(TreePtr t, const TreeLang& lang);

std::size_t tree_size(TreePtr t);    // node count, shared subtrees multiply
std::size_t tree_height(TreePtr t);

// S-expression syntax: (cons (s 0) nil), with all-digit atoms as numeral
// sugar both ways; nodes print as "3" whenever they are pure numerals.
TreePtr parse_tree(const SExpr& e, const TreeLang& lang);
TreePtr parse_tree_text(const std::string& text, const TreeLang& lang);
SExpr tree_to_sx(TreePtr t);
std::string print_tree(TreePtr t);

}  // namespace demod
