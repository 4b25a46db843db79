#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace demod {

// Identifiers are nonempty strings of printable ASCII minus delimiters.
// They are ordered shortlex with lowercase first, and that order is realized
// by a bijective base-90 numeration: index("a") = 1, ..., index("z") = 26,
// uppercase, digits, then the remaining symbols. The numeration is what the
// tree encoding uses for variable indices, so "1 + max index" freshness can
// be computed on names as successor-of-shortlex-maximum.

bool is_ident_char(char c);
bool is_ident(const std::string& s);

// 1-based position of c in the identifier alphabet; 0 when not an identifier char.
int ident_ord(char c);
char ident_chr(int ord);  // inverse, ord in 1..90

constexpr int kIdentBase = 90;

bool shortlex_less(const std::string& a, const std::string& b);

// Successor in the numeration: succ("a") = "b", succ("z") = "A", succ("~") = "aa".
std::string succ_name(const std::string& s);

// Bijective base-90 value; nullopt when it would not fit in uint64 or s is
// not an identifier.
std::optional<std::uint64_t> name_index(const std::string& s);
std::string index_name(std::uint64_t n);  // n >= 1

// max{} of names under shortlex, where "absent" is the minimum.
const std::optional<std::string>& name_max(const std::optional<std::string>& a,
                                           const std::optional<std::string>& b);

}  // namespace demod
