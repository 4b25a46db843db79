#include "demod/names.hpp"

#include <array>

namespace demod {

namespace {

std::array<int, 128> build_ord() {
  std::array<int, 128> t{};
  int next = 1;
  for (char c = 'a'; c <= 'z'; ++c) t[c] = next++;
  for (char c = 'A'; c <= 'Z'; ++c) t[c] = next++;
  for (char c = '0'; c <= '9'; ++c) t[c] = next++;
  for (int c = 33; c < 127; ++c) {
    if (c == '(' || c == ')' || c == ';' || c == '"') continue;
    if (t[c] == 0) t[c] = next++;
  }
  return t;
}

std::array<char, 91> build_chr(const std::array<int, 128>& ord) {
  std::array<char, 91> t{};
  for (int c = 33; c < 127; ++c)
    if (ord[c]) t[ord[c]] = static_cast<char>(c);
  return t;
}

const std::array<int, 128> kOrd = build_ord();
const std::array<char, 91> kChr = build_chr(kOrd);

}  // namespace

bool is_ident_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && kOrd[u] != 0;
}

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

int ident_ord(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 ? kOrd[u] : 0;
}

char ident_chr(int ord) { return (ord >= 1 && ord <= kIdentBase) ? kChr[ord] : '?'; }

bool shortlex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (ident_ord(a[i]) != ident_ord(b[i])) return ident_ord(a[i]) < ident_ord(b[i]);
  return false;
}

std::string succ_name(const std::string& s) {
  std::string r = s;
  int i = static_cast<int>(r.size()) - 1;
  for (; i >= 0; --i) {
    int o = ident_ord(r[i]);
    if (o < kIdentBase) {
      r[i] = ident_chr(o + 1);
      return r;
    }
    r[i] = ident_chr(1);
  }
  return ident_chr(1) + r;
}

std::optional<std::uint64_t> name_index(const std::string& s) {
  if (!is_ident(s)) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (v > (UINT64_MAX - 90) / 90) return std::nullopt;
    v = v * kIdentBase + static_cast<std::uint64_t>(ident_ord(c));
  }
  return v;
}

std::string index_name(std::uint64_t n) {
  std::string out;
  while (n > 0) {
    std::uint64_t d = n % kIdentBase;
    if (d == 0) d = kIdentBase;
    out.insert(out.begin(), ident_chr(static_cast<int>(d)));
    n = (n - d) / kIdentBase;
  }
  return out;
}

const std::optional<std::string>& name_max(const std::optional<std::string>& a,
                                           const std::optional<std::string>& b) {
  if (!a) return b;
  if (!b) return a;
  return shortlex_less(*a, *b) ? b : a;
}

}  // namespace demod
