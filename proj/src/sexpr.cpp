#include "demod/sexpr.hpp"

#include <sstream>

namespace demod {

const SExpr& SExpr::at(size_t i) const {
  if (atom || i >= items.size()) fail_at(*this, "malformed form: missing element " + std::to_string(i));
  return items[i];
}

std::string SExpr::head() const {
  if (atom || items.empty() || !items[0].atom) return "";
  return items[0].text;
}

std::string SExpr::loc() const {
  return std::to_string(line) + ":" + std::to_string(col);
}

SExpr sx_atom(std::string s) {
  SExpr e;
  e.atom = true;
  e.text = std::move(s);
  return e;
}

SExpr sx_list(std::vector<SExpr> items) {
  SExpr e;
  e.items = std::move(items);
  return e;
}

void fail_at(const SExpr& e, const std::string& msg) {
  throw InputError(e.loc() + ": " + msg);
}

namespace {

struct Reader {
  const std::string& s;
  size_t i = 0;
  int line = 1, col = 1;

  explicit Reader(const std::string& src) : s(src) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  int peek() const { return i < s.size() ? static_cast<unsigned char>(s[i]) : -1; }

  void advance() {
    if (i >= s.size()) return;
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip_space() {
    for (;;) {
      int c = peek();
      if (c == ';') {
        while (peek() != -1 && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }

  static bool atom_char(int c) {
    return c > 32 && c < 127 && c != '(' && c != ')' && c != ';' && c != '"';
  }

  SExpr read() {
    skip_space();
    int c = peek();
    if (c == -1) fail("unexpected end of input");
    SExpr e;
    e.line = line;
    e.col = col;
    if (c == '(') {
      advance();
      for (;;) {
        skip_space();
        if (peek() == -1) fail("unclosed '('");
        if (peek() == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == ')') fail("unmatched ')'");
    if (!atom_char(c)) fail("unexpected character");
    e.atom = true;
    while (atom_char(peek())) {
      e.text.push_back(static_cast<char>(peek()));
      advance();
    }
    return e;
  }
};

void print_rec(const SExpr& e, std::ostream& out) {
  if (e.atom) {
    out << e.text;
    return;
  }
  out << '(';
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i) out << ' ';
    print_rec(e.items[i], out);
  }
  out << ')';
}

}  // namespace

SExpr parse_sexpr(const std::string& input) {
  Reader r(input);
  SExpr e = r.read();
  r.skip_space();
  if (r.peek() != -1) r.fail("trailing input after form");
  return e;
}

std::vector<SExpr> parse_sexprs(const std::string& input) {
  Reader r(input);
  std::vector<SExpr> out;
  for (;;) {
    r.skip_space();
    if (r.peek() == -1) return out;
    out.push_back(r.read());
  }
}

std::string print_sexpr(const SExpr& e) {
  std::ostringstream out;
  print_rec(e, out);
  return out.str();
}

}  // namespace demod
