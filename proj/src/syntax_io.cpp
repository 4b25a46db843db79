#include "demod/syntax_io.hpp"

#include <set>
#include <sstream>

namespace demod {

namespace {

const std::set<std::string> kReservedHeads = {"top", "bot",    "and",   "or",
                                              "imp", "not",    "forall", "exists"};

[[noreturn]] void bad(const SExpr& e, const std::string& msg) { fail_at(e, msg); }

std::optional<Name> lookup_bound(const SortCtx& ctx, const Name& n) {
  for (auto it = ctx.bound.rbegin(); it != ctx.bound.rend(); ++it)
    if (it->first == n) return it->second;
  return std::nullopt;
}

void check_expected(const SExpr& e, const Name& got, const std::optional<Name>& expected) {
  if (expected && *expected != got)
    bad(e, "sort mismatch: expected " + *expected + ", got " + got);
}

}  // namespace

TermPtr parse_term_sx(const SExpr& e, SortCtx& ctx, const std::optional<Name>& expected) {
  const Signature& sig = *ctx.sig;
  if (e.atom) {
    const Name& n = e.text;
    if (auto s = lookup_bound(ctx, n)) {
      check_expected(e, *s, expected);
      return mk_var(n, *s);
    }
    if (const FunRank* f = sig.function(n)) {
      if (!f->args.empty())
        bad(e, "function " + n + " expects " + std::to_string(f->args.size()) + " arguments");
      check_expected(e, f->result, expected);
      return mk_app(n, {});
    }
    // Free variable: infer its sort from the first sorted position.
    auto it = ctx.free.find(n);
    if (it != ctx.free.end()) {
      check_expected(e, it->second, expected);
      return mk_var(n, it->second);
    }
    if (!expected) bad(e, "cannot infer sort of variable " + n);
    ctx.free.emplace(n, *expected);
    return mk_var(n, *expected);
  }
  if (e.items.empty()) bad(e, "empty term");
  const SExpr& h = e.at(0);
  if (!h.atom) bad(e, "term head must be a function symbol");
  const FunRank* f = sig.function(h.text);
  if (!f) bad(h, "unknown function symbol " + h.text);
  if (e.size() != f->args.size() + 1)
    bad(e, "function " + h.text + " expects " + std::to_string(f->args.size()) +
               " arguments, got " + std::to_string(e.size() - 1));
  std::vector<TermPtr> args;
  for (std::size_t i = 0; i < f->args.size(); ++i)
    args.push_back(parse_term_sx(e.at(i + 1), ctx, f->args[i]));
  check_expected(e, f->result, expected);
  return mk_app(h.text, std::move(args));
}

FormulaPtr parse_formula_sx(const SExpr& e, SortCtx& ctx) {
  const Signature& sig = *ctx.sig;
  if (e.atom) {
    if (e.text == "top") return mk_top();
    if (e.text == "bot") return mk_bot();
    if (const std::vector<Name>* p = sig.predicate(e.text)) {
      if (!p->empty())
        bad(e, "predicate " + e.text + " expects " + std::to_string(p->size()) + " arguments");
      return mk_atom(e.text, {});
    }
    bad(e, "unknown formula atom " + e.text);
  }
  if (e.items.empty()) bad(e, "empty formula");
  const SExpr& h = e.at(0);
  if (!h.atom) bad(e, "formula head must be a symbol");
  const std::string& hd = h.text;
  auto sub = [&](std::size_t i) { return parse_formula_sx(e.at(i), ctx); };
  auto want = [&](std::size_t n, const char* what) {
    if (e.size() != n) bad(e, std::string(what) + " takes " + std::to_string(n - 1) + " arguments");
  };
  if (hd == "and") { want(3, "and"); auto a = sub(1); return mk_and(a, sub(2)); }
  if (hd == "or") { want(3, "or"); auto a = sub(1); return mk_or(a, sub(2)); }
  if (hd == "imp") { want(3, "imp"); auto a = sub(1); return mk_imp(a, sub(2)); }
  if (hd == "not") { want(2, "not"); return mk_not(sub(1)); }
  if (hd == "top") bad(e, "top takes no arguments");
  if (hd == "bot") bad(e, "bot takes no arguments");
  if (hd == "forall" || hd == "exists") {
    want(3, hd.c_str());
    const SExpr& b = e.at(1);
    if (b.atom || b.size() != 2 || !b.at(0).atom || !b.at(1).atom)
      bad(b, hd + " binder must be (x sort)");
    Name v = b.at(0).text, s = b.at(1).text;
    if (!sig.has_sort(s)) bad(b.at(1), "unknown sort " + s);
    ctx.bound.emplace_back(v, s);
    FormulaPtr body = sub(2);
    ctx.bound.pop_back();
    return hd == "forall" ? mk_forall(v, s, body) : mk_exists(v, s, body);
  }
  if (kReservedHeads.count(hd)) bad(h, "malformed " + hd);
  const std::vector<Name>* p = sig.predicate(hd);
  if (!p) bad(h, "unknown predicate " + hd);
  if (e.size() != p->size() + 1)
    bad(e, "predicate " + hd + " expects " + std::to_string(p->size()) + " arguments, got " +
               std::to_string(e.size() - 1));
  std::vector<TermPtr> args;
  for (std::size_t i = 0; i < p->size(); ++i)
    args.push_back(parse_term_sx(e.at(i + 1), ctx, (*p)[i]));
  return mk_atom(hd, std::move(args));
}

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  SExpr e = parse_sexpr(text);
  SortCtx ctx;
  ctx.sig = &sig;
  return parse_formula_sx(e, ctx);
}

TermPtr parse_term(const std::string& text, const Signature& sig,
                   const std::optional<Name>& expected) {
  SExpr e = parse_sexpr(text);
  SortCtx ctx;
  ctx.sig = &sig;
  return parse_term_sx(e, ctx, expected);
}

namespace {

void parse_decl(Theory& th, const SExpr& e) {
  if (e.atom || e.items.empty() || !e.at(0).atom) bad(e, "expected a theory declaration");
  const std::string& hd = e.at(0).text;
  if (hd == "sort") {
    if (e.size() != 2 || !e.at(1).atom) bad(e, "sort declaration must be (sort s)");
    if (th.sig.has_sort(e.at(1).text)) bad(e.at(1), "duplicate sort " + e.at(1).text);
    th.sig.add_sort(e.at(1).text);
    return;
  }
  if (hd == "fun") {
    if (e.size() != 4 || !e.at(1).atom || e.at(2).atom || !e.at(3).atom)
      bad(e, "function declaration must be (fun f (sorts...) sort)");
    FunRank rank;
    for (const SExpr& a : e.at(2).items) {
      if (!a.atom || !th.sig.has_sort(a.text)) bad(a, "unknown sort in argument list");
      rank.args.push_back(a.text);
    }
    if (!th.sig.has_sort(e.at(3).text)) bad(e.at(3), "unknown result sort " + e.at(3).text);
    rank.result = e.at(3).text;
    if (th.sig.function(e.at(1).text)) bad(e.at(1), "duplicate function " + e.at(1).text);
    th.sig.add_function(e.at(1).text, std::move(rank));
    return;
  }
  if (hd == "pred") {
    if (e.size() != 3 || !e.at(1).atom || e.at(2).atom)
      bad(e, "predicate declaration must be (pred p (sorts...))");
    if (kReservedHeads.count(e.at(1).text))
      bad(e.at(1), "predicate name " + e.at(1).text + " is reserved");
    std::vector<Name> sorts;
    for (const SExpr& a : e.at(2).items) {
      if (!a.atom || !th.sig.has_sort(a.text)) bad(a, "unknown sort in argument list");
      sorts.push_back(a.text);
    }
    if (th.sig.predicate(e.at(1).text)) bad(e.at(1), "duplicate predicate " + e.at(1).text);
    th.sig.add_predicate(e.at(1).text, std::move(sorts));
    return;
  }
  if (hd == "rule") {
    if (e.size() != 4 || !e.at(1).atom)
      bad(e, "rule must be (rule term lhs rhs) or (rule prop lhs rhs)");
    RewriteRule r;
    SortCtx ctx;
    ctx.sig = &th.sig;
    if (e.at(1).text == "term") {
      r.term_level = true;
      r.lhs_t = parse_term_sx(e.at(2), ctx, std::nullopt);
      r.rhs_t = parse_term_sx(e.at(3), ctx, sort_of(r.lhs_t, th.sig));
    } else if (e.at(1).text == "prop") {
      r.term_level = false;
      r.lhs_p = parse_formula_sx(e.at(2), ctx);
      r.rhs_p = parse_formula_sx(e.at(3), ctx);
    } else {
      bad(e.at(1), "rule kind must be term or prop");
    }
    th.rules.push_back(std::move(r));
    return;
  }
  if (hd == "axiom") {
    if (e.size() != 2) bad(e, "axiom must be (axiom A)");
    SortCtx ctx;
    ctx.sig = &th.sig;
    th.axioms.push_back(parse_formula_sx(e.at(1), ctx));
    return;
  }
  bad(e.at(0), "unknown theory item " + hd);
}

}  // namespace

Theory parse_theory_sx(const std::vector<SExpr>& forms) {
  if (forms.size() != 1) throw InputError("theory file must contain a single (theory ...) form");
  const SExpr& e = forms[0];
  if (e.atom || e.items.empty() || !e.at(0).atom || e.at(0).text != "theory")
    throw InputError("theory file must contain a single (theory ...) form");
  Theory th;
  for (std::size_t i = 1; i < e.size(); ++i) parse_decl(th, e.at(i));
  th.validate();
  return th;
}

Theory parse_theory(const std::string& text) { return parse_theory_sx(parse_sexprs(text)); }

SExpr term_to_sx(const TermPtr& t) {
  if (const Term::Var* v = as_var(t)) return sx_atom(v->name);
  const Term::App& a = *as_app(t);
  if (a.args.empty()) return sx_atom(a.fn);
  std::vector<SExpr> items{sx_atom(a.fn)};
  for (const TermPtr& arg : a.args) items.push_back(term_to_sx(arg));
  return sx_list(std::move(items));
}

SExpr formula_to_sx(const FormulaPtr& f) {
  return std::visit(
      overloaded{
          [](const Formula::Atom& a) {
            std::vector<SExpr> items{sx_atom(a.pred)};
            for (const TermPtr& t : a.args) items.push_back(term_to_sx(t));
            return sx_list(std::move(items));
          },
          [](const Formula::Top&) { return sx_atom("top"); },
          [](const Formula::Bot&) { return sx_atom("bot"); },
          [](const Formula::And& x) {
            return sx_list({sx_atom("and"), formula_to_sx(x.l), formula_to_sx(x.r)});
          },
          [](const Formula::Or& x) {
            return sx_list({sx_atom("or"), formula_to_sx(x.l), formula_to_sx(x.r)});
          },
          [](const Formula::Imp& x) {
            return sx_list({sx_atom("imp"), formula_to_sx(x.l), formula_to_sx(x.r)});
          },
          [](const Formula::Forall& x) {
            return sx_list({sx_atom("forall"), sx_list({sx_atom(x.var), sx_atom(x.sort)}),
                            formula_to_sx(x.body)});
          },
          [](const Formula::Exists& x) {
            return sx_list({sx_atom("exists"), sx_list({sx_atom(x.var), sx_atom(x.sort)}),
                            formula_to_sx(x.body)});
          },
      },
      f->node);
}

std::string print_term(const TermPtr& t) { return print_sexpr(term_to_sx(t)); }
std::string print_formula(const FormulaPtr& f) { return print_sexpr(formula_to_sx(f)); }

std::string print_theory(const Theory& th) {
  std::ostringstream os;
  os << "(theory\n";
  for (const Name& s : th.sig.sorts) os << "  (sort " << s << ")\n";
  for (const auto& [name, rank] : th.sig.functions) {
    os << "  (fun " << name << " (";
    for (std::size_t i = 0; i < rank.args.size(); ++i) os << (i ? " " : "") << rank.args[i];
    os << ") " << rank.result << ")\n";
  }
  for (const auto& [name, sorts] : th.sig.predicates) {
    os << "  (pred " << name << " (";
    for (std::size_t i = 0; i < sorts.size(); ++i) os << (i ? " " : "") << sorts[i];
    os << "))\n";
  }
  for (const RewriteRule& r : th.rules) {
    if (r.term_level)
      os << "  (rule term " << print_term(r.lhs_t) << " " << print_term(r.rhs_t) << ")\n";
    else
      os << "  (rule prop " << print_formula(r.lhs_p) << " " << print_formula(r.rhs_p) << ")\n";
  }
  for (const FormulaPtr& a : th.axioms) os << "  (axiom " << print_formula(a) << ")\n";
  os << ")\n";
  return os.str();
}

}  // namespace demod
