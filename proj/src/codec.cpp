#include "demod/codec.hpp"

#include <functional>

#include "demod/names.hpp"

namespace demod {

namespace {

struct FixedCtor {
  const char* name;
  std::size_t arity;
};

// Language order is fixed; fn.<f> constructors follow in declaration order.
constexpr FixedCtor kFixed[] = {
    {"0", 0},     {"s", 1},     {"nil", 0},     {"cons", 2},    {"Sortc", 1},
    {"TVar", 2},  {"Axiom", 1}, {"ImpI", 2},    {"ImpE", 2},    {"AndI", 2},
    {"AndE1", 1}, {"AndE2", 1}, {"OrI1", 1},    {"OrI2", 1},    {"OrE", 5},
    {"TopI", 0},  {"BotE", 1},  {"ForallI", 2}, {"ForallE", 2}, {"ExistsI", 2},
    {"ExistsE", 4}};

std::uint64_t index_of_name(const Name& n) {
  auto idx = name_index(n);
  if (!idx) throw InputError("name '" + n + "' is too long to index");
  return *idx;
}

using E = PrExprPtr;

std::string mapc_name(const std::string& ctor, std::size_t i) {
  return "mapc." + ctor + "." + std::to_string(i);
}

// Generates the builtin definitions in dependency order.
struct Builder {
  PrimRecEnv& env;
  const TreeLang& lang;
  const Signature& sig;
  E L0 = pr_lit(nat_tree(0));
  E L1 = pr_lit(nat_tree(1));
  E LNIL = pr_lit(tree_nil());

  E is(const std::string& c, E x) { return pr_call("is." + c, {std::move(x)}); }
  E acc(std::size_t i, E x) { return pr_call("c" + std::to_string(i), {std::move(x)}); }
  E eqt(E a, E b) { return pr_call("eqt", {std::move(a), std::move(b)}); }
  E band(E a, E b) { return pr_call("and2", {std::move(a), std::move(b)}); }
  E bor(E a, E b) { return pr_call("or2", {std::move(a), std::move(b)}); }
  E max2(E a, E b) { return pr_call("max2", {std::move(a), std::move(b)}); }
  E cons_e(E h, E t) { return pr_make("cons", {std::move(h), std::move(t)}); }

  E fold(const std::string& fn, std::vector<E> es, E empty) {
    if (es.empty()) return empty;
    E r = es.back();
    for (std::size_t i = es.size() - 1; i-- > 0;) r = pr_call(fn, {es[i], r});
    return r;
  }
  E and_fold(std::vector<E> es) { return fold("and2", std::move(es), L1); }
  E or_fold(std::vector<E> es) { return fold("or2", std::move(es), L0); }
  E max_fold(std::vector<E> es) { return fold("max2", std::move(es), L0); }
  E append_fold(std::vector<E> es) { return fold("append", std::move(es), LNIL); }

  E reassemble(const TreeLang::Ctor& c) {
    std::vector<E> ks;
    for (std::size_t i = 0; i < c.arity; ++i) ks.push_back(pr_child(i));
    return pr_make(c.name, std::move(ks));
  }

  E sortc_lit(const Name& s) {
    return pr_lit(mk_tree("Sortc", {nat_tree(index_of_name(s))}));
  }

  void def(std::string name, std::size_t arity, std::size_t rec_pos,
           const std::function<E(const TreeLang::Ctor&)>& clause) {
    PrimRecDef d;
    d.name = std::move(name);
    d.arity = arity;
    d.rec_pos = rec_pos;
    for (const auto& c : lang.ctors) d.clauses.push_back(clause(c));
    env.add(std::move(d));
  }

  void build();
  E usubst_clause(const TreeLang::Ctor& c);
  E reducts_root(const TreeLang::Ctor& c);
  E reducts_closure(const TreeLang::Ctor& c);
};

E Builder::usubst_clause(const TreeLang::Ctor& c) {
  const std::string& n = c.name;
  E penv = pr_arg(1);
  E tenv = pr_arg(2);
  if (n == "Axiom") {
    return pr_call("lookupd", {penv, pr_child(0), pr_make("Axiom", {pr_child(0)})});
  }
  if (n == "TVar") {
    return pr_call("lookupd",
                   {tenv, pr_child(0), pr_make("TVar", {pr_child(0), pr_child(1)})});
  }
  if (n == "ImpI") {
    E bi = acc(0, pr_child(0));
    E pe1 = pr_call("edrop", {penv, bi});
    E cap = pr_call("hasAx", {pe1, bi});
    E fresh = pr_make(
        "s", {max2(pr_call("maxp", {pr_child(1)}), max2(pr_call("maxp", {pe1}), bi))});
    E fresh_ax = pr_make("Axiom", {fresh});
    E renamed = pr_make(
        "ImpI", {fresh_ax, pr_rec(1, {cons_e(cons_e(bi, fresh_ax), pe1), tenv})});
    E plain = pr_make("ImpI", {pr_child(0), pr_rec(1, {pe1, tenv})});
    return pr_if(cap, renamed, plain);
  }
  if (n == "OrE") {
    auto branch = [&](std::size_t bpos, std::size_t bodypos) -> std::pair<E, E> {
      E bi = acc(0, pr_child(bpos));
      E pe1 = pr_call("edrop", {penv, bi});
      E cap = pr_call("hasAx", {pe1, bi});
      E fresh = pr_make("s", {max2(pr_call("maxp", {pr_child(bodypos)}),
                                   max2(pr_call("maxp", {pe1}), bi))});
      E fresh_ax = pr_make("Axiom", {fresh});
      E slot = pr_if(cap, fresh_ax, pr_child(bpos));
      E body = pr_if(cap, pr_rec(bodypos, {cons_e(cons_e(bi, fresh_ax), pe1), tenv}),
                     pr_rec(bodypos, {pe1, tenv}));
      return {slot, body};
    };
    auto [s1, b1] = branch(1, 2);
    auto [s2, b2] = branch(3, 4);
    return pr_make("OrE", {pr_rec(0, {penv, tenv}), s1, b1, s2, b2});
  }
  if (n == "ForallI") {
    E iv = acc(0, pr_child(0));
    E te1 = pr_call("edrop", {tenv, iv});
    E cap = bor(pr_call("hasTV", {te1, iv}), pr_call("hasTV", {penv, iv}));
    E fresh = pr_make(
        "s", {max2(pr_call("maxt", {pr_child(1)}),
                   max2(pr_call("maxt", {te1}), max2(pr_call("maxt", {penv}), iv)))});
    E newv = pr_make("TVar", {fresh, acc(1, pr_child(0))});
    E renamed =
        pr_make("ForallI", {newv, pr_rec(1, {penv, cons_e(cons_e(iv, newv), te1)})});
    E plain = pr_make("ForallI", {pr_child(0), pr_rec(1, {penv, te1})});
    return pr_if(cap, renamed, plain);
  }
  if (n == "ExistsE") {
    E iv = acc(0, pr_child(1));
    E ia = acc(0, pr_child(2));
    E te1 = pr_call("edrop", {tenv, iv});
    E pe1 = pr_call("edrop", {penv, ia});
    E capx = bor(pr_call("hasTV", {te1, iv}), pr_call("hasTV", {pe1, iv}));
    E capa = pr_call("hasAx", {pe1, ia});
    E frx = pr_make(
        "s", {max2(pr_call("maxt", {pr_child(3)}),
                   max2(pr_call("maxt", {te1}), max2(pr_call("maxt", {pe1}), iv)))});
    E fra = pr_make(
        "s", {max2(pr_call("maxp", {pr_child(3)}), max2(pr_call("maxp", {pe1}), ia))});
    E newv = pr_make("TVar", {frx, acc(1, pr_child(1))});
    E newa = pr_make("Axiom", {fra});
    E te2 = pr_if(capx, cons_e(cons_e(iv, newv), te1), te1);
    E pe2 = pr_if(capa, cons_e(cons_e(ia, newa), pe1), pe1);
    return pr_make("ExistsE", {pr_rec(0, {penv, tenv}), pr_if(capx, newv, pr_child(1)),
                               pr_if(capa, newa, pr_child(2)), pr_rec(3, {pe2, te2})});
  }
  std::vector<E> ks;
  for (std::size_t i = 0; i < c.arity; ++i) ks.push_back(pr_rec(i, {penv, tenv}));
  return pr_make(c.name, std::move(ks));
}

// Root redexes, one per elimination former; nullptr when the root never fires.
E Builder::reducts_root(const TreeLang::Ctor& c) {
  const std::string& n = c.name;
  auto single = [&](E t) { return cons_e(std::move(t), LNIL); };
  auto pair_env = [&](E key, E val) { return cons_e(cons_e(std::move(key), std::move(val)), LNIL); };
  if (n == "ImpE") {
    E body = acc(1, pr_child(0));
    E key = acc(0, acc(0, pr_child(0)));
    return pr_if(is("ImpI", pr_child(0)),
                 single(pr_call("usubst", {body, pair_env(key, pr_child(1)), LNIL})),
                 LNIL);
  }
  if (n == "AndE1") {
    return pr_if(is("AndI", pr_child(0)), single(acc(0, pr_child(0))), LNIL);
  }
  if (n == "AndE2") {
    return pr_if(is("AndI", pr_child(0)), single(acc(1, pr_child(0))), LNIL);
  }
  if (n == "OrE") {
    E left = pr_call(
        "usubst", {pr_child(2), pair_env(acc(0, pr_child(1)), acc(0, pr_child(0))), LNIL});
    E right = pr_call(
        "usubst", {pr_child(4), pair_env(acc(0, pr_child(3)), acc(0, pr_child(0))), LNIL});
    return pr_if(is("OrI1", pr_child(0)), single(left),
                 pr_if(is("OrI2", pr_child(0)), single(right), LNIL));
  }
  if (n == "ForallE") {
    E body = acc(1, pr_child(0));
    E key = acc(0, acc(0, pr_child(0)));
    return pr_if(is("ForallI", pr_child(0)),
                 single(pr_call("usubst", {body, LNIL, pair_env(key, pr_child(1))})),
                 LNIL);
  }
  if (n == "ExistsE") {
    E wit = acc(0, pr_child(0));
    E pay = acc(1, pr_child(0));
    E inner = pr_call("usubst", {pr_child(3), LNIL, pair_env(acc(0, pr_child(1)), wit)});
    E outer = pr_call("usubst", {inner, pair_env(acc(0, pr_child(2)), pay), LNIL});
    return pr_if(is("ExistsI", pr_child(0)), single(outer), LNIL);
  }
  return nullptr;
}

E Builder::reducts_closure(const TreeLang::Ctor& c) {
  std::vector<E> parts;
  for (std::size_t i = 0; i < c.arity; ++i) {
    std::vector<E> args{pr_rec(i)};
    for (std::size_t j = 0; j < c.arity; ++j) {
      if (j != i) args.push_back(pr_child(j));
    }
    parts.push_back(pr_call(mapc_name(c.name, i), std::move(args)));
  }
  return append_fold(std::move(parts));
}

void Builder::build() {
  std::size_t max_arity = 0;
  for (const auto& c : lang.ctors) max_arity = std::max(max_arity, c.arity);

  for (const auto& hc : lang.ctors) {
    def("is." + hc.name, 1, 0,
        [&](const TreeLang::Ctor& c) { return c.id == hc.id ? L1 : L0; });
  }
  for (std::size_t i = 0; i < max_arity; ++i) {
    def("c" + std::to_string(i), 1, 0,
        [&](const TreeLang::Ctor& c) { return i < c.arity ? pr_child(i) : L0; });
  }
  def("cond", 3, 0, [&](const TreeLang::Ctor& c) -> E {
    return c.name == "s" ? pr_arg(1) : pr_arg(2);
  });
  def("and2", 2, 0,
      [&](const TreeLang::Ctor& c) -> E { return c.name == "s" ? pr_arg(1) : L0; });
  def("or2", 2, 0,
      [&](const TreeLang::Ctor& c) -> E { return c.name == "s" ? L1 : pr_arg(1); });
  def("not2", 1, 0,
      [&](const TreeLang::Ctor& c) -> E { return c.name == "0" ? L1 : L0; });
  def("Nat", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "0") return L1;
    if (c.name == "s") return pr_rec(0);
    return L0;
  });
  def("max2", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "s") return pr_make("s", {pr_rec(0, {acc(0, pr_arg(1))})});
    return pr_arg(1);
  });
  def("eqt", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    std::vector<E> parts{is(c.name, pr_arg(1))};
    for (std::size_t i = 0; i < c.arity; ++i) {
      parts.push_back(pr_rec(i, {acc(i, pr_arg(1))}));
    }
    return and_fold(std::move(parts));
  });
  def("Le", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "0") return pr_call("Nat", {pr_arg(1)});
    if (c.name == "s") return band(is("s", pr_arg(1)), pr_rec(0, {acc(0, pr_arg(1))}));
    return L0;
  });
  def("append", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "cons") return cons_e(pr_child(0), pr_rec(1, {pr_arg(1)}));
    return pr_arg(1);
  });
  def("member", 2, 1, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "cons") {
      return pr_if(eqt(pr_arg(0), pr_child(0)), L1, pr_rec(1, {pr_arg(0)}));
    }
    return L0;
  });
  def("maxp", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "Axiom") return pr_child(0);
    std::vector<E> parts;
    for (std::size_t i = 0; i < c.arity; ++i) parts.push_back(pr_rec(i));
    return max_fold(std::move(parts));
  });
  def("maxt", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "TVar") return pr_child(0);
    std::vector<E> parts;
    for (std::size_t i = 0; i < c.arity; ++i) parts.push_back(pr_rec(i));
    return max_fold(std::move(parts));
  });
  def("hasAx", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "Axiom") return eqt(pr_child(0), pr_arg(1));
    std::vector<E> parts;
    for (std::size_t i = 0; i < c.arity; ++i) parts.push_back(pr_rec(i, {pr_arg(1)}));
    return or_fold(std::move(parts));
  });
  def("hasTV", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "TVar") return eqt(pr_child(0), pr_arg(1));
    std::vector<E> parts;
    for (std::size_t i = 0; i < c.arity; ++i) parts.push_back(pr_rec(i, {pr_arg(1)}));
    return or_fold(std::move(parts));
  });
  def("edrop", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "cons") {
      return pr_if(eqt(acc(0, pr_child(0)), pr_arg(1)), pr_rec(1, {pr_arg(1)}),
                   cons_e(pr_child(0), pr_rec(1, {pr_arg(1)})));
    }
    return LNIL;
  });
  def("lookupd", 3, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "cons") {
      return pr_if(eqt(acc(0, pr_child(0)), pr_arg(1)), acc(1, pr_child(0)),
                   pr_rec(1, {pr_arg(1), pr_arg(2)}));
    }
    return pr_arg(2);
  });
  def("usubst", 3, 0, [&](const TreeLang::Ctor& c) { return usubst_clause(c); });
  def("PSubst", 3, 0, [&](const TreeLang::Ctor& c) -> E {
    E env = cons_e(cons_e(acc(0, pr_arg(1)), pr_arg(2)), LNIL);
    return pr_call("usubst", {reassemble(c), env, LNIL});
  });
  def("TSubst", 3, 0, [&](const TreeLang::Ctor& c) -> E {
    E env = cons_e(cons_e(acc(0, pr_arg(1)), pr_arg(2)), LNIL);
    return pr_call("usubst", {reassemble(c), LNIL, env});
  });
  for (const auto& hc : lang.ctors) {
    for (std::size_t i = 0; i < hc.arity; ++i) {
      def(mapc_name(hc.name, i), hc.arity, 0, [&](const TreeLang::Ctor& c) -> E {
        if (c.name != "cons") return LNIL;
        std::vector<E> ks(hc.arity);
        std::size_t rank = 1;
        for (std::size_t j = 0; j < hc.arity; ++j) {
          ks[j] = j == i ? pr_child(0) : pr_arg(rank++);
        }
        std::vector<E> rest;
        for (std::size_t j = 1; j < hc.arity; ++j) rest.push_back(pr_arg(j));
        return cons_e(pr_make(hc.name, std::move(ks)), pr_rec(1, std::move(rest)));
      });
    }
  }
  def("reducts", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    E closure = reducts_closure(c);
    E root = reducts_root(c);
    return root ? pr_call("append", {root, closure}) : closure;
  });
  def("flatred", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "cons") {
      return pr_call("append", {pr_call("reducts", {pr_child(0)}), pr_rec(1)});
    }
    return LNIL;
  });
  def("stepn", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "0") return cons_e(pr_arg(1), LNIL);
    if (c.name == "s") return pr_call("flatred", {pr_rec(0, {pr_arg(1)})});
    return LNIL;
  });
  def("Red", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    return pr_call("member", {pr_arg(1), pr_call("reducts", {reassemble(c)})});
  });
  def("Redn", 3, 0, [&](const TreeLang::Ctor& c) -> E {
    return pr_call("member", {pr_arg(2), pr_call("stepn", {pr_arg(1), reassemble(c)})});
  });
  // Variable indices are positive numerals; ProofVar holds of the index (the
  // candidate-variable conjunct of CR plugs the index into Axiom), while the
  // node-level checks pvarnode/binderok govern binder slots and occurrences.
  def("ProofVar", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "s") return pr_call("Nat", {pr_child(0)});
    return L0;
  });
  def("pvarnode", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "Axiom") return pr_call("ProofVar", {pr_child(0)});
    return L0;
  });
  def("Sort", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "Sortc") return pr_call("ProofVar", {pr_child(0)});
    return L0;
  });
  def("TermVar", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "TVar") {
      return band(pr_call("ProofVar", {pr_child(0)}),
                  band(pr_call("Sort", {pr_child(1)}), eqt(pr_child(1), pr_arg(1))));
    }
    return L0;
  });
  def("binderok", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "TVar") {
      return band(pr_call("ProofVar", {pr_child(0)}),
                  bor(is("0", pr_child(1)), pr_call("Sort", {pr_child(1)})));
    }
    return L0;
  });
  def("TermAny", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "TVar") {
      return band(pr_call("ProofVar", {pr_child(0)}),
                  bor(is("0", pr_child(1)), pr_call("Sort", {pr_child(1)})));
    }
    if (c.name.rfind(kFnCtorPrefix, 0) == 0) {
      std::vector<E> parts;
      for (std::size_t i = 0; i < c.arity; ++i) parts.push_back(pr_rec(i));
      return and_fold(std::move(parts));
    }
    return L0;
  });
  def("Term", 2, 0, [&](const TreeLang::Ctor& c) -> E {
    if (c.name == "TVar") {
      return band(pr_call("ProofVar", {pr_child(0)}),
                  band(pr_call("Sort", {pr_child(1)}), eqt(pr_child(1), pr_arg(1))));
    }
    if (c.name.rfind(kFnCtorPrefix, 0) == 0) {
      const FunRank* rank = sig.function(c.name.substr(3));
      std::vector<E> parts{eqt(pr_arg(1), sortc_lit(rank->result))};
      for (std::size_t i = 0; i < c.arity; ++i) {
        parts.push_back(pr_rec(i, {sortc_lit(rank->args[i])}));
      }
      return and_fold(std::move(parts));
    }
    return L0;
  });
  def("Proof", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    const std::string& n = c.name;
    if (n == "Axiom") return pr_call("ProofVar", {pr_child(0)});
    if (n == "TopI") return L1;
    if (n == "ImpI") return band(pr_call("pvarnode", {pr_child(0)}), pr_rec(1));
    if (n == "ImpE" || n == "AndI") return band(pr_rec(0), pr_rec(1));
    if (n == "AndE1" || n == "AndE2" || n == "OrI1" || n == "OrI2" || n == "BotE") {
      return pr_rec(0);
    }
    if (n == "OrE") {
      return band(pr_rec(0),
                  band(pr_call("pvarnode", {pr_child(1)}),
                       band(pr_rec(2), band(pr_call("pvarnode", {pr_child(3)}),
                                            pr_rec(4)))));
    }
    if (n == "ForallI") return band(pr_call("binderok", {pr_child(0)}), pr_rec(1));
    if (n == "ForallE") return band(pr_rec(0), pr_call("TermAny", {pr_child(1)}));
    if (n == "ExistsI") return band(pr_call("TermAny", {pr_child(0)}), pr_rec(1));
    if (n == "ExistsE") {
      return band(pr_rec(0), band(pr_call("binderok", {pr_child(1)}),
                                  band(pr_call("pvarnode", {pr_child(2)}), pr_rec(3))));
    }
    return L0;
  });
  def("Elim", 1, 0, [&](const TreeLang::Ctor& c) -> E {
    const std::string& n = c.name;
    if (n == "ImpE" || n == "AndE1" || n == "AndE2" || n == "OrE" || n == "BotE" ||
        n == "ForallE" || n == "ExistsE") {
      return pr_call("Proof", {reassemble(c)});
    }
    return L0;
  });
}

}  // namespace

TreePtr tree_nil() { return mk_tree(tree_ctor_id("nil", 0), {}); }

TreePtr tree_cons(TreePtr head, TreePtr tail) {
  return mk_tree(tree_ctor_id("cons", 2), {head, tail});
}

TreePtr tree_list(const std::vector<TreePtr>& items) {
  TreePtr t = tree_nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) t = tree_cons(*it, t);
  return t;
}

std::vector<TreePtr> tree_list_items(TreePtr t) {
  std::vector<TreePtr> items;
  std::uint32_t cons_id = tree_ctor_id("cons", 2);
  std::uint32_t nil_id = tree_ctor_id("nil", 0);
  while (t->ctor == cons_id) {
    items.push_back(t->kids[0]);
    t = t->kids[1];
  }
  if (t->ctor != nil_id) throw InputError("not a list tree: " + print_tree(t));
  return items;
}

TreeCodec::TreeCodec(const Signature& sig) : sig_(&sig) {
  lang_ = std::make_unique<TreeLang>();
  for (const auto& c : kFixed) lang_->add(c.name, c.arity);
  for (const auto& [f, rank] : sig.functions) {
    lang_->add(kFnCtorPrefix + f, rank.args.size());
  }
  lang_->validate();
  prs_ = std::make_unique<PrimRecEnv>(lang_.get());
  Builder b{*prs_, *lang_, sig};
  b.build();
}

TreePtr TreeCodec::encode_pvar(const Name& a) const {
  return mk_tree("Axiom", {nat_tree(index_of_name(a))});
}

TreePtr TreeCodec::encode_slot(const std::optional<Name>& sort) const {
  return sort ? encode_sort(*sort) : nat_tree(0);
}

TreePtr TreeCodec::encode_tvar(const Name& x, const std::optional<Name>& sort) const {
  return mk_tree("TVar", {nat_tree(index_of_name(x)), encode_slot(sort)});
}

TreePtr TreeCodec::encode_sort(const Name& s) const {
  return mk_tree("Sortc", {nat_tree(index_of_name(s))});
}

TreePtr TreeCodec::encode_term(const TermPtr& t) const {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) { return encode_tvar(v.name, v.sort); },
          [&](const Term::App& a) {
            if (!lang_->find(kFnCtorPrefix + a.fn)) {
              throw InputError("unknown function '" + a.fn + "' in term encoding");
            }
            std::vector<TreePtr> kids;
            kids.reserve(a.args.size());
            for (const auto& arg : a.args) kids.push_back(encode_term(arg));
            return mk_tree(kFnCtorPrefix + a.fn, std::move(kids));
          }},
      t->node);
}

TreePtr TreeCodec::encode_proof(const ProofPtr& p) const {
  auto enc = [&](const ProofPtr& q) { return encode_proof(q); };
  return std::visit(
      overloaded{
          [&](const PAxiom& x) { return encode_pvar(x.name); },
          [&](const PLam& x) {
            return mk_tree("ImpI", {encode_pvar(x.hyp), enc(x.body)});
          },
          [&](const PApp& x) { return mk_tree("ImpE", {enc(x.fn), enc(x.arg)}); },
          [&](const PPair& x) { return mk_tree("AndI", {enc(x.fst), enc(x.snd)}); },
          [&](const PFst& x) { return mk_tree("AndE1", {enc(x.p)}); },
          [&](const PSnd& x) { return mk_tree("AndE2", {enc(x.p)}); },
          [&](const PInl& x) { return mk_tree("OrI1", {enc(x.p)}); },
          [&](const PInr& x) { return mk_tree("OrI2", {enc(x.p)}); },
          [&](const PCase& x) {
            return mk_tree("OrE", {enc(x.scrut), encode_pvar(x.lhyp), enc(x.lbody),
                                   encode_pvar(x.rhyp), enc(x.rbody)});
          },
          [&](const PTopI&) { return mk_tree("TopI", {}); },
          [&](const PBotE& x) { return mk_tree("BotE", {enc(x.p)}); },
          [&](const PTLam& x) {
            return mk_tree("ForallI", {encode_tvar(x.var, x.sort), enc(x.body)});
          },
          [&](const PTApp& x) {
            return mk_tree("ForallE", {enc(x.fn), encode_term(x.arg)});
          },
          [&](const PWit& x) {
            return mk_tree("ExistsI", {encode_term(x.witness), enc(x.body)});
          },
          [&](const PExElim& x) {
            return mk_tree("ExistsE", {enc(x.scrut), encode_tvar(x.var, x.sort),
                                       encode_pvar(x.hyp), enc(x.body)});
          }},
      static_cast<const ProofVariant&>(*p));
}

TreePtr TreeCodec::encode_penv(const PEnv& env) const {
  std::vector<TreePtr> items;
  items.reserve(env.size());
  for (const auto& [k, v] : env) {
    items.push_back(tree_cons(nat_tree(index_of_name(k)), encode_proof(v)));
  }
  return tree_list(items);
}

TreePtr TreeCodec::encode_tenv(const TermSubst& env) const {
  std::vector<TreePtr> items;
  items.reserve(env.size());
  for (const auto& [k, v] : env) {
    items.push_back(tree_cons(nat_tree(index_of_name(k)), encode_term(v)));
  }
  return tree_list(items);
}

namespace {

[[noreturn]] void malformed(TreePtr at, const std::string& why) {
  throw InputError("malformed encoding at " + print_tree(at) + ": " + why);
}

}  // namespace

Name TreeCodec::decode_var_name(TreePtr numeral, TreePtr at) const {
  long long n = tree_nat(numeral);
  if (n < 1) malformed(at, "variable index must be a positive numeral");
  return index_name(static_cast<std::uint64_t>(n));
}

std::optional<Name> TreeCodec::decode_slot(TreePtr t) const {
  if (tree_nat(t) == 0) return std::nullopt;
  if (tree_ctor_name(t->ctor) != "Sortc") malformed(t, "expected a sort slot");
  long long n = tree_nat(t->kids[0]);
  if (n < 1) malformed(t, "sort index must be a positive numeral");
  Name s = index_name(static_cast<std::uint64_t>(n));
  if (!sig_->has_sort(s)) malformed(t, "unknown sort '" + s + "'");
  return s;
}

TermPtr TreeCodec::decode_term(TreePtr t) const {
  const std::string& n = tree_ctor_name(t->ctor);
  if (n == "TVar") {
    return mk_var(decode_var_name(t->kids[0], t), decode_slot(t->kids[1]));
  }
  if (n.rfind(kFnCtorPrefix, 0) == 0) {
    Name f = n.substr(3);
    const FunRank* rank = sig_->function(f);
    if (!rank || rank->args.size() != t->kids.size()) {
      malformed(t, "unknown function '" + f + "'");
    }
    std::vector<TermPtr> args;
    args.reserve(t->kids.size());
    for (TreePtr k : t->kids) args.push_back(decode_term(k));
    return mk_app(f, std::move(args));
  }
  malformed(t, "not a term constructor");
}

ProofPtr TreeCodec::decode_proof(TreePtr t) const {
  const std::string& n = tree_ctor_name(t->ctor);
  auto pvar = [&](TreePtr k) -> Name {
    if (tree_ctor_name(k->ctor) != "Axiom") malformed(t, "expected a proof-variable node");
    return decode_var_name(k->kids[0], k);
  };
  auto tvar = [&](TreePtr k) -> std::pair<Name, std::optional<Name>> {
    if (tree_ctor_name(k->ctor) != "TVar") malformed(t, "expected a term-variable node");
    return {decode_var_name(k->kids[0], k), decode_slot(k->kids[1])};
  };
  if (n == "Axiom") return mk_proof(PAxiom{pvar(t)});
  if (n == "ImpI") return mk_proof(PLam{pvar(t->kids[0]), decode_proof(t->kids[1])});
  if (n == "ImpE") {
    return mk_proof(PApp{decode_proof(t->kids[0]), decode_proof(t->kids[1])});
  }
  if (n == "AndI") {
    return mk_proof(PPair{decode_proof(t->kids[0]), decode_proof(t->kids[1])});
  }
  if (n == "AndE1") return mk_proof(PFst{decode_proof(t->kids[0])});
  if (n == "AndE2") return mk_proof(PSnd{decode_proof(t->kids[0])});
  if (n == "OrI1") return mk_proof(PInl{decode_proof(t->kids[0])});
  if (n == "OrI2") return mk_proof(PInr{decode_proof(t->kids[0])});
  if (n == "OrE") {
    return mk_proof(PCase{decode_proof(t->kids[0]), pvar(t->kids[1]),
                          decode_proof(t->kids[2]), pvar(t->kids[3]),
                          decode_proof(t->kids[4])});
  }
  if (n == "TopI") return mk_proof(PTopI{});
  if (n == "BotE") return mk_proof(PBotE{decode_proof(t->kids[0])});
  if (n == "ForallI") {
    auto [v, s] = tvar(t->kids[0]);
    return mk_proof(PTLam{v, s, decode_proof(t->kids[1])});
  }
  if (n == "ForallE") {
    return mk_proof(PTApp{decode_proof(t->kids[0]), decode_term(t->kids[1])});
  }
  if (n == "ExistsI") {
    return mk_proof(PWit{decode_term(t->kids[0]), decode_proof(t->kids[1])});
  }
  if (n == "ExistsE") {
    auto [v, s] = tvar(t->kids[1]);
    return mk_proof(PExElim{decode_proof(t->kids[0]), v, s, pvar(t->kids[2]),
                            decode_proof(t->kids[3])});
  }
  malformed(t, "not a proof constructor");
}

}  // namespace demod
