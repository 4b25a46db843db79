#include "demod/primrec.hpp"

#include <algorithm>

namespace demod {

PrExprPtr pr_child(std::size_t i) {
  auto p = std::make_shared<PrExpr>();
  p->kind = PrKind::Child;
  p->index = i;
  return p;
}

PrExprPtr pr_arg(std::size_t j) {
  auto p = std::make_shared<PrExpr>();
  p->kind = PrKind::Arg;
  p->index = j;
  return p;
}

PrExprPtr pr_rec(std::size_t child, std::vector<PrExprPtr> rest) {
  auto p = std::make_shared<PrExpr>();
  p->kind = PrKind::Rec;
  p->index = child;
  p->args = std::move(rest);
  return p;
}

PrExprPtr pr_call(std::string fn, std::vector<PrExprPtr> args) {
  auto p = std::make_shared<PrExpr>();
  p->kind = PrKind::Call;
  p->name = std::move(fn);
  p->args = std::move(args);
  return p;
}

PrExprPtr pr_make(std::string ctor, std::vector<PrExprPtr> args) {
  // Ground applications collapse to literals so deep data costs nothing.
  bool ground = std::all_of(args.begin(), args.end(), [](const PrExprPtr& a) {
    return a->kind == PrKind::Lit;
  });
  if (ground) {
    std::vector<TreePtr> kids;
    kids.reserve(args.size());
    for (const auto& a : args) kids.push_back(a->lit);
    return pr_lit(mk_tree(ctor, std::move(kids)));
  }
  auto p = std::make_shared<PrExpr>();
  p->kind = PrKind::Make;
  p->name = std::move(ctor);
  p->args = std::move(args);
  return p;
}

PrExprPtr pr_lit(TreePtr t) {
  auto p = std::make_shared<PrExpr>();
  p->kind = PrKind::Lit;
  p->lit = t;
  return p;
}

PrExprPtr pr_if(PrExprPtr c, PrExprPtr t, PrExprPtr e) {
  auto p = std::make_shared<PrExpr>();
  p->kind = PrKind::If;
  p->args = {std::move(c), std::move(t), std::move(e)};
  return p;
}

namespace {

void validate_expr(const PrExpr& e, const PrimRecEnv& env, const PrimRecDef& def,
                   std::size_t ctor_arity) {
  switch (e.kind) {
    case PrKind::Child:
      if (e.index >= ctor_arity) {
        throw InputError("def '" + def.name + "': child " + std::to_string(e.index) +
                         " out of range for a constructor of arity " +
                         std::to_string(ctor_arity));
      }
      return;
    case PrKind::Arg:
      if (e.index >= def.arity) {
        throw InputError("def '" + def.name + "': arg " + std::to_string(e.index) +
                         " out of range");
      }
      if (e.index == def.rec_pos) {
        throw InputError("def '" + def.name +
                         "': the recursion argument is only reachable through its children");
      }
      return;
    case PrKind::Rec:
      if (e.index >= ctor_arity) {
        throw InputError("def '" + def.name + "': rec child " + std::to_string(e.index) +
                         " out of range");
      }
      if (e.args.size() != def.arity - 1) {
        throw InputError("def '" + def.name + "': rec expects " +
                         std::to_string(def.arity - 1) + " side arguments");
      }
      break;
    case PrKind::Call: {
      const PrimRecDef* target = env.find(e.name);
      if (!target) {
        throw InputError("def '" + def.name + "' calls undefined '" + e.name + "'");
      }
      if (e.args.size() != target->arity) {
        throw InputError("def '" + def.name + "': call to '" + e.name + "' expects " +
                         std::to_string(target->arity) + " arguments");
      }
      break;
    }
    case PrKind::Make: {
      const TreeLang::Ctor* c = env.lang().find(e.name);
      if (!c) throw InputError("def '" + def.name + "': unknown constructor '" + e.name + "'");
      if (e.args.size() != c->arity) {
        throw InputError("def '" + def.name + "': constructor '" + e.name + "' expects " +
                         std::to_string(c->arity) + " children");
      }
      break;
    }
    case PrKind::Lit:
      if (!tree_in_lang(e.lit, env.lang())) {
        throw InputError("def '" + def.name + "': literal uses a foreign constructor");
      }
      return;
    case PrKind::If:
      if (e.args.size() != 3) throw InputError("def '" + def.name + "': if expects 3 parts");
      break;
  }
  for (const auto& a : e.args) validate_expr(*a, env, def, ctor_arity);
}

}  // namespace

std::size_t PrimRecEnv::add(PrimRecDef def) {
  if (def.name.empty() || def.name == "_") throw InputError("invalid definition name");
  if (index_.count(def.name)) throw InputError("duplicate definition '" + def.name + "'");
  if (lang_->find(def.name)) {
    throw InputError("definition '" + def.name + "' collides with a constructor");
  }
  if (def.arity == 0) throw InputError("def '" + def.name + "': arity must be positive");
  if (def.rec_pos >= def.arity) {
    throw InputError("def '" + def.name + "': recursion position out of range");
  }
  if (def.clauses.size() != lang_->ctors.size()) {
    throw InputError("def '" + def.name + "': expected " +
                     std::to_string(lang_->ctors.size()) + " clauses, got " +
                     std::to_string(def.clauses.size()));
  }
  for (std::size_t i = 0; i < def.clauses.size(); ++i) {
    if (!def.clauses[i]) throw InputError("def '" + def.name + "': missing clause");
    validate_expr(*def.clauses[i], *this, def, lang_->ctors[i].arity);
  }
  defs_.push_back(std::move(def));
  index_.emplace(defs_.back().name, defs_.size() - 1);
  return defs_.size() - 1;
}

const PrimRecDef* PrimRecEnv::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &defs_[it->second];
}

std::size_t PrimRecEnv::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw InputError("undefined PR function '" + name + "'");
  return it->second;
}

std::size_t PrEval::KeyHash::operator()(const Key& k) const {
  std::size_t h = k.def * 0x9e3779b97f4a7c15ull;
  for (TreePtr t : k.args) {
    h ^= t->hash + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

TreePtr PrEval::call(const std::string& name, const std::vector<TreePtr>& args) {
  return call_index(env_->index_of(name), args);
}

TreePtr PrEval::call_index(std::size_t def_index, std::vector<TreePtr> args) {
  const PrimRecDef& def = env_->defs().at(def_index);
  if (args.size() != def.arity) {
    throw InputError("'" + def.name + "' expects " + std::to_string(def.arity) +
                     " arguments, got " + std::to_string(args.size()));
  }
  ++stats_.calls;
  Key key{def_index, std::move(args)};
  auto it = memo_.find(key);
  if (it != memo_.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  TreePtr rec_arg = key.args[def.rec_pos];
  std::size_t pos = env_->lang().position(rec_arg->ctor);
  if (pos == TreeLang::npos) {
    throw InputError("'" + def.name + "' applied to a tree outside its language (" +
                     tree_ctor_name(rec_arg->ctor) + ")");
  }
  TreePtr result = eval(*def.clauses[pos], def_index, rec_arg, key.args);
  memo_.emplace(std::move(key), result);
  return result;
}

namespace {

struct DepthGuard {
  std::size_t& depth;
  explicit DepthGuard(std::size_t& d) : depth(d) {
    if (++depth > kMaxEvalDepth) {
      throw BudgetError("primitive recursive evaluation exceeded depth " +
                        std::to_string(kMaxEvalDepth));
    }
  }
  ~DepthGuard() { --depth; }
};

}  // namespace

TreePtr PrEval::eval(const PrExpr& e, std::size_t def_index, TreePtr rec_arg,
                     const std::vector<TreePtr>& args) {
  DepthGuard guard(depth_);
  stats_.max_depth = std::max(stats_.max_depth, depth_);
  switch (e.kind) {
    case PrKind::Child:
      return rec_arg->kids[e.index];
    case PrKind::Arg:
      return args[e.index];
    case PrKind::Lit:
      return e.lit;
    case PrKind::If: {
      TreePtr c = eval(*e.args[0], def_index, rec_arg, args);
      const PrExpr& branch = c->ctor == tree_ctor_id("s", 1) ? *e.args[1] : *e.args[2];
      return eval(branch, def_index, rec_arg, args);
    }
    case PrKind::Make: {
      std::vector<TreePtr> kids;
      kids.reserve(e.args.size());
      for (const auto& a : e.args) kids.push_back(eval(*a, def_index, rec_arg, args));
      return mk_tree(e.name, std::move(kids));
    }
    case PrKind::Call: {
      std::vector<TreePtr> sub;
      sub.reserve(e.args.size());
      for (const auto& a : e.args) sub.push_back(eval(*a, def_index, rec_arg, args));
      return call(e.name, sub);
    }
    case PrKind::Rec: {
      const PrimRecDef& def = env_->defs()[def_index];
      std::vector<TreePtr> sub(def.arity, nullptr);
      sub[def.rec_pos] = rec_arg->kids[e.index];
      std::size_t k = 0;
      for (std::size_t j = 0; j < def.arity; ++j) {
        if (j == def.rec_pos) continue;
        sub[j] = eval(*e.args[k++], def_index, rec_arg, args);
      }
      return call_index(def_index, std::move(sub));
    }
  }
  throw Error("unreachable PR expression kind");
}

TreePtr eval_pr(const PrimRecEnv& env, const std::string& name,
                const std::vector<TreePtr>& args) {
  PrEval session(env);
  return session.call(name, args);
}

namespace {

PrExprPtr parse_expr(const SExpr& e, const PrimRecEnv& scope) {
  if (e.atom) {
    if (!e.text.empty() &&
        std::all_of(e.text.begin(), e.text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return pr_lit(parse_tree(e, scope.lang()));
    }
    const auto* c = scope.lang().find(e.text);
    if (c && c->arity == 0) return pr_lit(mk_tree(c->id, {}));
    fail_at(e, "expected a nullary constructor or numeral, got '" + e.text + "'");
  }
  if (e.items.empty() || !e.items[0].atom) fail_at(e, "expected an expression form");
  const std::string& head = e.items[0].text;
  auto nat_at = [](const SExpr& a) -> std::size_t {
    if (!a.atom || a.text.empty() ||
        !std::all_of(a.text.begin(), a.text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      fail_at(a, "expected an index");
    }
    return static_cast<std::size_t>(std::stoull(a.text));
  };
  if (head == "child") {
    if (e.items.size() != 2) fail_at(e, "(child i)");
    return pr_child(nat_at(e.items[1]));
  }
  if (head == "arg") {
    if (e.items.size() != 2) fail_at(e, "(arg j)");
    return pr_arg(nat_at(e.items[1]));
  }
  if (head == "rec") {
    if (e.items.size() < 2) fail_at(e, "(rec i e...)");
    std::vector<PrExprPtr> rest;
    for (std::size_t i = 2; i < e.items.size(); ++i) rest.push_back(parse_expr(e.items[i], scope));
    return pr_rec(nat_at(e.items[1]), std::move(rest));
  }
  if (head == "call") {
    if (e.items.size() < 2 || !e.items[1].atom) fail_at(e, "(call f e...)");
    std::vector<PrExprPtr> args;
    for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(parse_expr(e.items[i], scope));
    return pr_call(e.items[1].text, std::move(args));
  }
  if (head == "if") {
    if (e.items.size() != 4) fail_at(e, "(if c t e)");
    return pr_if(parse_expr(e.items[1], scope), parse_expr(e.items[2], scope),
                 parse_expr(e.items[3], scope));
  }
  const auto* c = scope.lang().find(head);
  if (!c) fail_at(e.items[0], "unknown constructor or form '" + head + "'");
  std::vector<PrExprPtr> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(parse_expr(e.items[i], scope));
  if (args.size() != c->arity) {
    fail_at(e, "constructor '" + head + "' expects " + std::to_string(c->arity) + " children");
  }
  return pr_make(head, std::move(args));
}

}  // namespace

PrimRecDef parse_prdef(const SExpr& e, const PrimRecEnv& scope) {
  if (e.atom || e.items.size() < 4 || !e.items[0].atom || e.items[0].text != "prdef") {
    fail_at(e, "expected (prdef <name> <arity> (rec <argpos>) (clause <ctor> <expr>) ...)");
  }
  if (!e.items[1].atom) fail_at(e.items[1], "expected a definition name");
  PrimRecDef def;
  def.name = e.items[1].text;
  if (!e.items[2].atom) fail_at(e.items[2], "expected an arity");
  def.arity = static_cast<std::size_t>(std::stoull(e.items[2].text));
  const SExpr& rec = e.items[3];
  if (rec.atom || rec.items.size() != 2 || !rec.items[0].atom || rec.items[0].text != "rec" ||
      !rec.items[1].atom) {
    fail_at(rec, "expected (rec <argpos>)");
  }
  def.rec_pos = static_cast<std::size_t>(std::stoull(rec.items[1].text));

  const TreeLang& lang = scope.lang();
  def.clauses.assign(lang.ctors.size(), nullptr);
  PrExprPtr fallback;
  for (std::size_t i = 4; i < e.items.size(); ++i) {
    const SExpr& cl = e.items[i];
    if (cl.atom || cl.items.size() != 3 || !cl.items[0].atom || cl.items[0].text != "clause" ||
        !cl.items[1].atom) {
      fail_at(cl, "expected (clause <ctor> <expr>)");
    }
    PrExprPtr body = parse_expr(cl.items[2], scope);
    if (cl.items[1].text == "_") {
      if (fallback) fail_at(cl, "duplicate _ clause");
      fallback = body;
      continue;
    }
    const auto* c = lang.find(cl.items[1].text);
    if (!c) fail_at(cl.items[1], "unknown constructor '" + cl.items[1].text + "'");
    std::size_t pos = lang.position(c->id);
    if (def.clauses[pos]) fail_at(cl, "duplicate clause for '" + c->name + "'");
    def.clauses[pos] = body;
  }
  for (std::size_t i = 0; i < def.clauses.size(); ++i) {
    if (!def.clauses[i]) {
      if (!fallback) {
        fail_at(e, "missing clause for constructor '" + lang.ctors[i].name + "'");
      }
      def.clauses[i] = fallback;
    }
  }
  return def;
}

PrimRecDef parse_prdef_text(const std::string& text, const PrimRecEnv& scope) {
  return parse_prdef(parse_sexpr(text), scope);
}

namespace {

SExpr expr_to_sx(const PrExpr& e) {
  switch (e.kind) {
    case PrKind::Child:
      return sx_list({sx_atom("child"), sx_atom(std::to_string(e.index))});
    case PrKind::Arg:
      return sx_list({sx_atom("arg"), sx_atom(std::to_string(e.index))});
    case PrKind::Lit:
      return tree_to_sx(e.lit);
    case PrKind::Rec: {
      std::vector<SExpr> items{sx_atom("rec"), sx_atom(std::to_string(e.index))};
      for (const auto& a : e.args) items.push_back(expr_to_sx(*a));
      return sx_list(std::move(items));
    }
    case PrKind::Call: {
      std::vector<SExpr> items{sx_atom("call"), sx_atom(e.name)};
      for (const auto& a : e.args) items.push_back(expr_to_sx(*a));
      return sx_list(std::move(items));
    }
    case PrKind::If: {
      std::vector<SExpr> items{sx_atom("if")};
      for (const auto& a : e.args) items.push_back(expr_to_sx(*a));
      return sx_list(std::move(items));
    }
    case PrKind::Make: {
      if (e.args.empty()) return sx_atom(e.name);
      std::vector<SExpr> items{sx_atom(e.name)};
      for (const auto& a : e.args) items.push_back(expr_to_sx(*a));
      return sx_list(std::move(items));
    }
  }
  throw Error("unreachable PR expression kind");
}

}  // namespace

SExpr prdef_to_sx(const PrimRecDef& def, const TreeLang& lang) {
  std::vector<SExpr> items{sx_atom("prdef"), sx_atom(def.name),
                           sx_atom(std::to_string(def.arity)),
                           sx_list({sx_atom("rec"), sx_atom(std::to_string(def.rec_pos))})};
  for (std::size_t i = 0; i < def.clauses.size(); ++i) {
    items.push_back(sx_list(
        {sx_atom("clause"), sx_atom(lang.ctors[i].name), expr_to_sx(*def.clauses[i])}));
  }
  return sx_list(std::move(items));
}

std::string print_prdef(const PrimRecDef& def, const TreeLang& lang) {
  return print_sexpr(prdef_to_sx(def, lang));
}

}  // namespace demod
