#include "demod/interp.hpp"

#include <algorithm>

#include "demod/syntax_io.hpp"

namespace demod {

namespace {

template <class V>
const V* find_entry(const std::vector<std::pair<Name, V>>& xs, const Name& k) {
  for (const auto& [n, v] : xs)
    if (n == k) return &v;
  return nullptr;
}

}  // namespace

const SortInterp* InterpretationSpec::sort(const Name& s) const {
  return find_entry(sorts, s);
}
const TermTemplate* InterpretationSpec::fun(const Name& f) const {
  return find_entry(funs, f);
}
const FormulaTemplate* InterpretationSpec::pred(const Name& p) const {
  return find_entry(preds, p);
}

Name star_name(const Name& x) { return x + "*"; }

FormulaPtr relativize(const InterpretationSpec& spec, const Name& sort,
                      const TermPtr& t) {
  const SortInterp* si = spec.sort(sort);
  if (!si) throw InputError("no interpretation for sort " + sort);
  return instantiate_template(si->rel, {t});
}

TermPtr translate_term(const InterpretationSpec& spec, const TermPtr& t) {
  if (const auto* v = as_var(t)) {
    if (!v->sort) throw InputError("cannot translate unsorted variable " + v->name);
    const SortInterp* si = spec.sort(*v->sort);
    if (!si) throw InputError("no interpretation for sort " + *v->sort);
    return mk_var(star_name(v->name), si->target);
  }
  const auto* a = as_app(t);
  const TermTemplate* tt = spec.fun(a->fn);
  if (!tt) throw InputError("no macro for function symbol " + a->fn);
  if (tt->holes.size() != a->args.size()) {
    throw InputError("macro for " + a->fn + " expects " +
                     std::to_string(tt->holes.size()) + " arguments");
  }
  TermSubst env;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    env.emplace_back(tt->holes[i], translate_term(spec, a->args[i]));
  }
  return subst_in_term(tt->body, env);
}

FormulaPtr translate_formula(const InterpretationSpec& spec, const FormulaPtr& A) {
  return std::visit(
      overloaded{
          [&](const Formula::Atom& a) {
            const FormulaTemplate* pt = spec.pred(a.pred);
            if (!pt) throw InputError("no template for predicate symbol " + a.pred);
            std::vector<TermPtr> args;
            args.reserve(a.args.size());
            for (const auto& t : a.args) args.push_back(translate_term(spec, t));
            return instantiate_template(*pt, args);
          },
          [&](const Formula::Top&) { return mk_top(); },
          [&](const Formula::Bot&) { return mk_bot(); },
          [&](const Formula::And& n) {
            return mk_and(translate_formula(spec, n.l), translate_formula(spec, n.r));
          },
          [&](const Formula::Or& n) {
            return mk_or(translate_formula(spec, n.l), translate_formula(spec, n.r));
          },
          [&](const Formula::Imp& n) {
            return mk_imp(translate_formula(spec, n.l), translate_formula(spec, n.r));
          },
          [&](const Formula::Forall& n) {
            const SortInterp* si = spec.sort(n.sort);
            if (!si) throw InputError("no interpretation for sort " + n.sort);
            Name xs = star_name(n.var);
            return mk_forall(xs, si->target,
                             mk_imp(relativize(spec, n.sort, mk_var(xs, si->target)),
                                    translate_formula(spec, n.body)));
          },
          [&](const Formula::Exists& n) {
            const SortInterp* si = spec.sort(n.sort);
            if (!si) throw InputError("no interpretation for sort " + n.sort);
            Name xs = star_name(n.var);
            return mk_exists(xs, si->target,
                             mk_and(relativize(spec, n.sort, mk_var(xs, si->target)),
                                    translate_formula(spec, n.body)));
          },
      },
      A->node);
}

namespace {

// Fresh source-side variables z1,…,zn at the given sorts.
std::vector<TermPtr> source_vars(const std::vector<Name>& sorts) {
  std::vector<TermPtr> vs;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    vs.push_back(mk_var("z" + std::to_string(i + 1), sorts[i]));
  }
  return vs;
}

}  // namespace

FormulaPtr relativization_guard(const InterpretationSpec& spec,
                                const std::vector<std::pair<Name, Name>>& fv,
                                FormulaPtr body) {
  std::vector<FormulaPtr> gs;
  for (const auto& [x, s] : fv) {
    const SortInterp* si = spec.sort(s);
    if (!si) throw InputError("no interpretation for sort " + s);
    gs.push_back(relativize(spec, s, mk_var(star_name(x), si->target)));
  }
  if (gs.empty()) return body;
  return mk_imp(mk_and_chain(std::move(gs)), std::move(body));
}

namespace {

// One equivalence display per connective node of the formula: the guard
// covers the node's free variables, the composite translation on the left,
// the one-level componentwise translation on the right.
void item2_walk(const InterpretationSpec& spec, const FormulaPtr& A,
                const std::string& who, std::vector<Obligation>& out) {
  auto push = [&](const FormulaPtr& componentwise) {
    out.push_back({"item2-equivalence",
                   close_universally(relativization_guard(
                       spec, free_vars(A),
                       mk_iff(translate_formula(spec, A), componentwise))),
                   who});
  };
  std::visit(
      overloaded{
          [&](const Formula::Atom&) {},
          [&](const Formula::Top&) {},
          [&](const Formula::Bot&) {},
          [&](const Formula::And& n) {
            push(mk_and(translate_formula(spec, n.l), translate_formula(spec, n.r)));
            item2_walk(spec, n.l, who, out);
            item2_walk(spec, n.r, who, out);
          },
          [&](const Formula::Or& n) {
            push(mk_or(translate_formula(spec, n.l), translate_formula(spec, n.r)));
            item2_walk(spec, n.l, who, out);
            item2_walk(spec, n.r, who, out);
          },
          [&](const Formula::Imp& n) {
            push(mk_imp(translate_formula(spec, n.l), translate_formula(spec, n.r)));
            item2_walk(spec, n.l, who, out);
            item2_walk(spec, n.r, who, out);
          },
          [&](const Formula::Forall& n) {
            const SortInterp* si = spec.sort(n.sort);
            if (!si) throw InputError("no interpretation for sort " + n.sort);
            Name xs = star_name(n.var);
            push(mk_forall(xs, si->target,
                           mk_imp(relativize(spec, n.sort, mk_var(xs, si->target)),
                                  translate_formula(spec, n.body))));
            item2_walk(spec, n.body, who, out);
          },
          [&](const Formula::Exists& n) {
            const SortInterp* si = spec.sort(n.sort);
            if (!si) throw InputError("no interpretation for sort " + n.sort);
            Name xs = star_name(n.var);
            push(mk_exists(xs, si->target,
                           mk_and(relativize(spec, n.sort, mk_var(xs, si->target)),
                                  translate_formula(spec, n.body))));
            item2_walk(spec, n.body, who, out);
          },
      },
      A->node);
}

}  // namespace

std::vector<Obligation> emit_interpretation_obligations(
    const InterpretationSpec& spec, const Theory& T, const Theory& U,
    bool item2_equivalences) {
  std::vector<std::string> missing;
  for (const auto& s : T.sig.sorts) {
    if (!spec.sort(s)) missing.push_back("sort " + s);
  }
  for (const auto& [f, rank] : T.sig.functions) {
    if (!spec.fun(f)) missing.push_back("function " + f);
  }
  for (const auto& [p, argsorts] : T.sig.predicates) {
    if (!spec.pred(p)) missing.push_back("predicate " + p);
  }
  if (!missing.empty()) {
    std::string msg = "interpretation does not cover:";
    for (const auto& m : missing) msg += " " + m;
    throw InputError(msg);
  }

  std::vector<Obligation> out;
  for (const auto& s : T.sig.sorts) {
    const SortInterp* si = spec.sort(s);
    out.push_back({"sort-nonempty",
                   mk_exists(si->rel.holes[0], si->target, si->rel.body),
                   "sort " + s});
  }
  for (const auto& [f, rank] : T.sig.functions) {
    auto zs = source_vars(rank.args);
    std::vector<FormulaPtr> gs;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      gs.push_back(relativize(spec, rank.args[i], translate_term(spec, zs[i])));
    }
    FormulaPtr concl =
        relativize(spec, rank.result, translate_term(spec, mk_app(f, zs)));
    FormulaPtr body =
        gs.empty() ? concl : mk_imp(mk_and_chain(std::move(gs)), concl);
    out.push_back({"fun-closure", close_universally(std::move(body)), "function " + f});
  }
  if (item2_equivalences) {
    out.push_back({"item2-equivalence", mk_iff(translate_formula(spec, mk_top()), mk_top()),
                   "top"});
    out.push_back({"item2-equivalence", mk_iff(translate_formula(spec, mk_bot()), mk_bot()),
                   "bot"});
    for (const auto& A : T.axioms) item2_walk(spec, A, print_formula(A), out);
  }
  for (const auto& A : T.axioms) {
    out.push_back({"axiom", close_universally(translate_formula(spec, A)),
                   print_formula(A)});
  }
  for (auto& ob : out) {
    check_formula_sorts(ob.formula, U.sig);
    if (!is_closed(ob.formula)) {
      throw Error("emitted obligation is not closed: " + print_formula(ob.formula));
    }
  }
  return out;
}

FormulaPtr theorem_statement(const InterpretationSpec& spec, const FormulaPtr& A) {
  return close_universally(relativization_guard(spec, free_vars(A), translate_formula(spec, A)));
}

namespace {

std::vector<Name> parse_holes(const SExpr& e, std::size_t want) {
  if (e.atom) fail_at(e, "expected a hole list");
  std::vector<Name> holes;
  for (const auto& h : e.items) {
    if (!h.atom) fail_at(h, "hole must be a name");
    if (!h.text.empty() && h.text[0] == '_') {
      fail_at(h, "names starting with _ are reserved");
    }
    if (std::find(holes.begin(), holes.end(), h.text) != holes.end()) {
      fail_at(h, "duplicate hole " + h.text);
    }
    holes.push_back(h.text);
  }
  if (holes.size() != want) {
    fail_at(e, "expected " + std::to_string(want) + " holes, got " +
                   std::to_string(holes.size()));
  }
  return holes;
}

void check_template_vars(const SExpr& at, const std::vector<std::pair<Name, Name>>& fv,
                         const std::vector<Name>& holes) {
  for (const auto& [n, s] : fv) {
    if (std::find(holes.begin(), holes.end(), n) == holes.end()) {
      fail_at(at, "template has a free variable besides its holes: " + n);
    }
  }
}

}  // namespace

InterpretationSpec parse_interp_spec(const SExpr& e, const Signature& T,
                                     const Signature& U,
                                     std::vector<SExpr>* leftover) {
  if (e.head() != "interp") fail_at(e, "expected (interp ...)");
  InterpretationSpec spec;
  // Sorts first: function and predicate templates need the sort images.
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& entry = e.at(i);
    if (entry.head() != "sort") continue;
    if (entry.size() != 4) fail_at(entry, "expected (sort <s> <s_*> (rel (<x>) <formula>))");
    const Name s = entry.at(1).text;
    const Name target = entry.at(2).text;
    if (!entry.at(1).atom || !T.has_sort(s)) fail_at(entry.at(1), "unknown source sort");
    if (!entry.at(2).atom || !U.has_sort(target)) fail_at(entry.at(2), "unknown target sort");
    if (spec.sort(s)) fail_at(entry, "duplicate sort entry " + s);
    const SExpr& rel = entry.at(3);
    if (rel.head() != "rel" || rel.size() != 3) fail_at(rel, "expected (rel (<x>) <formula>)");
    auto holes = parse_holes(rel.at(1), 1);
    SortCtx ctx{&U, {}, {{holes[0], target}}};
    FormulaPtr body = parse_formula_sx(rel.at(2), ctx);
    check_template_vars(rel.at(2), free_vars(body), holes);
    spec.sorts.emplace_back(s, SortInterp{target, {std::move(holes), std::move(body)}});
  }
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& entry = e.at(i);
    const std::string kind = entry.head();
    if (kind == "sort") continue;
    if (kind == "fun") {
      if (entry.size() != 4) fail_at(entry, "expected (fun <f> ((<z> …)) <term>)");
      const Name f = entry.at(1).text;
      const FunRank* rank = T.function(f);
      if (!entry.at(1).atom || !rank) fail_at(entry.at(1), "unknown function symbol");
      if (spec.fun(f)) fail_at(entry, "duplicate fun entry " + f);
      if (entry.at(2).atom || entry.at(2).size() != 1) {
        fail_at(entry.at(2), "expected ((<z> …))");
      }
      auto holes = parse_holes(entry.at(2).at(0), rank->args.size());
      SortCtx ctx{&U, {}, {}};
      for (std::size_t j = 0; j < holes.size(); ++j) {
        const SortInterp* si = spec.sort(rank->args[j]);
        if (!si) fail_at(entry, "no sort entry for " + rank->args[j]);
        ctx.free.emplace(holes[j], si->target);
      }
      const SortInterp* ri = spec.sort(rank->result);
      if (!ri) fail_at(entry, "no sort entry for " + rank->result);
      TermPtr body = parse_term_sx(entry.at(3), ctx, ri->target);
      check_template_vars(entry.at(3), free_vars(body), holes);
      spec.funs.emplace_back(f, TermTemplate{std::move(holes), std::move(body)});
    } else if (kind == "pred") {
      if (entry.size() != 4) fail_at(entry, "expected (pred <p> ((<z> …)) <formula>)");
      const Name p = entry.at(1).text;
      const std::vector<Name>* argsorts = T.predicate(p);
      if (!entry.at(1).atom || !argsorts) fail_at(entry.at(1), "unknown predicate symbol");
      if (spec.pred(p)) fail_at(entry, "duplicate pred entry " + p);
      if (entry.at(2).atom || entry.at(2).size() != 1) {
        fail_at(entry.at(2), "expected ((<z> …))");
      }
      auto holes = parse_holes(entry.at(2).at(0), argsorts->size());
      SortCtx ctx{&U, {}, {}};
      for (std::size_t j = 0; j < holes.size(); ++j) {
        const SortInterp* si = spec.sort((*argsorts)[j]);
        if (!si) fail_at(entry, "no sort entry for " + (*argsorts)[j]);
        ctx.free.emplace(holes[j], si->target);
      }
      FormulaPtr body = parse_formula_sx(entry.at(3), ctx);
      check_template_vars(entry.at(3), free_vars(body), holes);
      spec.preds.emplace_back(p, FormulaTemplate{std::move(holes), std::move(body)});
    } else if (leftover) {
      leftover->push_back(entry);
    } else {
      fail_at(entry, "unknown interpretation entry " + kind);
    }
  }
  return spec;
}

InterpretationSpec parse_interp_spec_text(const std::string& text,
                                          const Signature& T, const Signature& U) {
  return parse_interp_spec(parse_sexpr(text), T, U);
}

}  // namespace demod
