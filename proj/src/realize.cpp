#include "demod/realize.hpp"

#include <algorithm>

#include "demod/s_axioms.hpp"
#include "demod/syntax_io.hpp"

namespace demod {

const RealPred* RealizabilitySpec::realpred(const Name& p) const {
  for (const auto& [n, v] : realpreds)
    if (n == p) return &v;
  return nullptr;
}

namespace {

TermPtr tvv(const Name& n) { return mk_var(n, Name(kTreeSort)); }

Name fresh_reserved(const char* role, int depth) {
  return std::string("_") + role + std::to_string(depth);
}

FormulaPtr sn_atom(TermPtr r) { return mk_atom("SN", {std::move(r)}); }

FormulaPtr red_star(TermPtr a, TermPtr b) {
  return mk_atom("Red*", {std::move(a), std::move(b)});
}

FormulaPtr forall_tree(const Name& v, FormulaPtr body) {
  return mk_forall(v, Name(kTreeSort), std::move(body));
}

struct Realizer {
  const RealizabilitySpec& spec;
  const TreeCodec& codec;

  FormulaPtr go(const FormulaPtr& A, const TermPtr& r, int d) const {
    return std::visit(
        overloaded{
            [&](const Formula::Atom& at) -> FormulaPtr {
              const RealPred* rp = spec.realpred(at.pred);
              if (!rp) throw InputError("no realizability template for predicate " + at.pred);
              if (rp->holes.size() != at.args.size()) {
                throw InputError("realizability template for " + at.pred +
                                 " expects " + std::to_string(rp->holes.size()) +
                                 " arguments");
              }
              FormulaTemplate t{rp->holes, rp->body};
              t.holes.push_back(rp->pi);
              std::vector<TermPtr> args;
              args.reserve(at.args.size() + 1);
              for (const auto& a : at.args) args.push_back(translate_term(spec.base, a));
              args.push_back(r);
              return instantiate_template(t, args);
            },
            [&](const Formula::Top&) { return sn_atom(r); },
            [&](const Formula::Bot&) { return sn_atom(r); },
            [&](const Formula::Imp& n) -> FormulaPtr {
              Name a = fresh_reserved("a", d);
              Name q = fresh_reserved("q", d);
              Name f = fresh_reserved("f", d);
              FormulaPtr inner = forall_tree(
                  f, mk_imp(go(n.l, tvv(f), d + 1),
                            go(n.r, mk_app("PSubst", {tvv(q), tvv(a), tvv(f)}), d + 1)));
              FormulaPtr quant = forall_tree(
                  a, forall_tree(
                         q, mk_imp(red_star(r, mk_app("ImpI", {tvv(a), tvv(q)})),
                                   std::move(inner))));
              return mk_and(sn_atom(r), std::move(quant));
            },
            [&](const Formula::And& n) -> FormulaPtr {
              Name p1 = fresh_reserved("p1", d);
              Name p2 = fresh_reserved("p2", d);
              FormulaPtr quant = forall_tree(
                  p1, forall_tree(
                          p2, mk_imp(red_star(r, mk_app("AndI", {tvv(p1), tvv(p2)})),
                                     mk_and(go(n.l, tvv(p1), d + 1),
                                            go(n.r, tvv(p2), d + 1)))));
              return mk_and(sn_atom(r), std::move(quant));
            },
            [&](const Formula::Or& n) -> FormulaPtr {
              Name p1 = fresh_reserved("p1", d);
              Name p2 = fresh_reserved("p2", d);
              FormulaPtr c1 = forall_tree(
                  p1, mk_imp(red_star(r, mk_app("OrI1", {tvv(p1)})),
                             go(n.l, tvv(p1), d + 1)));
              FormulaPtr c2 = forall_tree(
                  p2, mk_imp(red_star(r, mk_app("OrI2", {tvv(p2)})),
                             go(n.r, tvv(p2), d + 1)));
              return mk_and_chain({sn_atom(r), std::move(c1), std::move(c2)});
            },
            [&](const Formula::Forall& n) -> FormulaPtr {
              const SortInterp* si = spec.base.sort(n.sort);
              if (!si) throw InputError("no interpretation for sort " + n.sort);
              Name v = fresh_reserved("v", d);
              Name q = fresh_reserved("q", d);
              Name t = fresh_reserved("t", d);
              Name xs = star_name(n.var);
              FormulaPtr guard =
                  mk_and(relativize(spec.base, n.sort, mk_var(xs, si->target)),
                         mk_atom("Term", {tvv(t), tree_to_term(codec.encode_sort(n.sort))}));
              FormulaPtr inner = mk_forall(
                  xs, si->target,
                  forall_tree(t, mk_imp(std::move(guard),
                                        go(n.body,
                                           mk_app("TSubst", {tvv(q), tvv(v), tvv(t)}),
                                           d + 1))));
              FormulaPtr quant = forall_tree(
                  v, forall_tree(
                         q, mk_imp(red_star(r, mk_app("ForallI", {tvv(v), tvv(q)})),
                                   std::move(inner))));
              return mk_and(sn_atom(r), std::move(quant));
            },
            [&](const Formula::Exists& n) -> FormulaPtr {
              const SortInterp* si = spec.base.sort(n.sort);
              if (!si) throw InputError("no interpretation for sort " + n.sort);
              Name q = fresh_reserved("q", d);
              Name t = fresh_reserved("t", d);
              Name xs = star_name(n.var);
              FormulaPtr inner = mk_exists(
                  xs, si->target,
                  mk_and(relativize(spec.base, n.sort, mk_var(xs, si->target)),
                         go(n.body, tvv(q), d + 1)));
              FormulaPtr quant = forall_tree(
                  q, forall_tree(
                         t, mk_imp(red_star(r, mk_app("ExistsI", {tvv(t), tvv(q)})),
                                   std::move(inner))));
              return mk_and(sn_atom(r), std::move(quant));
            },
        },
        A->node);
  }
};

}  // namespace

FormulaPtr realize(const RealizabilitySpec& spec, const TreeCodec& codec,
                   const FormulaPtr& A, const TermPtr& realizer) {
  return Realizer{spec, codec}.go(A, realizer, 0);
}

FormulaPtr cr_formula(const Name& pi, const FormulaPtr& A) {
  Name a = "_a";
  while (a == pi || occurs_free(a, A)) a += "'";
  Name q = "_q";
  while (q == pi || q == a || occurs_free(q, A)) q += "'";
  auto at = [&](const TermPtr& t) { return subst_in_formula(A, pi, t); };
  FormulaPtr c1 = forall_tree(
      pi, mk_imp(A, mk_and(mk_atom("Proof", {tvv(pi)}), sn_atom(tvv(pi)))));
  FormulaPtr c2 = forall_tree(
      a, mk_imp(mk_atom("ProofVar", {tvv(a)}), at(mk_app("Axiom", {tvv(a)}))));
  FormulaPtr c3 = forall_tree(
      pi, forall_tree(q, mk_imp(mk_and(A, mk_atom("Red", {tvv(pi), tvv(q)})),
                                at(tvv(q)))));
  FormulaPtr c4 = forall_tree(
      pi, mk_imp(mk_and(mk_atom("Elim", {tvv(pi)}),
                        forall_tree(q, mk_imp(mk_atom("Red", {tvv(pi), tvv(q)}),
                                              at(tvv(q))))),
                 A));
  return mk_and_chain({std::move(c1), std::move(c2), std::move(c3), std::move(c4)});
}

FormulaPtr realize_sequent(const RealizabilitySpec& spec, const TreeCodec& codec,
                           const Sequent& seq, const TermPtr& realizer) {
  FormulaPtr folded = seq.goal;
  TermPtr t = realizer;
  for (auto it = seq.hyps.rbegin(); it != seq.hyps.rend(); ++it) {
    folded = mk_imp(it->second, folded);
    t = mk_app("ImpI", {tree_to_term(codec.encode_pvar(it->first)), std::move(t)});
  }
  return realize(spec, codec, folded, t);
}

namespace {

std::string sequent_text(const Sequent& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.hyps.size(); ++i) {
    if (i) s += ", ";
    s += seq.hyps[i].first + " : " + print_formula(seq.hyps[i].second);
  }
  s += s.empty() ? "|- " : " |- ";
  s += print_formula(seq.goal);
  return s;
}

// Slot variables for atomic contexts, avoiding the rule's own variables.
Name slot_var(std::size_t i, const std::vector<std::pair<Name, Name>>& avoid) {
  Name z = "z" + std::to_string(i + 1);
  auto used = [&](const Name& n) {
    return std::any_of(avoid.begin(), avoid.end(),
                       [&](const auto& p) { return p.first == n; });
  };
  while (used(z)) z += "'";
  return z;
}

}  // namespace

std::vector<Obligation> emit_realizability_obligations(const RealizabilitySpec& spec,
                                                       const Theory& T,
                                                       const Theory& U) {
  std::vector<std::string> missing;
  for (const auto& s : T.sig.sorts) {
    if (!spec.base.sort(s)) missing.push_back("sort " + s);
  }
  for (const auto& [f, rank] : T.sig.functions) {
    if (!spec.base.fun(f)) missing.push_back("function " + f);
  }
  for (const auto& [p, argsorts] : T.sig.predicates) {
    if (!spec.realpred(p)) missing.push_back("predicate " + p);
  }
  if (!missing.empty()) {
    std::string msg = "realizability translation does not cover:";
    for (const auto& m : missing) msg += " " + m;
    throw InputError(msg);
  }

  TreeCodec codec(T.sig);
  std::vector<Obligation> out;
  for (const auto& s : T.sig.sorts) {
    const SortInterp* si = spec.base.sort(s);
    out.push_back({"sort-nonempty",
                   mk_exists(si->rel.holes[0], si->target, si->rel.body),
                   "sort " + s});
  }
  for (const auto& [f, rank] : T.sig.functions) {
    std::vector<TermPtr> zs;
    for (std::size_t i = 0; i < rank.args.size(); ++i) {
      zs.push_back(mk_var("z" + std::to_string(i + 1), rank.args[i]));
    }
    std::vector<FormulaPtr> gs;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      gs.push_back(relativize(spec.base, rank.args[i], translate_term(spec.base, zs[i])));
    }
    FormulaPtr concl =
        relativize(spec.base, rank.result, translate_term(spec.base, mk_app(f, zs)));
    FormulaPtr body = gs.empty() ? concl : mk_imp(mk_and_chain(std::move(gs)), concl);
    out.push_back({"fun-closure", close_universally(std::move(body)), "function " + f});
  }
  for (const auto& [p, argsorts] : T.sig.predicates) {
    const RealPred* rp = spec.realpred(p);
    std::vector<FormulaPtr> gs;
    for (std::size_t i = 0; i < rp->holes.size(); ++i) {
      const SortInterp* si = spec.base.sort(argsorts[i]);
      gs.push_back(relativize(spec.base, argsorts[i], mk_var(rp->holes[i], si->target)));
    }
    FormulaPtr cr = cr_formula(rp->pi, rp->body);
    FormulaPtr body = gs.empty() ? cr : mk_imp(mk_and_chain(std::move(gs)), cr);
    out.push_back({"pred-candidate", close_universally(std::move(body)), "predicate " + p});
  }
  for (std::size_t ri = 0; ri < T.rules.size(); ++ri) {
    const RewriteRule& rule = T.rules[ri];
    std::vector<std::pair<FormulaPtr, FormulaPtr>> pairs;
    if (!rule.term_level) {
      pairs.emplace_back(rule.lhs_p, rule.rhs_p);
    } else {
      Name rsort = sort_of(rule.lhs_t, T.sig);
      auto rule_vars = free_vars(rule.lhs_t);
      for (const auto& [p, argsorts] : T.sig.predicates) {
        for (std::size_t j = 0; j < argsorts.size(); ++j) {
          if (argsorts[j] != rsort) continue;
          std::vector<TermPtr> la, ra;
          for (std::size_t i = 0; i < argsorts.size(); ++i) {
            if (i == j) {
              la.push_back(rule.lhs_t);
              ra.push_back(rule.rhs_t);
            } else {
              TermPtr z = mk_var(slot_var(i, rule_vars), argsorts[i]);
              la.push_back(z);
              ra.push_back(z);
            }
          }
          pairs.emplace_back(mk_atom(p, std::move(la)), mk_atom(p, std::move(ra)));
        }
      }
    }
    for (const auto& [A, A2] : pairs) {
      Name pi = "p";
      FormulaPtr eqv = forall_tree(
          pi, mk_iff(realize(spec, codec, A, tvv(pi)), realize(spec, codec, A2, tvv(pi))));
      out.push_back({"rule-congruence",
                     close_universally(
                         relativization_guard(spec.base, free_vars(A), std::move(eqv))),
                     "rule " + std::to_string(ri + 1) + ": " + print_formula(A) +
                         " == " + print_formula(A2)});
    }
  }
  for (auto& ob : out) {
    check_formula_sorts(ob.formula, U.sig);
    if (!is_closed(ob.formula)) {
      throw Error("emitted obligation is not closed: " + print_formula(ob.formula));
    }
  }
  return out;
}

RealStatement typing_term_statement(const RealizabilitySpec& spec,
                                    const Signature& T, const TermPtr& t) {
  Name s = sort_of(t, T);
  FormulaPtr body = relativize(spec.base, s, translate_term(spec.base, t));
  return {"typing-term",
          close_universally(relativization_guard(spec.base, free_vars(t), std::move(body))),
          print_term(t)};
}

RealStatement typing_formula_statement(const RealizabilitySpec& spec,
                                       const TreeCodec& codec, const FormulaPtr& A) {
  Name pi = "p";
  FormulaPtr body = cr_formula(pi, realize(spec, codec, A, tvv(pi)));
  return {"typing-formula",
          close_universally(relativization_guard(spec.base, free_vars(A), std::move(body))),
          print_formula(A)};
}

namespace {

RealStatement normalization_of(const RealizabilitySpec& spec, FormulaPtr realized,
                               const std::vector<std::pair<Name, Name>>& fv,
                               std::string kind, std::string provenance) {
  Name pi = "p";
  std::vector<FormulaPtr> lhs;
  for (const auto& [x, s] : fv) {
    const SortInterp* si = spec.base.sort(s);
    if (!si) throw InputError("no interpretation for sort " + s);
    lhs.push_back(relativize(spec.base, s, mk_var(star_name(x), si->target)));
  }
  lhs.push_back(std::move(realized));
  FormulaPtr body =
      forall_tree(pi, mk_imp(mk_and_chain(std::move(lhs)), sn_atom(tvv(pi))));
  return {std::move(kind), close_universally(std::move(body)), std::move(provenance)};
}

}  // namespace

RealStatement normalization_statement(const RealizabilitySpec& spec,
                                      const TreeCodec& codec, const FormulaPtr& A) {
  return normalization_of(spec, realize(spec, codec, A, tvv("p")), free_vars(A),
                          "normalization", print_formula(A));
}

RealStatement normalization_sequent_statement(const RealizabilitySpec& spec,
                                              const TreeCodec& codec,
                                              const Sequent& seq) {
  return normalization_of(spec, realize_sequent(spec, codec, seq, tvv("p")),
                          free_vars(seq), "normalization-sequent", sequent_text(seq));
}

RealStatement existence_statement(const RealizabilitySpec& spec,
                                  const TreeCodec& codec, const Sequent& seq,
                                  const ProofPtr& proof) {
  TermPtr enc = tree_to_term(codec.encode_proof(proof));
  FormulaPtr body = realize_sequent(spec, codec, seq, enc);
  return {"existence",
          close_universally(
              relativization_guard(spec.base, free_vars(seq), std::move(body))),
          sequent_text(seq)};
}

RealizabilitySpec parse_realizability_spec(const SExpr& e, const Signature& T,
                                           const Signature& U) {
  RealizabilitySpec spec;
  std::vector<SExpr> extra;
  spec.base = parse_interp_spec(e, T, U, &extra);
  for (const SExpr& entry : extra) {
    if (entry.head() != "realpred") {
      fail_at(entry, "unknown realizability entry " + entry.head());
    }
    if (entry.size() != 5) {
      fail_at(entry, "expected (realpred <p> ((<z> …)) (<pi>) <formula>)");
    }
    const Name p = entry.at(1).text;
    const std::vector<Name>* argsorts = T.predicate(p);
    if (!entry.at(1).atom || !argsorts) fail_at(entry.at(1), "unknown predicate symbol");
    if (spec.realpred(p)) fail_at(entry, "duplicate realpred entry " + p);
    if (!U.has_sort(kTreeSort)) {
      fail_at(entry, "target theory does not provide the tree sort");
    }
    if (entry.at(2).atom || entry.at(2).size() != 1) {
      fail_at(entry.at(2), "expected ((<z> …))");
    }
    const SExpr& holes_sx = entry.at(2).at(0);
    const SExpr& pi_sx = entry.at(3);
    if (pi_sx.atom || pi_sx.size() != 1 || !pi_sx.at(0).atom) {
      fail_at(pi_sx, "expected (<pi>)");
    }
    RealPred rp;
    rp.pi = pi_sx.at(0).text;
    if (!rp.pi.empty() && rp.pi[0] == '_') {
      fail_at(pi_sx.at(0), "names starting with _ are reserved");
    }
    SortCtx ctx{&U, {}, {{rp.pi, Name(kTreeSort)}}};
    if (holes_sx.atom) fail_at(holes_sx, "expected a hole list");
    if (holes_sx.size() != argsorts->size()) {
      fail_at(holes_sx, "expected " + std::to_string(argsorts->size()) + " holes");
    }
    for (std::size_t j = 0; j < holes_sx.size(); ++j) {
      const SExpr& h = holes_sx.at(j);
      if (!h.atom) fail_at(h, "hole must be a name");
      if (!h.text.empty() && h.text[0] == '_') {
        fail_at(h, "names starting with _ are reserved");
      }
      if (h.text == rp.pi ||
          std::find(rp.holes.begin(), rp.holes.end(), h.text) != rp.holes.end()) {
        fail_at(h, "duplicate hole " + h.text);
      }
      const SortInterp* si = spec.base.sort((*argsorts)[j]);
      if (!si) fail_at(entry, "no sort entry for " + (*argsorts)[j]);
      ctx.free.emplace(h.text, si->target);
      rp.holes.push_back(h.text);
    }
    rp.body = parse_formula_sx(entry.at(4), ctx);
    for (const auto& [n, s] : free_vars(rp.body)) {
      if (n != rp.pi &&
          std::find(rp.holes.begin(), rp.holes.end(), n) == rp.holes.end()) {
        fail_at(entry.at(4), "template has a free variable besides its holes: " + n);
      }
    }
    spec.realpreds.emplace_back(p, std::move(rp));
  }
  return spec;
}

RealizabilitySpec parse_realizability_spec_text(const std::string& text,
                                                const Signature& T,
                                                const Signature& U) {
  return parse_realizability_spec(parse_sexpr(text), T, U);
}

}  // namespace demod
