#include "demod/premodel.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "demod/enumerate.hpp"
#include "demod/syntax_io.hpp"

namespace demod {

namespace {

bool is_elim(const ProofPtr& p) {
  return proof_as<PApp>(p) || proof_as<PFst>(p) || proof_as<PSnd>(p) ||
         proof_as<PCase>(p) || proof_as<PBotE>(p) || proof_as<PTApp>(p) ||
         proof_as<PExElim>(p);
}

// Proofs reachable from p (p included), deduplicated up to alpha; second
// component is false when the cap was hit.
std::pair<std::vector<ProofPtr>, bool> reachable_proofs(const ProofPtr& p, std::size_t cap) {
  std::vector<ProofPtr> seen{p};
  std::unordered_set<std::string> mark{proof_canon_key(p)};
  std::deque<ProofPtr> q{p};
  while (!q.empty()) {
    ProofPtr x = q.front();
    q.pop_front();
    for (const ReductionStep& s : step(x)) {
      if (!mark.insert(proof_canon_key(s.target)).second) continue;
      if (seen.size() >= cap) return {std::move(seen), false};
      seen.push_back(s.target);
      q.push_back(s.target);
    }
  }
  return {std::move(seen), true};
}

std::vector<ProofPtr> one_step_targets(const ProofPtr& p) {
  std::vector<ProofPtr> out;
  for (const ReductionStep& s : step(p)) {
    bool dup = false;
    for (const ProofPtr& t : out) dup = dup || proof_alpha_equal(t, s.target);
    if (!dup) out.push_back(s.target);
  }
  return out;
}

Assignment extended(const Assignment& phi, const Name& x, const Name& v) {
  Assignment out = phi;
  out.emplace_back(x, v);
  return out;
}

void for_assignments(const PreModel& m, const std::vector<std::pair<Name, Name>>& vars,
                     std::size_t i, Assignment& phi,
                     const std::function<void(const Assignment&)>& fn) {
  if (i == vars.size()) {
    fn(phi);
    return;
  }
  for (const Name& v : m.carrier(vars[i].second)) {
    phi.emplace_back(vars[i].first, v);
    for_assignments(m, vars, i + 1, phi, fn);
    phi.pop_back();
  }
}

std::string show_assignment(const Assignment& phi) {
  std::string out = "[";
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (i) out += " ";
    out += phi[i].first + ":=" + phi[i].second;
  }
  return out + "]";
}

}  // namespace

const char* member_name(Member m) {
  switch (m) {
    case Member::Yes: return "member";
    case Member::No: return "non-member";
    default: return "unknown";
  }
}

const std::vector<Name>& PreModel::carrier(const Name& sort) const {
  for (const auto& [s, elems] : carriers)
    if (s == sort) return elems;
  throw InputError("premodel: no carrier for sort " + sort);
}

Name PreModel::app(const Name& fn, const std::vector<Name>& args) const {
  for (const auto& [f, table] : funs) {
    if (f != fn) continue;
    auto hit = table.find(args);
    if (hit == table.end()) throw InputError("premodel: " + fn + " undefined on a tuple");
    return hit->second;
  }
  throw InputError("premodel: no interpretation for function " + fn);
}

const Candidate& PreModel::pred(const Name& p, const std::vector<Name>& args) const {
  for (const auto& [q, table] : preds) {
    if (q != p) continue;
    auto hit = table.find(args);
    if (hit == table.end()) throw InputError("premodel: " + p + " undefined on a tuple");
    return hit->second;
  }
  throw InputError("premodel: no interpretation for predicate " + p);
}

void PreModel::validate() const {
  if (!theory) throw InputError("premodel: missing theory");
  const Signature& sig = theory->sig;
  for (const Name& s : sig.sorts)
    if (carrier(s).empty()) throw InputError("premodel: empty carrier for sort " + s);
  // Totality: every tuple over the carriers must be mapped.
  for (const auto& [f, rank] : sig.functions) {
    std::vector<std::pair<Name, Name>> vars;
    for (std::size_t i = 0; i < rank.args.size(); ++i)
      vars.emplace_back("_" + std::to_string(i), rank.args[i]);
    Assignment phi;
    for_assignments(*this, vars, 0, phi, [&](const Assignment& a) {
      std::vector<Name> tuple;
      for (const auto& [_, v] : a) tuple.push_back(v);
      Name r = app(f, tuple);
      const std::vector<Name>& c = carrier(rank.result);
      if (std::find(c.begin(), c.end(), r) == c.end())
        throw InputError("premodel: " + f + " maps outside its carrier");
    });
  }
  for (const auto& [p, argsorts] : sig.predicates) {
    std::vector<std::pair<Name, Name>> vars;
    for (std::size_t i = 0; i < argsorts.size(); ++i)
      vars.emplace_back("_" + std::to_string(i), argsorts[i]);
    Assignment phi;
    for_assignments(*this, vars, 0, phi, [&](const Assignment& a) {
      std::vector<Name> tuple;
      for (const auto& [_, v] : a) tuple.push_back(v);
      pred(p, tuple);
    });
  }
}

Name eval_term_m(const PreModel& m, const TermPtr& t, const Assignment& phi) {
  if (const Term::Var* v = as_var(t)) {
    for (auto it = phi.rbegin(); it != phi.rend(); ++it)
      if (it->first == v->name) return it->second;
    throw InputError("premodel: unassigned variable " + v->name);
  }
  const Term::App* a = as_app(t);
  std::vector<Name> args;
  for (const TermPtr& x : a->args) args.push_back(eval_term_m(m, x, phi));
  return m.app(a->fn, args);
}

Member candidate_member(const Candidate& c, const PreModel& m, const ProofPtr& pi,
                        const PmBounds& b) {
  if (c.tag == "sn") {
    SnVerdict v = sn_check(pi, b.sn_bound);
    switch (v.status) {
      case SnVerdict::Status::StronglyNormalizing: return Member::Yes;
      case SnVerdict::Status::CycleFound: return Member::No;
      default: return Member::Unknown;
    }
  }
  if (c.tag == "normal") return is_normal(pi) ? Member::Yes : Member::No;
  if (c.tag == "empty-plus-vars")
    return proof_as<PAxiom>(pi) ? Member::Yes : Member::No;
  if (c.tag == "interp") return interp_membership(m, c.formula, {}, pi, b);
  if (c.tag == "custom") return c.custom(pi);
  throw InputError("premodel: unknown candidate tag " + c.tag);
}

Member interp_membership(const PreModel& m, const FormulaPtr& a, const Assignment& phi,
                         const ProofPtr& pi, const PmBounds& b) {
  if (const auto* at = std::get_if<Formula::Atom>(&a->node)) {
    std::vector<Name> args;
    for (const TermPtr& t : at->args) args.push_back(eval_term_m(m, t, phi));
    return candidate_member(m.pred(at->pred, args), m, pi, b);
  }

  SnVerdict sv = sn_check(pi, b.sn_bound);
  if (sv.status == SnVerdict::Status::CycleFound) return Member::No;
  if (sv.status == SnVerdict::Status::BoundExceeded) return Member::Unknown;
  if (std::get_if<Formula::Top>(&a->node) || std::get_if<Formula::Bot>(&a->node))
    return Member::Yes;

  auto [reach, complete] = reachable_proofs(pi, b.reach_cap);
  bool unknown = !complete;

  auto check = [&](const FormulaPtr& f, const Assignment& p, const ProofPtr& q) {
    return interp_membership(m, f, p, q, b);
  };

  if (const auto* im = std::get_if<Formula::Imp>(&a->node)) {
    for (const ProofPtr& r : reach) {
      const PLam* l = proof_as<PLam>(r);
      if (!l) continue;
      unknown = true;  // the inner quantifier is approximated by the corpus
      if (!b.corpus) continue;
      for (const ProofPtr& arg : *b.corpus) {
        if (check(im->l, phi, arg) != Member::Yes) continue;
        Member inner = check(im->r, phi, subst_proof(l->body, l->hyp, arg));
        if (inner == Member::No) return Member::No;
      }
    }
    return unknown ? Member::Unknown : Member::Yes;
  }
  if (const auto* an = std::get_if<Formula::And>(&a->node)) {
    for (const ProofPtr& r : reach) {
      const PPair* pr = proof_as<PPair>(r);
      if (!pr) continue;
      Member m1 = check(an->l, phi, pr->fst);
      Member m2 = check(an->r, phi, pr->snd);
      if (m1 == Member::No || m2 == Member::No) return Member::No;
      unknown = unknown || m1 == Member::Unknown || m2 == Member::Unknown;
    }
    return unknown ? Member::Unknown : Member::Yes;
  }
  if (const auto* od = std::get_if<Formula::Or>(&a->node)) {
    for (const ProofPtr& r : reach) {
      Member inner = Member::Yes;
      if (const PInl* il = proof_as<PInl>(r)) inner = check(od->l, phi, il->p);
      else if (const PInr* ir = proof_as<PInr>(r)) inner = check(od->r, phi, ir->p);
      else continue;
      if (inner == Member::No) return Member::No;
      unknown = unknown || inner == Member::Unknown;
    }
    return unknown ? Member::Unknown : Member::Yes;
  }
  if (const auto* fa = std::get_if<Formula::Forall>(&a->node)) {
    std::vector<TermPtr> terms =
        enumerate_terms(m.theory->sig, fa->sort, {}, b.term_bound);
    for (const ProofPtr& r : reach) {
      const PTLam* tl = proof_as<PTLam>(r);
      if (!tl) continue;
      for (const TermPtr& t : terms) {
        ProofPtr body = subst_term_in_proof(tl->body, tl->var, t);
        for (const Name& v : m.carrier(fa->sort)) {
          Member inner = check(fa->body, extended(phi, fa->var, v), body);
          if (inner == Member::No) return Member::No;
          unknown = unknown || inner == Member::Unknown;
        }
      }
    }
    return unknown ? Member::Unknown : Member::Yes;
  }
  const auto* ex = std::get_if<Formula::Exists>(&a->node);
  for (const ProofPtr& r : reach) {
    const PWit* w = proof_as<PWit>(r);
    if (!w) continue;
    bool found = false, inner_unknown = false;
    for (const Name& v : m.carrier(ex->sort)) {
      Member inner = check(ex->body, extended(phi, ex->var, v), w->body);
      found = found || inner == Member::Yes;
      inner_unknown = inner_unknown || inner == Member::Unknown;
    }
    if (!found && !inner_unknown) return Member::No;
    unknown = unknown || (!found && inner_unknown);
  }
  return unknown ? Member::Unknown : Member::Yes;
}

bool AxiomReport::all_passed() const {
  for (const Row& r : rows)
    if (!r.passed) return false;
  return true;
}

AxiomReport check_candidate_axioms(const Candidate& c, const PreModel& m,
                                   const std::vector<ProofPtr>& corpus,
                                   const PmBounds& b) {
  AxiomReport rep;
  AxiomReport::Row sn{"sn", true, {}, 0};
  AxiomReport::Row vars{"variables", true, {}, 0};
  AxiomReport::Row closed{"reduction-closed", true, {}, 0};
  AxiomReport::Row elims{"eliminations", true, {}, 0};

  for (const ProofPtr& p : corpus) {
    Member mp = candidate_member(c, m, p, b);

    if (mp == Member::Yes) {
      SnVerdict v = sn_check(p, b.sn_bound);
      if (v.status == SnVerdict::Status::CycleFound) {
        sn.passed = false;
        sn.counterexamples.push_back(p);
      } else if (v.status == SnVerdict::Status::BoundExceeded) {
        ++sn.unknown;
      }
    } else if (mp == Member::Unknown) {
      ++sn.unknown;
    }

    if (proof_as<PAxiom>(p)) {
      if (mp == Member::No) {
        vars.passed = false;
        vars.counterexamples.push_back(p);
      } else if (mp == Member::Unknown) {
        ++vars.unknown;
      }
    }

    if (mp == Member::Yes) {
      for (const ProofPtr& t : one_step_targets(p)) {
        Member mt = candidate_member(c, m, t, b);
        if (mt == Member::No) {
          closed.passed = false;
          closed.counterexamples.push_back(p);
        } else if (mt == Member::Unknown) {
          ++closed.unknown;
        }
      }
    } else if (mp == Member::Unknown) {
      ++closed.unknown;
    }

    if (is_elim(p)) {
      bool all_yes = true, any_unknown = false;
      for (const ProofPtr& t : one_step_targets(p)) {
        Member mt = candidate_member(c, m, t, b);
        all_yes = all_yes && mt == Member::Yes;
        any_unknown = any_unknown || mt == Member::Unknown;
      }
      if (all_yes) {
        if (mp == Member::No) {
          elims.passed = false;
          elims.counterexamples.push_back(p);
        } else if (mp == Member::Unknown) {
          ++elims.unknown;
        }
      } else if (any_unknown) {
        ++elims.unknown;
      }
    }
  }

  rep.rows = {std::move(sn), std::move(vars), std::move(closed), std::move(elims)};
  return rep;
}

CongruenceReport check_premodel_congruence(const PreModel& m,
                                           const std::vector<RewriteRule>& rules,
                                           const std::vector<ProofPtr>& corpus,
                                           const PmBounds& b) {
  CongruenceReport rep;
  const Signature& sig = m.theory->sig;

  auto compare = [&](std::size_t idx, const FormulaPtr& lhs, const FormulaPtr& rhs,
                     const std::string& where) {
    std::vector<std::pair<Name, Name>> vars = free_vars(lhs);
    for (const auto& [n, s] : free_vars(rhs)) {
      bool seen = false;
      for (const auto& [n2, _] : vars) seen = seen || n2 == n;
      if (!seen) vars.emplace_back(n, s);
    }
    Assignment phi;
    for_assignments(m, vars, 0, phi, [&](const Assignment& a) {
      for (const ProofPtr& p : corpus) {
        Member ml = interp_membership(m, lhs, a, p, b);
        Member mr = interp_membership(m, rhs, a, p, b);
        ++rep.checked;
        if (ml == Member::Unknown || mr == Member::Unknown) {
          ++rep.unknown;
        } else if (ml != mr) {
          rep.disagreements.push_back({idx, where + " " + show_assignment(a), p, ml, mr});
        }
      }
    });
  };

  for (std::size_t i = 0; i < rules.size(); ++i) {
    const RewriteRule& r = rules[i];
    if (!r.term_level) {
      compare(i, r.lhs_p, r.rhs_p, "prop");
      continue;
    }
    // Lift a term rule through every atomic context with a matching slot.
    Name s = sort_of(r.lhs_t, sig);
    for (const auto& [pname, argsorts] : sig.predicates) {
      for (std::size_t slot = 0; slot < argsorts.size(); ++slot) {
        if (argsorts[slot] != s) continue;
        std::vector<TermPtr> la, ra;
        for (std::size_t j = 0; j < argsorts.size(); ++j) {
          if (j == slot) {
            la.push_back(r.lhs_t);
            ra.push_back(r.rhs_t);
          } else {
            TermPtr z = mk_var("_z" + std::to_string(j), argsorts[j]);
            la.push_back(z);
            ra.push_back(z);
          }
        }
        compare(i, mk_atom(pname, la), mk_atom(pname, ra),
                pname + " slot " + std::to_string(slot));
      }
    }
  }
  return rep;
}

PreModel parse_premodel(const SExpr& e, const Theory& th) {
  if (e.head() != "premodel") fail_at(e, "expected (premodel ...)");
  PreModel m;
  m.theory = &th;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& item = e.at(i);
    std::string hd = item.head();
    if (hd == "carrier") {
      if (item.size() != 3 || !item.at(1).atom || item.at(2).atom)
        fail_at(item, "carrier must be (carrier sort (elem ...))");
      std::vector<Name> elems;
      for (const SExpr& x : item.at(2).items) {
        if (!x.atom) fail_at(x, "carrier element must be an atom");
        elems.push_back(x.text);
      }
      m.carriers.emplace_back(item.at(1).text, std::move(elems));
    } else if (hd == "fun") {
      if (item.size() < 2 || !item.at(1).atom) fail_at(item, "fun must be (fun f cases...)");
      std::map<std::vector<Name>, Name> table;
      for (std::size_t j = 2; j < item.size(); ++j) {
        const SExpr& cs = item.at(j);
        if (cs.atom || cs.size() != 2 || cs.at(0).atom || !cs.at(1).atom)
          fail_at(cs, "fun case must be ((elems) elem)");
        std::vector<Name> tuple;
        for (const SExpr& x : cs.at(0).items) tuple.push_back(x.text);
        table[tuple] = cs.at(1).text;
      }
      m.funs.emplace_back(item.at(1).text, std::move(table));
    } else if (hd == "pred") {
      if (item.size() < 2 || !item.at(1).atom) fail_at(item, "pred must be (pred p cases...)");
      std::map<std::vector<Name>, Candidate> table;
      for (std::size_t j = 2; j < item.size(); ++j) {
        const SExpr& cs = item.at(j);
        if (cs.atom || cs.size() != 2 || cs.at(0).atom)
          fail_at(cs, "pred case must be ((elems) tag)");
        std::vector<Name> tuple;
        for (const SExpr& x : cs.at(0).items) tuple.push_back(x.text);
        Candidate c;
        const SExpr& tag = cs.at(1);
        if (tag.atom) {
          c.tag = tag.text;
          if (c.tag != "sn" && c.tag != "normal" && c.tag != "empty-plus-vars")
            fail_at(tag, "unknown candidate tag " + c.tag);
        } else if (tag.head() == "interp" && tag.size() == 2) {
          c.tag = "interp";
          SortCtx ctx;
          ctx.sig = &th.sig;
          c.formula = parse_formula_sx(tag.at(1), ctx);
        } else {
          fail_at(tag, "candidate tag must be sn, normal, empty-plus-vars, or (interp A)");
        }
        table[tuple] = std::move(c);
      }
      m.preds.emplace_back(item.at(1).text, std::move(table));
    } else {
      fail_at(item, "unknown premodel item " + hd);
    }
  }
  m.validate();
  return m;
}

PreModel parse_premodel_text(const std::string& text, const Theory& th) {
  return parse_premodel(parse_sexpr(text), th);
}

}  // namespace demod
