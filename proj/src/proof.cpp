#include "demod/proof.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "demod/names.hpp"
#include "demod/syntax_io.hpp"

namespace demod {

ProofPtr mk_proof(ProofTerm p) { return std::make_shared<const ProofTerm>(std::move(p)); }

namespace {

ProofPtr ax(const Name& a) { return mk_proof(PAxiom{a}); }

template <class FP, class FT>
void walk(const ProofPtr& p, const FP& on_pvar, const FT& on_tvar) {
  // Visits every proof-variable and term-variable name, binders included.
  auto on_term = [&](const TermPtr& t, const auto& self) -> void {
    if (const Term::Var* v = as_var(t)) { on_tvar(v->name); return; }
    for (const TermPtr& a : as_app(t)->args) self(a, self);
  };
  auto term = [&](const TermPtr& t) { on_term(t, on_term); };
  std::visit(overloaded{
                 [&](const PAxiom& x) { on_pvar(x.name); },
                 [&](const PLam& x) { on_pvar(x.hyp); walk(x.body, on_pvar, on_tvar); },
                 [&](const PApp& x) { walk(x.fn, on_pvar, on_tvar); walk(x.arg, on_pvar, on_tvar); },
                 [&](const PPair& x) { walk(x.fst, on_pvar, on_tvar); walk(x.snd, on_pvar, on_tvar); },
                 [&](const PFst& x) { walk(x.p, on_pvar, on_tvar); },
                 [&](const PSnd& x) { walk(x.p, on_pvar, on_tvar); },
                 [&](const PInl& x) { walk(x.p, on_pvar, on_tvar); },
                 [&](const PInr& x) { walk(x.p, on_pvar, on_tvar); },
                 [&](const PCase& x) {
                   walk(x.scrut, on_pvar, on_tvar);
                   on_pvar(x.lhyp); walk(x.lbody, on_pvar, on_tvar);
                   on_pvar(x.rhyp); walk(x.rbody, on_pvar, on_tvar);
                 },
                 [&](const PTopI&) {},
                 [&](const PBotE& x) { walk(x.p, on_pvar, on_tvar); },
                 [&](const PTLam& x) { on_tvar(x.var); walk(x.body, on_pvar, on_tvar); },
                 [&](const PTApp& x) { walk(x.fn, on_pvar, on_tvar); term(x.arg); },
                 [&](const PWit& x) { term(x.witness); walk(x.body, on_pvar, on_tvar); },
                 [&](const PExElim& x) {
                   walk(x.scrut, on_pvar, on_tvar);
                   on_tvar(x.var); on_pvar(x.hyp);
                   walk(x.body, on_pvar, on_tvar);
                 },
             },
             *p);
}

bool pvar_anywhere(const ProofPtr& p, const Name& a) {
  bool found = false;
  walk(p, [&](const Name& n) { found = found || n == a; }, [](const Name&) {});
  return found;
}

bool tvar_anywhere(const ProofPtr& p, const Name& x) {
  bool found = false;
  walk(p, [](const Name&) {}, [&](const Name& n) { found = found || n == x; });
  return found;
}

bool term_has_var(const TermPtr& t, const Name& x) {
  if (const Term::Var* v = as_var(t)) return v->name == x;
  for (const TermPtr& a : as_app(t)->args)
    if (term_has_var(a, x)) return true;
  return false;
}

}  // namespace

std::optional<Name> max_pvar_name(const ProofPtr& p) {
  std::optional<Name> m;
  walk(p, [&](const Name& n) { m = name_max(m, n); }, [](const Name&) {});
  return m;
}

std::optional<Name> max_tvar_name(const ProofPtr& p) {
  std::optional<Name> m;
  walk(p, [](const Name&) {}, [&](const Name& n) { m = name_max(m, n); });
  return m;
}

std::size_t proof_size(const ProofPtr& p) {
  std::size_t n = 0;
  std::visit(overloaded{
                 [&](const PAxiom&) { n = 1; },
                 [&](const PLam& x) { n = 1 + proof_size(x.body); },
                 [&](const PApp& x) { n = 1 + proof_size(x.fn) + proof_size(x.arg); },
                 [&](const PPair& x) { n = 1 + proof_size(x.fst) + proof_size(x.snd); },
                 [&](const PFst& x) { n = 1 + proof_size(x.p); },
                 [&](const PSnd& x) { n = 1 + proof_size(x.p); },
                 [&](const PInl& x) { n = 1 + proof_size(x.p); },
                 [&](const PInr& x) { n = 1 + proof_size(x.p); },
                 [&](const PCase& x) {
                   n = 1 + proof_size(x.scrut) + proof_size(x.lbody) + proof_size(x.rbody);
                 },
                 [&](const PTopI&) { n = 1; },
                 [&](const PBotE& x) { n = 1 + proof_size(x.p); },
                 [&](const PTLam& x) { n = 1 + proof_size(x.body); },
                 [&](const PTApp& x) { n = 1 + proof_size(x.fn) + term_size(x.arg); },
                 [&](const PWit& x) { n = 1 + term_size(x.witness) + proof_size(x.body); },
                 [&](const PExElim& x) { n = 1 + proof_size(x.scrut) + proof_size(x.body); },
             },
             *p);
  return n;
}

namespace {

void free_vars_rec(const ProofPtr& p, std::vector<Name>& pbound, std::vector<Name>& tbound,
                   std::vector<Name>& pout, std::vector<Name>& tout) {
  auto seen = [](const std::vector<Name>& v, const Name& n) {
    return std::find(v.begin(), v.end(), n) != v.end();
  };
  auto add_p = [&](const Name& n) {
    if (!seen(pbound, n) && !seen(pout, n)) pout.push_back(n);
  };
  auto term = [&](const TermPtr& t, const auto& self) -> void {
    if (const Term::Var* v = as_var(t)) {
      if (!seen(tbound, v->name) && !seen(tout, v->name)) tout.push_back(v->name);
      return;
    }
    for (const TermPtr& a : as_app(t)->args) self(a, self);
  };
  auto add_t = [&](const TermPtr& t) { term(t, term); };
  std::visit(
      overloaded{
          [&](const PAxiom& x) { add_p(x.name); },
          [&](const PLam& x) {
            pbound.push_back(x.hyp);
            free_vars_rec(x.body, pbound, tbound, pout, tout);
            pbound.pop_back();
          },
          [&](const PApp& x) {
            free_vars_rec(x.fn, pbound, tbound, pout, tout);
            free_vars_rec(x.arg, pbound, tbound, pout, tout);
          },
          [&](const PPair& x) {
            free_vars_rec(x.fst, pbound, tbound, pout, tout);
            free_vars_rec(x.snd, pbound, tbound, pout, tout);
          },
          [&](const PFst& x) { free_vars_rec(x.p, pbound, tbound, pout, tout); },
          [&](const PSnd& x) { free_vars_rec(x.p, pbound, tbound, pout, tout); },
          [&](const PInl& x) { free_vars_rec(x.p, pbound, tbound, pout, tout); },
          [&](const PInr& x) { free_vars_rec(x.p, pbound, tbound, pout, tout); },
          [&](const PCase& x) {
            free_vars_rec(x.scrut, pbound, tbound, pout, tout);
            pbound.push_back(x.lhyp);
            free_vars_rec(x.lbody, pbound, tbound, pout, tout);
            pbound.pop_back();
            pbound.push_back(x.rhyp);
            free_vars_rec(x.rbody, pbound, tbound, pout, tout);
            pbound.pop_back();
          },
          [&](const PTopI&) {},
          [&](const PBotE& x) { free_vars_rec(x.p, pbound, tbound, pout, tout); },
          [&](const PTLam& x) {
            tbound.push_back(x.var);
            free_vars_rec(x.body, pbound, tbound, pout, tout);
            tbound.pop_back();
          },
          [&](const PTApp& x) {
            free_vars_rec(x.fn, pbound, tbound, pout, tout);
            add_t(x.arg);
          },
          [&](const PWit& x) {
            add_t(x.witness);
            free_vars_rec(x.body, pbound, tbound, pout, tout);
          },
          [&](const PExElim& x) {
            free_vars_rec(x.scrut, pbound, tbound, pout, tout);
            tbound.push_back(x.var);
            pbound.push_back(x.hyp);
            free_vars_rec(x.body, pbound, tbound, pout, tout);
            pbound.pop_back();
            tbound.pop_back();
          },
      },
      *p);
}

}  // namespace

std::vector<Name> free_proof_vars(const ProofPtr& p) {
  std::vector<Name> pb, tb, po, to;
  free_vars_rec(p, pb, tb, po, to);
  return po;
}

std::vector<Name> free_term_vars(const ProofPtr& p) {
  std::vector<Name> pb, tb, po, to;
  free_vars_rec(p, pb, tb, po, to);
  return to;
}

bool occurs_free_pvar(const ProofPtr& p, const Name& a) {
  std::vector<Name> fv = free_proof_vars(p);
  return std::find(fv.begin(), fv.end(), a) != fv.end();
}

bool occurs_free_tvar(const ProofPtr& p, const Name& x) {
  std::vector<Name> fv = free_term_vars(p);
  return std::find(fv.begin(), fv.end(), x) != fv.end();
}

// --- substitution -----------------------------------------------------------

namespace {

PEnv pdrop(const PEnv& e, const Name& k) {
  PEnv out;
  for (const auto& kv : e)
    if (kv.first != k) out.push_back(kv);
  return out;
}

TermSubst tdrop(const TermSubst& e, const Name& k) {
  TermSubst out;
  for (const auto& kv : e)
    if (kv.first != k) out.push_back(kv);
  return out;
}

const ProofPtr* plookup(const PEnv& e, const Name& k) {
  for (const auto& kv : e)
    if (kv.first == k) return &kv.second;
  return nullptr;
}

bool penv_has_pvar(const PEnv& e, const Name& a) {
  for (const auto& kv : e)
    if (pvar_anywhere(kv.second, a)) return true;
  return false;
}

bool penv_has_tvar(const PEnv& e, const Name& x) {
  for (const auto& kv : e)
    if (tvar_anywhere(kv.second, x)) return true;
  return false;
}

bool tenv_has_tvar(const TermSubst& e, const Name& x) {
  for (const auto& kv : e)
    if (term_has_var(kv.second, x)) return true;
  return false;
}

std::optional<Name> penv_max_pvar(const PEnv& e) {
  std::optional<Name> m;
  for (const auto& kv : e) m = name_max(m, max_pvar_name(kv.second));
  return m;
}

std::optional<Name> penv_max_tvar(const PEnv& e) {
  std::optional<Name> m;
  for (const auto& kv : e) m = name_max(m, max_tvar_name(kv.second));
  return m;
}

std::optional<Name> tenv_max_tvar(const TermSubst& e) {
  std::optional<Name> m;
  for (const auto& kv : e) m = name_max(m, max_var_name(kv.second));
  return m;
}

}  // namespace

ProofPtr usubst(const ProofPtr& p, const PEnv& penv, const TermSubst& tenv) {
  if (penv.empty() && tenv.empty()) return p;
  // Proof binder: drop its key, rename iff it occurs in a surviving proof value.
  auto pbinder = [&](const Name& a, const ProofPtr& body) -> std::pair<Name, ProofPtr> {
    PEnv pe1 = pdrop(penv, a);
    if (!penv_has_pvar(pe1, a)) return {a, usubst(body, pe1, tenv)};
    Name fresh = succ_name(*name_max(name_max(max_pvar_name(body), penv_max_pvar(pe1)), a));
    pe1.emplace_back(a, ax(fresh));
    return {fresh, usubst(body, pe1, tenv)};
  };
  return std::visit(
      overloaded{
          [&](const PAxiom& x) -> ProofPtr {
            if (const ProofPtr* v = plookup(penv, x.name)) return *v;
            return p;
          },
          [&](const PLam& x) -> ProofPtr {
            auto [n, b] = pbinder(x.hyp, x.body);
            return mk_proof(PLam{n, b});
          },
          [&](const PApp& x) -> ProofPtr {
            return mk_proof(PApp{usubst(x.fn, penv, tenv), usubst(x.arg, penv, tenv)});
          },
          [&](const PPair& x) -> ProofPtr {
            return mk_proof(PPair{usubst(x.fst, penv, tenv), usubst(x.snd, penv, tenv)});
          },
          [&](const PFst& x) -> ProofPtr { return mk_proof(PFst{usubst(x.p, penv, tenv)}); },
          [&](const PSnd& x) -> ProofPtr { return mk_proof(PSnd{usubst(x.p, penv, tenv)}); },
          [&](const PInl& x) -> ProofPtr { return mk_proof(PInl{usubst(x.p, penv, tenv)}); },
          [&](const PInr& x) -> ProofPtr { return mk_proof(PInr{usubst(x.p, penv, tenv)}); },
          [&](const PCase& x) -> ProofPtr {
            ProofPtr s = usubst(x.scrut, penv, tenv);
            auto [ln, lb] = pbinder(x.lhyp, x.lbody);
            auto [rn, rb] = pbinder(x.rhyp, x.rbody);
            return mk_proof(PCase{s, ln, lb, rn, rb});
          },
          [&](const PTopI&) -> ProofPtr { return p; },
          [&](const PBotE& x) -> ProofPtr { return mk_proof(PBotE{usubst(x.p, penv, tenv)}); },
          [&](const PTLam& x) -> ProofPtr {
            TermSubst te1 = tdrop(tenv, x.var);
            if (!tenv_has_tvar(te1, x.var) && !penv_has_tvar(penv, x.var))
              return mk_proof(PTLam{x.var, x.sort, usubst(x.body, penv, te1)});
            Name fresh = succ_name(*name_max(
                name_max(max_tvar_name(x.body), name_max(tenv_max_tvar(te1), penv_max_tvar(penv))),
                x.var));
            te1.emplace_back(x.var, mk_var(fresh, x.sort));
            return mk_proof(PTLam{fresh, x.sort, usubst(x.body, penv, te1)});
          },
          [&](const PTApp& x) -> ProofPtr {
            return mk_proof(PTApp{usubst(x.fn, penv, tenv), subst_in_term(x.arg, tenv)});
          },
          [&](const PWit& x) -> ProofPtr {
            return mk_proof(PWit{subst_in_term(x.witness, tenv), usubst(x.body, penv, tenv)});
          },
          [&](const PExElim& x) -> ProofPtr {
            ProofPtr s = usubst(x.scrut, penv, tenv);
            TermSubst te1 = tdrop(tenv, x.var);
            PEnv pe1 = pdrop(penv, x.hyp);
            Name nx = x.var, na = x.hyp;
            if (tenv_has_tvar(te1, x.var) || penv_has_tvar(pe1, x.var)) {
              nx = succ_name(*name_max(
                  name_max(max_tvar_name(x.body), name_max(tenv_max_tvar(te1), penv_max_tvar(pe1))),
                  x.var));
              te1.emplace_back(x.var, mk_var(nx, x.sort));
            }
            if (penv_has_pvar(pe1, x.hyp)) {
              na = succ_name(
                  *name_max(name_max(max_pvar_name(x.body), penv_max_pvar(pe1)), x.hyp));
              pe1.emplace_back(x.hyp, ax(na));
            }
            return mk_proof(PExElim{s, nx, x.sort, na, usubst(x.body, pe1, te1)});
          },
      },
      *p);
}

ProofPtr subst_proof(const ProofPtr& p, const Name& a, const ProofPtr& r) {
  return usubst(p, PEnv{{a, r}}, {});
}

ProofPtr subst_term_in_proof(const ProofPtr& p, const Name& x, const TermPtr& t) {
  return usubst(p, {}, TermSubst{{x, t}});
}

// --- comparison --------------------------------------------------------------

namespace {

void canon_rec(const ProofPtr& p, std::vector<Name>& pb, std::vector<Name>& tb,
               std::ostringstream& os) {
  auto pref = [&](const Name& n) {
    for (std::size_t i = pb.size(); i-- > 0;)
      if (pb[i] == n) { os << "#" << pb.size() - 1 - i; return; }
    os << n;
  };
  auto term = [&](const TermPtr& t, const auto& self) -> void {
    if (const Term::Var* v = as_var(t)) {
      for (std::size_t i = tb.size(); i-- > 0;)
        if (tb[i] == v->name) { os << "#" << tb.size() - 1 - i; return; }
      os << v->name;
      if (v->sort) os << ":" << *v->sort;
      return;
    }
    const Term::App& a = *as_app(t);
    os << "(" << a.fn;
    for (const TermPtr& c : a.args) { os << " "; self(c, self); }
    os << ")";
  };
  auto tprint = [&](const TermPtr& t) { term(t, term); };
  auto srt = [&](const std::optional<Name>& s) { if (s) os << ":" << *s; };
  std::visit(overloaded{
                 [&](const PAxiom& x) { os << "(v "; pref(x.name); os << ")"; },
                 [&](const PLam& x) {
                   os << "(lam ";
                   pb.push_back(x.hyp);
                   canon_rec(x.body, pb, tb, os);
                   pb.pop_back();
                   os << ")";
                 },
                 [&](const PApp& x) {
                   os << "(app ";
                   canon_rec(x.fn, pb, tb, os);
                   os << " ";
                   canon_rec(x.arg, pb, tb, os);
                   os << ")";
                 },
                 [&](const PPair& x) {
                   os << "(pair ";
                   canon_rec(x.fst, pb, tb, os);
                   os << " ";
                   canon_rec(x.snd, pb, tb, os);
                   os << ")";
                 },
                 [&](const PFst& x) { os << "(fst "; canon_rec(x.p, pb, tb, os); os << ")"; },
                 [&](const PSnd& x) { os << "(snd "; canon_rec(x.p, pb, tb, os); os << ")"; },
                 [&](const PInl& x) { os << "(inl "; canon_rec(x.p, pb, tb, os); os << ")"; },
                 [&](const PInr& x) { os << "(inr "; canon_rec(x.p, pb, tb, os); os << ")"; },
                 [&](const PCase& x) {
                   os << "(case ";
                   canon_rec(x.scrut, pb, tb, os);
                   os << " ";
                   pb.push_back(x.lhyp);
                   canon_rec(x.lbody, pb, tb, os);
                   pb.pop_back();
                   os << " ";
                   pb.push_back(x.rhyp);
                   canon_rec(x.rbody, pb, tb, os);
                   pb.pop_back();
                   os << ")";
                 },
                 [&](const PTopI&) { os << "topI"; },
                 [&](const PBotE& x) { os << "(botE "; canon_rec(x.p, pb, tb, os); os << ")"; },
                 [&](const PTLam& x) {
                   os << "(tlam";
                   srt(x.sort);
                   os << " ";
                   tb.push_back(x.var);
                   canon_rec(x.body, pb, tb, os);
                   tb.pop_back();
                   os << ")";
                 },
                 [&](const PTApp& x) {
                   os << "(tapp ";
                   canon_rec(x.fn, pb, tb, os);
                   os << " ";
                   tprint(x.arg);
                   os << ")";
                 },
                 [&](const PWit& x) {
                   os << "(wit ";
                   tprint(x.witness);
                   os << " ";
                   canon_rec(x.body, pb, tb, os);
                   os << ")";
                 },
                 [&](const PExElim& x) {
                   os << "(exelim";
                   srt(x.sort);
                   os << " ";
                   canon_rec(x.scrut, pb, tb, os);
                   os << " ";
                   tb.push_back(x.var);
                   pb.push_back(x.hyp);
                   canon_rec(x.body, pb, tb, os);
                   pb.pop_back();
                   tb.pop_back();
                   os << ")";
                 },
             },
             *p);
}

}  // namespace

std::string proof_canon_key(const ProofPtr& p) {
  std::ostringstream os;
  std::vector<Name> pb, tb;
  canon_rec(p, pb, tb, os);
  return os.str();
}

bool proof_alpha_equal(const ProofPtr& a, const ProofPtr& b) {
  return proof_canon_key(a) == proof_canon_key(b);
}

bool proof_equal(const ProofPtr& a, const ProofPtr& b) {
  if (a->index() != b->index()) return false;
  bool eq = false;
  std::visit(
      overloaded{
          [&](const PAxiom& x) { eq = x.name == std::get<PAxiom>(static_cast<const ProofVariant&>(*b)).name; },
          [&](const PLam& x) {
            const PLam& y = std::get<PLam>(static_cast<const ProofVariant&>(*b));
            eq = x.hyp == y.hyp && proof_equal(x.body, y.body);
          },
          [&](const PApp& x) {
            const PApp& y = std::get<PApp>(static_cast<const ProofVariant&>(*b));
            eq = proof_equal(x.fn, y.fn) && proof_equal(x.arg, y.arg);
          },
          [&](const PPair& x) {
            const PPair& y = std::get<PPair>(static_cast<const ProofVariant&>(*b));
            eq = proof_equal(x.fst, y.fst) && proof_equal(x.snd, y.snd);
          },
          [&](const PFst& x) { eq = proof_equal(x.p, std::get<PFst>(static_cast<const ProofVariant&>(*b)).p); },
          [&](const PSnd& x) { eq = proof_equal(x.p, std::get<PSnd>(static_cast<const ProofVariant&>(*b)).p); },
          [&](const PInl& x) { eq = proof_equal(x.p, std::get<PInl>(static_cast<const ProofVariant&>(*b)).p); },
          [&](const PInr& x) { eq = proof_equal(x.p, std::get<PInr>(static_cast<const ProofVariant&>(*b)).p); },
          [&](const PCase& x) {
            const PCase& y = std::get<PCase>(static_cast<const ProofVariant&>(*b));
            eq = proof_equal(x.scrut, y.scrut) && x.lhyp == y.lhyp &&
                 proof_equal(x.lbody, y.lbody) && x.rhyp == y.rhyp &&
                 proof_equal(x.rbody, y.rbody);
          },
          [&](const PTopI&) { eq = true; },
          [&](const PBotE& x) { eq = proof_equal(x.p, std::get<PBotE>(static_cast<const ProofVariant&>(*b)).p); },
          [&](const PTLam& x) {
            const PTLam& y = std::get<PTLam>(static_cast<const ProofVariant&>(*b));
            eq = x.var == y.var && x.sort == y.sort && proof_equal(x.body, y.body);
          },
          [&](const PTApp& x) {
            const PTApp& y = std::get<PTApp>(static_cast<const ProofVariant&>(*b));
            eq = proof_equal(x.fn, y.fn) && term_equal(x.arg, y.arg);
          },
          [&](const PWit& x) {
            const PWit& y = std::get<PWit>(static_cast<const ProofVariant&>(*b));
            eq = term_equal(x.witness, y.witness) && proof_equal(x.body, y.body);
          },
          [&](const PExElim& x) {
            const PExElim& y = std::get<PExElim>(static_cast<const ProofVariant&>(*b));
            eq = proof_equal(x.scrut, y.scrut) && x.var == y.var && x.sort == y.sort &&
                 x.hyp == y.hyp && proof_equal(x.body, y.body);
          },
      },
      *a);
  return eq;
}

// --- parse / print -----------------------------------------------------------

namespace {

TermPtr parse_term_lax(const SExpr& e, const Signature& sig, std::vector<Name>& tbound) {
  if (e.atom) {
    bool bound = std::find(tbound.begin(), tbound.end(), e.text) != tbound.end();
    if (!bound) {
      if (const FunRank* f = sig.function(e.text)) {
        if (!f->args.empty())
          fail_at(e, "function " + e.text + " expects " + std::to_string(f->args.size()) +
                         " arguments");
        return mk_app(e.text, {});
      }
    }
    return mk_var(e.text, std::nullopt);
  }
  if (e.items.empty()) fail_at(e, "empty term");
  if (!e.at(0).atom) fail_at(e, "term head must be a function symbol");
  const FunRank* f = sig.function(e.at(0).text);
  if (!f) fail_at(e.at(0), "unknown function symbol " + e.at(0).text);
  if (e.size() != f->args.size() + 1)
    fail_at(e, "function " + e.at(0).text + " expects " + std::to_string(f->args.size()) +
                   " arguments, got " + std::to_string(e.size() - 1));
  std::vector<TermPtr> args;
  for (std::size_t i = 1; i < e.size(); ++i) args.push_back(parse_term_lax(e.at(i), sig, tbound));
  return mk_app(e.at(0).text, std::move(args));
}

// Term binder position: either a bare name or (name sort).
std::pair<Name, std::optional<Name>> parse_tbinder(const SExpr& e, const Signature& sig) {
  if (e.atom) return {e.text, std::nullopt};
  if (e.size() == 2 && e.at(0).atom && e.at(1).atom) {
    if (!sig.has_sort(e.at(1).text)) fail_at(e.at(1), "unknown sort " + e.at(1).text);
    return {e.at(0).text, e.at(1).text};
  }
  fail_at(e, "term binder must be x or (x sort)");
}

ProofPtr parse_proof_rec(const SExpr& e, const Signature& sig, std::vector<Name>& tbound) {
  if (e.atom) {
    if (e.text == "topI") return mk_proof(PTopI{});
    fail_at(e, "unknown proof atom " + e.text + " (hypotheses are written (var a))");
  }
  if (e.items.empty() || !e.at(0).atom) fail_at(e, "malformed proof term");
  const std::string& hd = e.at(0).text;
  auto sub = [&](std::size_t i) { return parse_proof_rec(e.at(i), sig, tbound); };
  auto want = [&](std::size_t n) {
    if (e.size() != n)
      fail_at(e, hd + " takes " + std::to_string(n - 1) + " arguments, got " +
                     std::to_string(e.size() - 1));
  };
  if (hd == "var") {
    want(2);
    if (!e.at(1).atom) fail_at(e.at(1), "proof variable must be a name");
    return mk_proof(PAxiom{e.at(1).text});
  }
  if (hd == "lam") {
    want(3);
    if (!e.at(1).atom) fail_at(e.at(1), "lam binder must be a name");
    return mk_proof(PLam{e.at(1).text, sub(2)});
  }
  if (hd == "app") { want(3); auto f = sub(1); return mk_proof(PApp{f, sub(2)}); }
  if (hd == "pair") { want(3); auto f = sub(1); return mk_proof(PPair{f, sub(2)}); }
  if (hd == "fst") { want(2); return mk_proof(PFst{sub(1)}); }
  if (hd == "snd") { want(2); return mk_proof(PSnd{sub(1)}); }
  if (hd == "inl") { want(2); return mk_proof(PInl{sub(1)}); }
  if (hd == "inr") { want(2); return mk_proof(PInr{sub(1)}); }
  if (hd == "botE") { want(2); return mk_proof(PBotE{sub(1)}); }
  if (hd == "case") {
    want(4);
    const SExpr& l = e.at(2);
    const SExpr& r = e.at(3);
    if (l.atom || l.size() != 2 || !l.at(0).atom) fail_at(l, "case branch must be (a p)");
    if (r.atom || r.size() != 2 || !r.at(0).atom) fail_at(r, "case branch must be (a p)");
    ProofPtr s = sub(1);
    ProofPtr lb = parse_proof_rec(l.at(1), sig, tbound);
    ProofPtr rb = parse_proof_rec(r.at(1), sig, tbound);
    return mk_proof(PCase{s, l.at(0).text, lb, r.at(0).text, rb});
  }
  if (hd == "tlam") {
    want(3);
    auto [v, s] = parse_tbinder(e.at(1), sig);
    tbound.push_back(v);
    ProofPtr b = parse_proof_rec(e.at(2), sig, tbound);
    tbound.pop_back();
    return mk_proof(PTLam{v, s, b});
  }
  if (hd == "tapp") {
    want(3);
    ProofPtr f = sub(1);
    return mk_proof(PTApp{f, parse_term_lax(e.at(2), sig, tbound)});
  }
  if (hd == "wit") {
    want(3);
    TermPtr t = parse_term_lax(e.at(1), sig, tbound);
    return mk_proof(PWit{t, sub(2)});
  }
  if (hd == "exelim") {
    want(3);
    const SExpr& b = e.at(2);
    if (b.atom || b.size() != 3 || !b.at(1).atom) fail_at(b, "exelim binder must be (x a p)");
    ProofPtr s = sub(1);
    auto [v, srt] = parse_tbinder(b.at(0), sig);
    tbound.push_back(v);
    ProofPtr body = parse_proof_rec(b.at(2), sig, tbound);
    tbound.pop_back();
    return mk_proof(PExElim{s, v, srt, b.at(1).text, body});
  }
  fail_at(e.at(0), "unknown proof former " + hd);
}

}  // namespace

ProofPtr parse_proof_term(const SExpr& e, const Signature& sig) {
  std::vector<Name> tbound;
  return parse_proof_rec(e, sig, tbound);
}

ProofPtr parse_proof_term(const std::string& text, const Signature& sig) {
  return parse_proof_term(parse_sexpr(text), sig);
}

SExpr proof_to_sx(const ProofPtr& p) {
  auto tb = [](const Name& v, const std::optional<Name>& s) {
    return s ? sx_list({sx_atom(v), sx_atom(*s)}) : sx_atom(v);
  };
  return std::visit(
      overloaded{
          [&](const PAxiom& x) { return sx_list({sx_atom("var"), sx_atom(x.name)}); },
          [&](const PLam& x) {
            return sx_list({sx_atom("lam"), sx_atom(x.hyp), proof_to_sx(x.body)});
          },
          [&](const PApp& x) {
            return sx_list({sx_atom("app"), proof_to_sx(x.fn), proof_to_sx(x.arg)});
          },
          [&](const PPair& x) {
            return sx_list({sx_atom("pair"), proof_to_sx(x.fst), proof_to_sx(x.snd)});
          },
          [&](const PFst& x) { return sx_list({sx_atom("fst"), proof_to_sx(x.p)}); },
          [&](const PSnd& x) { return sx_list({sx_atom("snd"), proof_to_sx(x.p)}); },
          [&](const PInl& x) { return sx_list({sx_atom("inl"), proof_to_sx(x.p)}); },
          [&](const PInr& x) { return sx_list({sx_atom("inr"), proof_to_sx(x.p)}); },
          [&](const PCase& x) {
            return sx_list({sx_atom("case"), proof_to_sx(x.scrut),
                            sx_list({sx_atom(x.lhyp), proof_to_sx(x.lbody)}),
                            sx_list({sx_atom(x.rhyp), proof_to_sx(x.rbody)})});
          },
          [&](const PTopI&) { return sx_atom("topI"); },
          [&](const PBotE& x) { return sx_list({sx_atom("botE"), proof_to_sx(x.p)}); },
          [&](const PTLam& x) {
            return sx_list({sx_atom("tlam"), tb(x.var, x.sort), proof_to_sx(x.body)});
          },
          [&](const PTApp& x) {
            return sx_list({sx_atom("tapp"), proof_to_sx(x.fn), term_to_sx(x.arg)});
          },
          [&](const PWit& x) {
            return sx_list({sx_atom("wit"), term_to_sx(x.witness), proof_to_sx(x.body)});
          },
          [&](const PExElim& x) {
            return sx_list({sx_atom("exelim"), proof_to_sx(x.scrut),
                            sx_list({tb(x.var, x.sort), sx_atom(x.hyp), proof_to_sx(x.body)})});
          },
      },
      *p);
}

std::string print_proof(const ProofPtr& p) { return print_sexpr(proof_to_sx(p)); }

ProofFile parse_proof_file(const std::string& text, const Signature& sig) {
  std::vector<SExpr> forms = parse_sexprs(text);
  if (forms.size() != 1 || forms[0].atom || forms[0].items.empty() || !forms[0].at(0).atom ||
      forms[0].at(0).text != "proof")
    throw InputError("proof file must contain a single (proof ...) form");
  const SExpr& e = forms[0];
  ProofFile pf;
  bool have_goal = false, have_term = false;
  SortCtx ctx;
  ctx.sig = &sig;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& item = e.at(i);
    if (item.atom || item.items.empty() || !item.at(0).atom)
      fail_at(item, "expected (context ...), (goal ...) or (term ...)");
    const std::string& hd = item.at(0).text;
    if (hd == "context") {
      for (std::size_t j = 1; j < item.size(); ++j) {
        const SExpr& h = item.at(j);
        if (h.atom || h.size() != 2 || !h.at(0).atom) fail_at(h, "hypothesis must be (a A)");
        pf.seq.hyps.emplace_back(h.at(0).text, parse_formula_sx(h.at(1), ctx));
      }
    } else if (hd == "goal") {
      if (item.size() != 2) fail_at(item, "goal must be (goal A)");
      pf.seq.goal = parse_formula_sx(item.at(1), ctx);
      have_goal = true;
    } else if (hd == "term") {
      if (item.size() != 2) fail_at(item, "term must be (term p)");
      pf.term = parse_proof_term(item.at(1), sig);
      have_term = true;
    } else {
      fail_at(item.at(0), "unknown proof file item " + hd);
    }
  }
  if (!have_goal) throw InputError("proof file missing (goal ...)");
  if (!have_term) throw InputError("proof file missing (term ...)");
  return pf;
}

std::string print_proof_file(const ProofFile& pf) {
  std::ostringstream os;
  os << "(proof\n  (context";
  for (const auto& [a, f] : pf.seq.hyps) os << " (" << a << " " << print_formula(f) << ")";
  os << ")\n  (goal " << print_formula(pf.seq.goal) << ")\n  (term " << print_proof(pf.term)
     << "))\n";
  return os.str();
}

}  // namespace demod
