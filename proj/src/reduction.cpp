#include "demod/reduction.hpp"

#include <functional>
#include <map>
#include <set>

namespace demod {

namespace {

std::vector<ProofPtr> proof_children(const ProofPtr& p) {
  return std::visit(
      overloaded{
          [](const PAxiom&) -> std::vector<ProofPtr> { return {}; },
          [](const PLam& x) -> std::vector<ProofPtr> { return {x.body}; },
          [](const PApp& x) -> std::vector<ProofPtr> { return {x.fn, x.arg}; },
          [](const PPair& x) -> std::vector<ProofPtr> { return {x.fst, x.snd}; },
          [](const PFst& x) -> std::vector<ProofPtr> { return {x.p}; },
          [](const PSnd& x) -> std::vector<ProofPtr> { return {x.p}; },
          [](const PInl& x) -> std::vector<ProofPtr> { return {x.p}; },
          [](const PInr& x) -> std::vector<ProofPtr> { return {x.p}; },
          [](const PCase& x) -> std::vector<ProofPtr> { return {x.scrut, x.lbody, x.rbody}; },
          [](const PTopI&) -> std::vector<ProofPtr> { return {}; },
          [](const PBotE& x) -> std::vector<ProofPtr> { return {x.p}; },
          [](const PTLam& x) -> std::vector<ProofPtr> { return {x.body}; },
          [](const PTApp& x) -> std::vector<ProofPtr> { return {x.fn}; },
          [](const PWit& x) -> std::vector<ProofPtr> { return {x.body}; },
          [](const PExElim& x) -> std::vector<ProofPtr> { return {x.scrut, x.body}; },
      },
      *p);
}

ProofPtr with_child(const ProofPtr& p, int i, const ProofPtr& c) {
  return std::visit(
      overloaded{
          [&](const PAxiom&) -> ProofPtr { return p; },
          [&](const PLam& x) -> ProofPtr { return mk_proof(PLam{x.hyp, c}); },
          [&](const PApp& x) -> ProofPtr {
            return mk_proof(i == 0 ? PApp{c, x.arg} : PApp{x.fn, c});
          },
          [&](const PPair& x) -> ProofPtr {
            return mk_proof(i == 0 ? PPair{c, x.snd} : PPair{x.fst, c});
          },
          [&](const PFst&) -> ProofPtr { return mk_proof(PFst{c}); },
          [&](const PSnd&) -> ProofPtr { return mk_proof(PSnd{c}); },
          [&](const PInl&) -> ProofPtr { return mk_proof(PInl{c}); },
          [&](const PInr&) -> ProofPtr { return mk_proof(PInr{c}); },
          [&](const PCase& x) -> ProofPtr {
            PCase y = x;
            if (i == 0) y.scrut = c;
            if (i == 1) y.lbody = c;
            if (i == 2) y.rbody = c;
            return mk_proof(y);
          },
          [&](const PTopI&) -> ProofPtr { return p; },
          [&](const PBotE&) -> ProofPtr { return mk_proof(PBotE{c}); },
          [&](const PTLam& x) -> ProofPtr { return mk_proof(PTLam{x.var, x.sort, c}); },
          [&](const PTApp& x) -> ProofPtr { return mk_proof(PTApp{c, x.arg}); },
          [&](const PWit& x) -> ProofPtr { return mk_proof(PWit{x.witness, c}); },
          [&](const PExElim& x) -> ProofPtr {
            PExElim y = x;
            if (i == 0) y.scrut = c;
            if (i == 1) y.body = c;
            return mk_proof(y);
          },
      },
      *p);
}

ProofPtr replace_at(const ProofPtr& p, const std::vector<int>& path, std::size_t k,
                    const ProofPtr& sub) {
  if (k == path.size()) return sub;
  std::vector<ProofPtr> cs = proof_children(p);
  return with_child(p, path[k], replace_at(cs[path[k]], path, k + 1, sub));
}

}  // namespace

std::optional<std::pair<std::string, ProofPtr>> root_reduct(const ProofPtr& p) {
  using R = std::optional<std::pair<std::string, ProofPtr>>;
  return std::visit(
      overloaded{
          [&](const PApp& x) -> R {
            if (const PLam* l = proof_as<PLam>(x.fn))
              return {{"beta", subst_proof(l->body, l->hyp, x.arg)}};
            return std::nullopt;
          },
          [&](const PFst& x) -> R {
            if (const PPair* pr = proof_as<PPair>(x.p)) return {{"fst", pr->fst}};
            return std::nullopt;
          },
          [&](const PSnd& x) -> R {
            if (const PPair* pr = proof_as<PPair>(x.p)) return {{"snd", pr->snd}};
            return std::nullopt;
          },
          [&](const PCase& x) -> R {
            if (const PInl* l = proof_as<PInl>(x.scrut))
              return {{"case-inl", subst_proof(x.lbody, x.lhyp, l->p)}};
            if (const PInr* r = proof_as<PInr>(x.scrut))
              return {{"case-inr", subst_proof(x.rbody, x.rhyp, r->p)}};
            return std::nullopt;
          },
          [&](const PTApp& x) -> R {
            if (const PTLam* l = proof_as<PTLam>(x.fn))
              return {{"tbeta", subst_term_in_proof(l->body, l->var, x.arg)}};
            return std::nullopt;
          },
          [&](const PExElim& x) -> R {
            if (const PWit* w = proof_as<PWit>(x.scrut))
              return {{"unpack",
                       subst_proof(subst_term_in_proof(x.body, x.var, w->witness), x.hyp,
                                   w->body)}};
            return std::nullopt;
          },
          [&](const auto&) -> R { return std::nullopt; },
      },
      *p);
}

std::vector<ReductionStep> step(const ProofPtr& root) {
  std::vector<ReductionStep> out;
  std::vector<int> path;
  std::function<void(const ProofPtr&)> go = [&](const ProofPtr& p) {
    if (auto r = root_reduct(p))
      out.push_back({root, replace_at(root, path, 0, r->second), r->first, path});
    std::vector<ProofPtr> cs = proof_children(p);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      path.push_back(static_cast<int>(i));
      go(cs[i]);
      path.pop_back();
    }
  };
  go(root);
  return out;
}

bool is_normal(const ProofPtr& p) { return step(p).empty(); }

std::vector<ProofPtr> redn(const ProofPtr& p, std::size_t n) {
  std::vector<ProofPtr> layer{p};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<ProofPtr> next;
    std::set<std::string> seen;
    for (const ProofPtr& q : layer)
      for (const ReductionStep& s : step(q))
        if (seen.insert(print_proof(s.target)).second) next.push_back(s.target);
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return layer;
}

SnVerdict sn_check(const ProofPtr& p, std::size_t bound) {
  if (bound < 1) throw InputError("sn_check: bound must be at least 1");
  struct CycleHit {
    std::vector<ProofPtr> cycle;
  };
  struct BoundHit {};
  std::map<std::string, std::size_t> memo;
  std::vector<std::pair<std::string, ProofPtr>> on_path;
  std::function<std::size_t(const ProofPtr&, std::size_t)> longest =
      [&](const ProofPtr& q, std::size_t depth) -> std::size_t {
    std::string key = proof_canon_key(q);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    for (std::size_t i = 0; i < on_path.size(); ++i) {
      if (on_path[i].first == key) {
        std::vector<ProofPtr> cyc;
        for (std::size_t j = i; j < on_path.size(); ++j) cyc.push_back(on_path[j].second);
        cyc.push_back(q);
        throw CycleHit{std::move(cyc)};
      }
    }
    std::vector<ReductionStep> ss = step(q);
    if (ss.empty()) {
      memo.emplace(key, 0);
      return 0;
    }
    if (depth == bound) throw BoundHit{};
    on_path.emplace_back(key, q);
    std::size_t best = 0;
    for (const ReductionStep& s : ss) best = std::max(best, 1 + longest(s.target, depth + 1));
    on_path.pop_back();
    memo.emplace(key, best);
    return best;
  };
  SnVerdict v;
  try {
    v.status = SnVerdict::Status::StronglyNormalizing;
    v.longest = longest(p, 0);
  } catch (CycleHit& c) {
    v.status = SnVerdict::Status::CycleFound;
    v.cycle = std::move(c.cycle);
  } catch (BoundHit&) {
    v.status = SnVerdict::Status::BoundExceeded;
    v.bound = bound;
  }
  return v;
}

std::pair<std::vector<ReductionStep>, bool> reduce_trace(const ProofPtr& p, std::size_t fuel) {
  std::vector<ReductionStep> trace;
  ProofPtr cur = p;
  for (std::size_t i = 0; i < fuel; ++i) {
    std::vector<ReductionStep> ss = step(cur);
    if (ss.empty()) return {trace, true};
    trace.push_back(ss.front());
    cur = ss.front().target;
  }
  return {trace, step(cur).empty()};
}

}  // namespace demod
