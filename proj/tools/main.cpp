#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "demod/checker.hpp"
#include "demod/codec.hpp"
#include "demod/enumerate.hpp"
#include "demod/eval_model.hpp"
#include "demod/interp.hpp"
#include "demod/premodel.hpp"
#include "demod/realize.hpp"
#include "demod/reduction.hpp"
#include "demod/s_axioms.hpp"
#include "demod/syntax_io.hpp"

namespace {

using namespace demod;

// Exit protocol: 0 accept/True/pass, 1 reject/False/fail, 2 Unknown or an
// exhausted bound, 3 malformed input.
constexpr int kPass = 0, kFail = 1, kUnknown = 2, kBadInput = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  std::string path;  // empty: stdout
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
};

Theory load_theory(const std::string& path) { return parse_theory(slurp(path)); }

std::string show_path(const std::vector<int>& path) {
  std::string s;
  for (int i : path) s += (s.empty() ? "" : ".") + std::to_string(i);
  return s.empty() ? "root" : s;
}

int run_check(const std::string& thy, const std::string& prf, std::size_t fuel,
              const Output& out) {
  Theory th = load_theory(thy);
  ProofFile pf = parse_proof_file(slurp(prf), th.sig);
  try {
    Derivation d = check_proof(th, pf.seq, pf.term, fuel);
    std::ostringstream ss;
    ss << "accepted " << d.rule << ": " << print_formula(d.shown);
    out.write(ss.str());
    return kPass;
  } catch (const CheckError& e) {
    out.write(std::string("rejected: ") + e.what());
    return kFail;
  }
}

int run_reduce(const std::string& thy, const std::string& prf, std::size_t fuel,
               const Output& out) {
  Theory th = load_theory(thy);
  ProofFile pf = parse_proof_file(slurp(prf), th.sig);
  auto [steps, normal] = reduce_trace(pf.term, fuel);
  std::ostringstream ss;
  ss << print_proof(pf.term) << "\n";
  for (const ReductionStep& s : steps)
    ss << "  " << s.rule << " @ " << show_path(s.path) << " -> " << print_proof(s.target)
       << "\n";
  ss << (normal ? "normal form reached" : "fuel exhausted") << " after " << steps.size()
     << " steps";
  out.write(ss.str());
  return normal ? kPass : kUnknown;
}

int run_sn(const std::string& thy, const std::string& prf, std::size_t bound,
           const Output& out) {
  Theory th = load_theory(thy);
  ProofFile pf = parse_proof_file(slurp(prf), th.sig);
  SnVerdict v = sn_check(pf.term, bound);
  switch (v.status) {
    case SnVerdict::Status::StronglyNormalizing:
      out.write("StronglyNormalizing " + std::to_string(v.longest));
      return kPass;
    case SnVerdict::Status::CycleFound: {
      std::ostringstream ss;
      ss << "CycleFound";
      for (const ProofPtr& p : v.cycle) ss << "\n  " << print_proof(p);
      out.write(ss.str());
      return kFail;
    }
    default:
      out.write("BoundExceeded " + std::to_string(v.bound));
      return kUnknown;
  }
}

int run_translate(const std::string& thy, const std::string& target,
                  const std::string& spec_path, const std::string& formula,
                  const Output& out) {
  Theory T = load_theory(thy);
  Theory U = load_theory(target);
  InterpretationSpec spec = parse_interp_spec_text(slurp(spec_path), T.sig, U.sig);
  FormulaPtr A = parse_formula(formula, T.sig);
  out.write(print_formula(translate_formula(spec, A)));
  return kPass;
}

bool spec_has_realpreds(const SExpr& e) {
  for (const SExpr& item : e.items)
    if (item.head() == "realpred") return true;
  return false;
}

std::string show_obligations(const std::vector<Obligation>& obs) {
  std::ostringstream ss;
  for (const Obligation& o : obs)
    ss << ";; " << o.tag << " — " << o.provenance << "\n" << print_formula(o.formula)
       << "\n";
  return ss.str();
}

int run_obligations(const std::string& thy, const std::string& target,
                    const std::string& spec_path, const Output& out) {
  Theory T = load_theory(thy);
  SExpr spec_sx = parse_sexpr(slurp(spec_path));
  if (spec_has_realpreds(spec_sx)) {
    TreeCodec codec(T.sig);
    Theory U;
    U.sig = s_extended_signature(codec.lang(), codec.prs().defs());
    RealizabilitySpec spec = parse_realizability_spec(spec_sx, T.sig, U.sig);
    out.write(show_obligations(emit_realizability_obligations(spec, T, U)));
    return kPass;
  }
  if (target.empty())
    throw InputError("obligations: --target is required for an interpretation spec");
  Theory U = load_theory(target);
  InterpretationSpec spec = parse_interp_spec(spec_sx, T.sig, U.sig);
  out.write(show_obligations(emit_interpretation_obligations(spec, T, U)));
  return kPass;
}

int run_realize(const std::string& thy, const std::string& spec_path,
                const std::string& formula, const std::string& sequent_file,
                const Name& pi, const Output& out) {
  Theory T = load_theory(thy);
  TreeCodec codec(T.sig);
  Signature U = s_extended_signature(codec.lang(), codec.prs().defs());
  RealizabilitySpec spec = parse_realizability_spec_text(slurp(spec_path), T.sig, U);
  TermPtr realizer = mk_var(pi, Name(kTreeSort));
  if (!sequent_file.empty()) {
    ProofFile pf = parse_proof_file(slurp(sequent_file), T.sig);
    out.write(print_formula(realize_sequent(spec, codec, pf.seq, realizer)));
    return kPass;
  }
  FormulaPtr A = parse_formula(formula, T.sig);
  out.write(print_formula(realize(spec, codec, A, realizer)));
  return kPass;
}

int run_eval(const std::string& thy, const std::string& formula,
             const std::string& file, std::size_t tree_bound, std::size_t sn_bound,
             const Output& out) {
  Theory T = load_theory(thy);
  TreeCodec codec(T.sig);
  Signature S = s_extended_signature(codec.lang(), codec.prs().defs());
  std::string text = file.empty() ? formula : slurp(file);
  FormulaPtr F = parse_formula(text, S);
  EvalVerdict v = eval_formula(codec, F, {tree_bound, sn_bound});
  std::string line = verdict_name(v.verdict);
  if (v.verdict == Verdict::Unknown && !v.reason.empty()) line += " (" + v.reason + ")";
  out.write(line);
  if (v.verdict == Verdict::True) return kPass;
  if (v.verdict == Verdict::False) return kFail;
  return kUnknown;
}

int run_emit_s(const std::string& thy, const Output& out) {
  Theory T = load_theory(thy);
  TreeCodec codec(T.sig);
  std::vector<PrimRecDef> defs = codec.prs().defs();
  Theory S = emit_s_axioms(codec.lang(), defs, {});
  out.write(print_theory(S));
  return kPass;
}

int run_encode(const std::string& thy, const std::string& prf, const std::string& term,
               const Output& out) {
  Theory T = load_theory(thy);
  TreeCodec codec(T.sig);
  if (!prf.empty()) {
    ProofFile pf = parse_proof_file(slurp(prf), T.sig);
    out.write(print_tree(codec.encode_proof(pf.term)));
    return kPass;
  }
  if (term.empty()) throw InputError("encode: provide --proof or --term");
  out.write(print_tree(codec.encode_term(parse_term(term, T.sig))));
  return kPass;
}

int run_decode(const std::string& thy, const std::string& tree, const std::string& as,
               const Output& out) {
  Theory T = load_theory(thy);
  TreeCodec codec(T.sig);
  TreePtr t = parse_tree_text(tree, codec.lang());
  if (as == "term") {
    out.write(print_term(codec.decode_term(t)));
  } else {
    out.write(print_proof(codec.decode_proof(t)));
  }
  return kPass;
}

int run_premodel_test(const std::string& thy, const std::string& pm_path,
                      std::size_t bound, std::size_t sn_bound, std::uint64_t seed,
                      std::size_t corpus_cap, const Output& out) {
  Theory T = load_theory(thy);
  PreModel m = parse_premodel_text(slurp(pm_path), T);

  ProofEnumOptions opts;
  opts.max_size = bound;
  std::vector<ProofPtr> corpus = enumerate_proofs(opts);
  if (corpus.size() > corpus_cap) {
    Rng rng(seed);
    std::vector<ProofPtr> sample;
    for (std::size_t i = 0; i < corpus_cap; ++i)
      sample.push_back(corpus[rng.below(corpus.size())]);
    corpus = std::move(sample);
  }

  PmBounds b;
  b.sn_bound = sn_bound;
  b.corpus = &corpus;

  std::ostringstream ss;
  bool ok = true;
  for (const auto& [p, table] : m.preds) {
    for (const auto& [tuple, cand] : table) {
      ss << "candidate " << p << "(";
      for (std::size_t i = 0; i < tuple.size(); ++i) ss << (i ? " " : "") << tuple[i];
      ss << ") [" << cand.tag << "]\n";
      AxiomReport rep = check_candidate_axioms(cand, m, corpus, b);
      for (const AxiomReport::Row& r : rep.rows) {
        ss << "  " << r.axiom << ": " << (r.passed ? "pass" : "FAIL");
        if (r.unknown) ss << " (" << r.unknown << " unknown)";
        if (!r.passed && !r.counterexamples.empty())
          ss << " e.g. " << print_proof(r.counterexamples.front());
        ss << "\n";
        ok = ok && r.passed;
      }
    }
  }
  CongruenceReport cong = check_premodel_congruence(m, T.rules, corpus, b);
  ss << "congruence: " << (cong.passed() ? "pass" : "FAIL") << " (" << cong.checked
     << " cases, " << cong.unknown << " unknown)\n";
  for (const CongruenceReport::Case& c : cong.disagreements)
    ss << "  rule " << c.rule << " " << c.detail << " at " << print_proof(c.pi) << ": "
       << member_name(c.lhs) << " vs " << member_name(c.rhs) << "\n";
  ok = ok && cong.passed();
  out.write(ss.str());
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deduction-modulo proof kernel and tree-model workbench"};
  app.require_subcommand(1);

  std::string theory, target, spec, proof, formula, file, tree, term, premodel, outpath;
  std::string as = "proof", sequent;
  std::size_t fuel = kDefaultFuel, sn_bound = 50, tree_bound = 6, bound = 4;
  std::size_t corpus_cap = 400;
  std::uint64_t seed = 1;
  Name pi = "p";

  auto add_common = [&](CLI::App* c) {
    c->add_option("--theory", theory, "theory file")->required();
    c->add_option("--out", outpath, "write the report here instead of stdout");
  };

  CLI::App* c_check = app.add_subcommand("check", "check a proof file against its sequent");
  add_common(c_check);
  c_check->add_option("proof", proof, "proof file")->required();
  c_check->add_option("--fuel", fuel, "rewrite fuel");

  CLI::App* c_reduce = app.add_subcommand("reduce", "leftmost-outermost reduction trace");
  add_common(c_reduce);
  c_reduce->add_option("proof", proof, "proof file")->required();
  c_reduce->add_option("--fuel", fuel, "maximum steps");

  CLI::App* c_sn = app.add_subcommand("sn", "strong-normalization verdict");
  add_common(c_sn);
  c_sn->add_option("proof", proof, "proof file")->required();
  c_sn->add_option("--sn-bound", sn_bound, "reduction-graph depth bound");

  CLI::App* c_tr = app.add_subcommand("translate", "relativizing translation of a formula");
  add_common(c_tr);
  c_tr->add_option("--target", target, "target theory file")->required();
  c_tr->add_option("--spec", spec, "interpretation spec file")->required();
  c_tr->add_option("formula", formula, "source formula")->required();

  CLI::App* c_ob = app.add_subcommand("obligations", "interpretation proof obligations");
  add_common(c_ob);
  c_ob->add_option("--target", target, "target theory file (interpretation specs)");
  c_ob->add_option("--spec", spec, "interpretation or realizability spec file")->required();

  CLI::App* c_re = app.add_subcommand("realize", "realizability translation");
  add_common(c_re);
  c_re->add_option("--spec", spec, "realizability spec file")->required();
  c_re->add_option("--pi", pi, "realizer variable name");
  c_re->add_option("--sequent", sequent, "proof file whose sequent to realize");
  c_re->add_option("formula", formula, "source formula");

  CLI::App* c_ev = app.add_subcommand("eval", "evaluate a closed formula in the tree model");
  add_common(c_ev);
  c_ev->add_option("formula", formula, "formula text");
  c_ev->add_option("--file", file, "read the formula from a file");
  c_ev->add_option("--tree-bound", tree_bound, "quantifier tree-size bound");
  c_ev->add_option("--sn-bound", sn_bound, "strong-normalization depth bound");

  CLI::App* c_es = app.add_subcommand("emit-s", "emit the syntactic-constructions theory");
  add_common(c_es);

  CLI::App* c_en = app.add_subcommand("encode", "encode a proof or term as a tree");
  add_common(c_en);
  c_en->add_option("--proof", proof, "proof file");
  c_en->add_option("--term", term, "term text");

  CLI::App* c_de = app.add_subcommand("decode", "decode a tree back to syntax");
  add_common(c_de);
  c_de->add_option("tree", tree, "tree text")->required();
  c_de->add_option("--as", as, "proof (default) or term");

  CLI::App* c_pm = app.add_subcommand("premodel-test", "candidate-axiom and congruence report");
  add_common(c_pm);
  c_pm->add_option("--premodel", premodel, "premodel file")->required();
  c_pm->add_option("--bound", bound, "corpus proof-size bound");
  c_pm->add_option("--sn-bound", sn_bound, "strong-normalization depth bound");
  c_pm->add_option("--seed", seed, "corpus subsampling seed");
  c_pm->add_option("--corpus-cap", corpus_cap, "corpus size cap before subsampling");

  CLI11_PARSE(app, argc, argv);

  Output out{outpath};
  try {
    if (c_check->parsed()) return run_check(theory, proof, fuel, out);
    if (c_reduce->parsed()) return run_reduce(theory, proof, fuel, out);
    if (c_sn->parsed()) return run_sn(theory, proof, sn_bound, out);
    if (c_tr->parsed()) return run_translate(theory, target, spec, formula, out);
    if (c_ob->parsed()) return run_obligations(theory, target, spec, out);
    if (c_re->parsed()) {
      if (formula.empty() && sequent.empty())
        throw InputError("realize: provide a formula or --sequent");
      return run_realize(theory, spec, formula, sequent, pi, out);
    }
    if (c_ev->parsed()) {
      if (formula.empty() && file.empty())
        throw InputError("eval: provide a formula or --file");
      return run_eval(theory, formula, file, tree_bound, sn_bound, out);
    }
    if (c_es->parsed()) return run_emit_s(theory, out);
    if (c_en->parsed()) return run_encode(theory, proof, term, out);
    if (c_de->parsed()) return run_decode(theory, tree, as, out);
    if (c_pm->parsed())
      return run_premodel_test(theory, premodel, bound, sn_bound, seed, corpus_cap, out);
  } catch (const BudgetError& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kUnknown;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
