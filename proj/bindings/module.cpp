#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "demod/checker.hpp"
#include "demod/codec.hpp"
#include "demod/eval_model.hpp"
#include "demod/interp.hpp"
#include "demod/realize.hpp"
#include "demod/reduction.hpp"
#include "demod/s_axioms.hpp"
#include "demod/syntax_io.hpp"

namespace py = pybind11;
using namespace demod;

// Text-in/text-out surface: every entry point takes source strings and
// returns printed syntax, so no C++ value types cross the boundary.
namespace {

std::string b_check(const std::string& thy, const std::string& prf, std::size_t fuel) {
  Theory th = parse_theory(thy);
  ProofFile pf = parse_proof_file(prf, th.sig);
  return check_proof(th, pf.seq, pf.term, fuel).rule;
}

py::tuple b_sn(const std::string& prf_term, std::size_t bound) {
  ProofPtr p = parse_proof_term(prf_term, Signature{});
  SnVerdict v = sn_check(p, bound);
  switch (v.status) {
    case SnVerdict::Status::StronglyNormalizing:
      return py::make_tuple("StronglyNormalizing", v.longest);
    case SnVerdict::Status::CycleFound:
      return py::make_tuple("CycleFound", v.cycle.size());
    default:
      return py::make_tuple("BoundExceeded", v.bound);
  }
}

std::string b_normalize(const std::string& prf_term, std::size_t fuel) {
  ProofPtr p = parse_proof_term(prf_term, Signature{});
  auto [steps, normal] = reduce_trace(p, fuel);
  if (!normal) throw BudgetError("fuel exhausted");
  return print_proof(steps.empty() ? p : steps.back().target);
}

std::string b_translate(const std::string& thy, const std::string& target,
                        const std::string& spec, const std::string& formula) {
  Theory T = parse_theory(thy);
  Theory U = parse_theory(target);
  InterpretationSpec s = parse_interp_spec_text(spec, T.sig, U.sig);
  return print_formula(translate_formula(s, parse_formula(formula, T.sig)));
}

std::vector<py::tuple> b_obligations(const std::string& thy, const std::string& target,
                                     const std::string& spec) {
  Theory T = parse_theory(thy);
  Theory U = parse_theory(target);
  InterpretationSpec s = parse_interp_spec_text(spec, T.sig, U.sig);
  std::vector<py::tuple> out;
  for (const Obligation& o : emit_interpretation_obligations(s, T, U))
    out.push_back(py::make_tuple(o.tag, print_formula(o.formula), o.provenance));
  return out;
}

std::string b_realize(const std::string& thy, const std::string& spec,
                      const std::string& formula, const std::string& pi) {
  Theory T = parse_theory(thy);
  TreeCodec codec(T.sig);
  Signature U = s_extended_signature(codec.lang(), codec.prs().defs());
  RealizabilitySpec s = parse_realizability_spec_text(spec, T.sig, U);
  FormulaPtr A = parse_formula(formula, T.sig);
  return print_formula(realize(s, codec, A, mk_var(pi, Name(kTreeSort))));
}

py::tuple b_eval(const std::string& thy, const std::string& formula,
                 std::size_t tree_bound, std::size_t sn_bound) {
  Theory T = parse_theory(thy);
  TreeCodec codec(T.sig);
  Signature S = s_extended_signature(codec.lang(), codec.prs().defs());
  EvalVerdict v = eval_formula(codec, parse_formula(formula, S), {tree_bound, sn_bound});
  return py::make_tuple(verdict_name(v.verdict), v.reason);
}

std::string b_encode(const std::string& thy, const std::string& prf_term) {
  Theory T = parse_theory(thy);
  TreeCodec codec(T.sig);
  return print_tree(codec.encode_proof(parse_proof_term(prf_term, T.sig)));
}

std::string b_decode(const std::string& thy, const std::string& tree) {
  Theory T = parse_theory(thy);
  TreeCodec codec(T.sig);
  return print_proof(codec.decode_proof(parse_tree_text(tree, codec.lang())));
}

std::string b_emit_s(const std::string& thy) {
  Theory T = parse_theory(thy);
  TreeCodec codec(T.sig);
  return print_theory(emit_s_axioms(codec.lang(), codec.prs().defs(), {}));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "deduction-modulo proof kernel";
  py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);
  py::register_exception<BudgetError>(mod, "BudgetError", PyExc_RuntimeError);
  py::register_exception<CheckError>(mod, "CheckError", PyExc_ValueError);

  mod.def("check", &b_check, py::arg("theory"), py::arg("proof"),
          py::arg("fuel") = kDefaultFuel,
          "Check a proof file against a theory; returns the root rule name.");
  mod.def("sn", &b_sn, py::arg("proof_term"), py::arg("bound") = 50,
          "Strong-normalization verdict for a bare proof term.");
  mod.def("normalize", &b_normalize, py::arg("proof_term"),
          py::arg("fuel") = kDefaultFuel, "Leftmost-outermost normal form.");
  mod.def("translate", &b_translate, py::arg("theory"), py::arg("target"),
          py::arg("spec"), py::arg("formula"),
          "Relativizing translation of a formula along an interpretation.");
  mod.def("obligations", &b_obligations, py::arg("theory"), py::arg("target"),
          py::arg("spec"), "Interpretation obligations as (tag, formula, origin).");
  mod.def("realize", &b_realize, py::arg("theory"), py::arg("spec"),
          py::arg("formula"), py::arg("pi") = "p",
          "Realizability translation with realizer variable pi.");
  mod.def("eval", &b_eval, py::arg("theory"), py::arg("formula"),
          py::arg("tree_bound") = 6, py::arg("sn_bound") = 50,
          "Tree-model verdict (True/False/Unknown, reason).");
  mod.def("encode", &b_encode, py::arg("theory"), py::arg("proof_term"),
          "Encode a proof term as a tree.");
  mod.def("decode", &b_decode, py::arg("theory"), py::arg("tree"),
          "Decode a tree back to a proof term.");
  mod.def("emit_s", &b_emit_s, py::arg("theory"),
          "The syntactic-constructions theory for a source theory.");
}
