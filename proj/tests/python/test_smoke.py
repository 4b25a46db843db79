import os

import pytest

import demod

DATA = os.environ.get("DEMOD_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def read(name):
    with open(os.path.join(DATA, name)) as f:
        return f.read()


THEORY = read("mini-arith.thy")


def test_check_identity():
    assert demod.check(THEORY, read("identity.prf")) == "imp-intro"


def test_check_modulo_rewrite():
    # goal P(z + 0) closes from hypothesis P(z) by the rule alone
    assert demod.check(THEORY, read("mini-arith-id.prf")) == "axiom"


def test_check_rejects():
    bad = "(proof (goal bot) (term topI))"
    with pytest.raises(ValueError):
        demod.check(THEORY, bad)


def test_sn_verdicts():
    assert demod.sn("(lam a (var a))")[0] == "StronglyNormalizing"
    omega = "(app (lam a (app (var a) (var a))) (lam a (app (var a) (var a))))"
    assert demod.sn(omega, bound=10)[0] == "CycleFound"


def test_normalize():
    assert demod.normalize("(app (lam a (var a)) topI)") == "topI"


def test_translate_doubles_successor():
    out = demod.translate(THEORY, THEORY, read("double.ispec"), "(P (s z))")
    assert out == "(P (s (s z)))"


def test_obligations_tagged():
    obs = demod.obligations(THEORY, THEORY, read("double.ispec"))
    tags = {t for t, _, _ in obs}
    assert "fun-closure" in tags and "sort-nonempty" in tags


def test_encode_decode_roundtrip():
    term = "(lam a (pair (var a) topI))"
    tree = demod.encode(THEORY, term)
    assert demod.decode(THEORY, tree) == term


def test_eval_sn_of_identity_code():
    # encoded (lam a (var a)); numerals written out, the term parser has no sugar
    code = "(ImpI (Axiom (s 0)) (Axiom (s 0)))"
    verdict, _ = demod.eval(THEORY, f"(SN {code})")
    assert verdict == "True"


def test_realize_mentions_sn():
    out = demod.realize(THEORY, read("mini-arith.rspec"), "top", pi="p")
    assert "SN" in out


def test_emit_s_is_a_theory():
    assert demod.emit_s(THEORY).startswith("(theory")
