import pytest
from hypothesis import given
from hypothesis import strategies as st

from alpay_workbench.builtins import builtin
from alpay_workbench.dynamics import theorem1_audit
from alpay_workbench.errors import FormulaSyntaxError, UnknownIdentifierError
from alpay_workbench.generate import RandomAlgebraParams, random_algebra
from alpay_workbench.logic import (ALL_STATES_CONVERGE, EXISTS_STATE_SATISFYING, UNIQUE_GLOBAL_ATTRACTOR, And, Fixed,
                                   Implies, InSet, Modal, Not, Or, PsiGeq, PsiTop, StateIs, check_claim,
                                   format_formula, model_check, parse_formula)
from conftest import ALGEBRA_NAMES, formulas
from oracles import path_check

SMALL = [n for n in ALGEBRA_NAMES if len(builtin(n).states) <= 8]


def sat(alg, f):
    return set(model_check(alg, f))


# parsing

def test_parse_examples():
    assert parse_formula("AF[phi] fixed") == Modal("AF", "phi", Fixed())
    assert parse_formula("EF[any] (psi >= 5)") == Modal("EF", "any", PsiGeq("5"))
    assert parse_formula("AG[any] not fixed") == Modal("AG", "any", Not(Fixed()))


def test_precedence_and_associativity():
    f = parse_formula("fixed or psi_top and not fixed -> state = 0 -> in left")
    assert f == Implies(Or(Fixed(), And(PsiTop(), Not(Fixed()))), Implies(StateIs("0"), InSet("left")))
    assert parse_formula("EX[phi] fixed and fixed") == And(Modal("EX", "phi", Fixed()), Fixed())


def test_quoted_identifiers():
    assert parse_formula('state = "and"') == StateIs("and")
    assert parse_formula("state = 5'") == StateIs("5'")
    assert parse_formula("psi >= 1/2") == PsiGeq("1/2")
    assert format_formula(StateIs("a b")) == 'state = "a b"'


@pytest.mark.parametrize("text, col", [("AF[phi fixed", 8), ("fixed and", 10), ("EX[foo] fixed", 4),
                                       ("psi > 3", 5), ("(fixed", 7), ("blah", 1), ("fixed fixed", 7)])
def test_syntax_errors_carry_location(text, col):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.line == 1 and info.value.column == col


def test_multiline_error_location():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("fixed and\n  ??")
    assert (info.value.line, info.value.column) == (2, 3)


@given(st.sampled_from(ALGEBRA_NAMES).flatmap(lambda n: formulas(builtin(n))))
def test_format_parse_round_trip(f):
    assert parse_formula(format_formula(f)) == f


# model checking

def test_model_check_examples():
    c5 = builtin("COUNTER5")
    assert sat(c5, "AF[phi] fixed") == set(c5.states)
    assert sat(c5, "EF[any] (psi >= 5)") == set(c5.states)
    c3 = builtin("CYCLE3")
    assert sat(c3, "AG[any] (psi >= 0)") == set(c3.states)
    assert sat(c3, "EF[any] fixed") == set(c3.states)


def test_model_check_on_badloop():
    bl = builtin("BADLOOP")
    assert sat(bl, "AF[phi] fixed") == {"t"}
    assert sat(bl, "EG[phi] not fixed") == {"a", "b"}
    assert sat(bl, "psi_top") == {"t"}


def test_results_keep_declaration_order():
    assert model_check(builtin("COUNTER5"), "not state = 3").states == ("0", "1", "2", "4", "5")


def test_named_sets_and_environment():
    tp = builtin("TWOPEAKS")
    assert sat(tp, "in left") == set(tp.named_sets["left"])
    assert set(model_check(tp, "in mine", {"mine": ["0", "1'"]})) == {"0", "1'"}
    with pytest.raises(UnknownIdentifierError):
        model_check(tp, "in nowhere")
    with pytest.raises(UnknownIdentifierError):
        model_check(tp, "state = 99")


@pytest.mark.parametrize("name", SMALL)
@given(data=st.data())
def test_fixpoints_match_path_enumeration_on_builtins(name, data):
    alg = builtin(name)
    f = data.draw(formulas(alg, max_leaves=4))
    assert sat(alg, f) == path_check(alg, f)


@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 2**32), st.data())
def test_fixpoints_match_path_enumeration_on_random(n, family, seed, data):
    alg = random_algebra(RandomAlgebraParams(n, family, seed))
    if len(alg.states) > 8:
        return
    f = data.draw(formulas(alg, max_leaves=4))
    assert sat(alg, f) == path_check(alg, f)


def test_deadlocked_states_make_universal_operators_vacuous():
    # a monoid with no nonzero generator leaves the "any" relation empty
    from dataclasses import replace

    c5 = builtin("COUNTER5")
    dead = replace(c5, monoid=replace(c5.monoid, generators=()))
    assert sat(dead, "AX[any] not fixed") == set(c5.states)
    assert sat(dead, "EX[any] fixed") == set()
    assert sat(dead, "AF[any] state = 3") == set(c5.states)
    assert sat(dead, "EG[any] fixed") == set()
    assert sat(dead, "AF[any] state = 3") == path_check(dead, parse_formula("AF[any] state = 3"))


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
@given(data=st.data())
def test_ctl_laws(name, data):
    alg = builtin(name)
    f = data.draw(formulas(alg, max_leaves=3))
    g = data.draw(formulas(alg, max_leaves=3))
    r = data.draw(st.sampled_from(["phi", "any"]))
    X = set(alg.states)
    F = sat(alg, f)

    def m(op, sub):
        return sat(alg, Modal(op, r, sub))

    # dualities
    assert m("AX", f) == X - m("EX", Not(f))
    assert m("AF", f) == X - m("EG", Not(f))
    assert m("AG", f) == X - m("EF", Not(f))
    # fixpoint unfoldings
    assert m("EF", f) == F | sat(alg, Modal("EX", r, Modal("EF", r, f)))
    assert m("EG", f) == F & sat(alg, Modal("EX", r, Modal("EG", r, f)))
    assert m("AG", f) == F & sat(alg, Modal("AX", r, Modal("AG", r, f)))
    # monotonicity: f implies (f or g)
    for op in ("EX", "AX", "EF", "AF", "EG", "AG"):
        assert m(op, f) <= m(op, Or(f, g))
    # boolean sanity
    assert sat(alg, Implies(f, g)) == (X - F) | sat(alg, g)


@pytest.mark.parametrize("name", [n for n in ALGEBRA_NAMES if n != "BADLOOP"])
def test_af_fixed_is_everything_when_audit_passes(name):
    alg = builtin(name)
    assert theorem1_audit(alg).passed
    assert sat(alg, "AF[phi] fixed") == set(alg.states)


@given(st.integers(1, 6), st.integers(0, 5), st.integers(0, 2**32), st.sampled_from([1, 2]))
def test_af_fixed_on_random(n, family, seed, copies):
    alg = random_algebra(RandomAlgebraParams(n, family, seed, copies))
    assert sat(alg, "AF[phi] fixed") == set(alg.states)


# claims

def test_unique_attractor_claims():
    r = check_claim(builtin("COUNTER5"), UNIQUE_GLOBAL_ATTRACTOR)
    assert r.verdict and r.attractors == ["5"] and r.witness is not None
    r = check_claim(builtin("TWOPEAKS"), UNIQUE_GLOBAL_ATTRACTOR)
    assert not r.verdict and set(r.attractors) == {"5", "5'"}
    state, traj = r.counterexample
    assert traj.final_state != r.attractors[0]


def test_convergence_claims():
    assert check_claim(builtin("TWOPEAKS"), ALL_STATES_CONVERGE).verdict
    r = check_claim(builtin("CYCLE3"), EXISTS_STATE_SATISFYING, "fixed")
    assert r.verdict and r.witness[0] in builtin("CYCLE3").states
    r = check_claim(builtin("COUNTER5"), EXISTS_STATE_SATISFYING, "psi >= 6")
    assert not r.verdict and r.counterexample is not None


def test_claim_errors():
    with pytest.raises(ValueError):
        check_claim(builtin("COUNTER5"), "no-such-claim")
    with pytest.raises(ValueError):
        check_claim(builtin("COUNTER5"), EXISTS_STATE_SATISFYING)


def test_claims_on_cycling_algebra():
    r = check_claim(builtin("BADLOOP"), ALL_STATES_CONVERGE)
    assert not r.verdict
    state, traj = r.counterexample
    assert state == "a" and traj.cycle() == ["a", "b"]
    assert not check_claim(builtin("BADLOOP"), UNIQUE_GLOBAL_ATTRACTOR).verdict
