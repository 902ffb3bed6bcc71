from dataclasses import replace
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alpay_workbench import _backend
from alpay_workbench.algebra import (AdjustmentMonoid, EvalOrder, EvalValue, apply, is_fixed_point, net_sum,
                                     structural_problems, validate_algebra)
from alpay_workbench.builtins import builtin
from alpay_workbench.category import embed_category
from alpay_workbench.errors import IllFormedError, OrderMismatchError, UnknownIdentifierError
from conftest import ALGEBRA_NAMES, VALID_NAMES
from oracles import naive_axioms


def with_table(alg, key, value):
    table = dict(alg.monoid.table)
    table[key] = value
    return replace(alg, monoid=replace(alg.monoid, table=table))


def with_action(alg, key, value):
    action = dict(alg.action)
    action[key] = value
    return replace(alg, action=action)


def with_psi(alg, x, literal):
    psi = dict(alg.psi)
    psi[x] = alg.eval_order.value(literal)
    return replace(alg, psi=psi)


def with_phi(alg, x, a):
    phi = dict(alg.phi)
    phi[x] = a
    return replace(alg, phi=phi)


# evaluation orders

def test_integer_order_compares_exactly():
    o = EvalOrder.integer()
    assert o.value(3) < o.value("4")
    assert o.value(-2) <= o.value(-2)


def test_rational_literals_reduce():
    o = EvalOrder.rational()
    assert o.value("2/4") == o.value("1/2")
    assert o.value("1/3") < o.value("1/2")
    assert o.to_literal(Fraction(6, 3)) == "2"
    assert o.to_literal(Fraction(-3, 6)) == "-1/2"


def test_rational_rejects_floats():
    with pytest.raises(OrderMismatchError):
        EvalOrder.rational().value(0.5)


def test_chain_order_follows_label_order():
    o = EvalOrder.chain(["low", "mid", "high"], top="high")
    assert o.value("low") < o.value("mid") < o.value("high")
    assert o.top_value == o.value("high")
    with pytest.raises(OrderMismatchError):
        o.value("unknown")


def test_values_exceeding_top_are_rejected():
    o = EvalOrder.integer(top=5)
    o.value(5)
    with pytest.raises(IllFormedError):
        o.value(6)


def test_values_from_different_orders_do_not_compare():
    with pytest.raises(OrderMismatchError):
        EvalOrder.integer().value(1) < EvalOrder.integer(top=9).value(2)
    with pytest.raises(OrderMismatchError):
        EvalOrder.integer().value(1) < EvalOrder.chain(["a"]).value("a")


@given(st.lists(st.fractions(), min_size=2, max_size=6))
def test_rational_order_is_total(xs):
    o = EvalOrder.rational()
    vals = [o.value(x) for x in xs]
    for a, b in product(vals, repeat=2):
        assert (a < b) + (a == b) + (a > b) == 1
    assert [v.payload for v in sorted(vals)] == sorted(xs)


# apply / net_sum / is_fixed_point

def test_apply_examples():
    c5 = builtin("COUNTER5")
    assert apply(c5, "3", "0") == "3"
    assert apply(c5, "3", "4") == "5"
    assert apply(builtin("CYCLE3"), "2", "2") == "1"
    with pytest.raises(UnknownIdentifierError):
        apply(c5, "9", "0")
    with pytest.raises(UnknownIdentifierError):
        apply(c5, "1", "9")


def test_net_sum_examples():
    m = builtin("COUNTER5").monoid
    assert net_sum(m, []) == "0"
    assert net_sum(m, ["1", "1", "1"]) == "3"
    alg, _ = embed_category(builtin("POSET3"))
    assert net_sum(alg.monoid, ["f", "g"]) == "gf"
    assert net_sum(alg.monoid, ["g", "f"]) == "dead"
    with pytest.raises(UnknownIdentifierError):
        net_sum(m, ["7"])


def test_fixed_points():
    c5 = builtin("COUNTER5")
    assert is_fixed_point(c5, "5")
    assert not is_fixed_point(c5, "0")
    c3 = builtin("CYCLE3")
    assert all(is_fixed_point(c3, x) for x in c3.states)


# validation on the catalogue

@pytest.mark.parametrize("name", VALID_NAMES)
def test_builtins_pass(name):
    report = validate_algebra(builtin(name))
    assert report.passed
    assert report.witnesses == []


def test_badloop_fails_only_strict_progress():
    report = validate_algebra(builtin("BADLOOP"))
    assert report.failed_axioms == ["4.1"]
    subjects = {w.subject for w in report.witnesses}
    assert subjects == {("a",), ("b",)}
    assert all(w.axiom == "4.1" for w in report.witnesses)


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_validation_matches_naive_oracle(name):
    alg = builtin(name)
    assert set(validate_algebra(alg).failed_axioms) == naive_axioms(alg)


def test_fail_verdicts_carry_witnesses(any_builtin):
    report = validate_algebra(any_builtin)
    for axiom, ok in report.verdicts.items():
        assert ok == (not report.witnesses_for(axiom))


def test_validation_is_deterministic(any_builtin):
    assert validate_algebra(any_builtin).to_dict() == validate_algebra(any_builtin).to_dict()


def test_backends_agree_on_reports(any_builtin):
    alg = with_table(any_builtin, (any_builtin.monoid.elements[-1],) * 2, any_builtin.monoid.zero)
    py = validate_algebra(alg, backend="python").to_dict()
    if _backend.compiled_available():
        assert validate_algebra(alg, backend="compiled").to_dict() == py


# mutations

def test_add_mutation_breaks_associativity():
    alg = with_table(builtin("COUNTER5"), ("1", "1"), "3")
    report = validate_algebra(alg)
    assert not report.verdicts["1"]
    assoc = [w for w in report.witnesses_for("1") if w.law == "associativity"]
    assert assoc and all(len(w.subject) == 3 for w in assoc)
    assert any(w.cites(("add", "1", "1")) for w in assoc)


def test_lowering_top_psi_fails_progress_at_4():
    alg = with_psi(builtin("COUNTER5"), "5", 3)
    report = validate_algebra(alg)
    assert not report.verdicts["4.1"]
    assert ("4",) in {w.subject for w in report.witnesses_for("4.1")}


def test_action_mutation_is_cited():
    alg = with_action(builtin("COUNTER5"), ("2", "1"), "2")
    report = validate_algebra(alg)
    assert not report.passed
    assert any(w.cites(("action", "2", "1")) for w in report.witnesses)


def _single_mutations(alg):
    E, X = alg.monoid.elements, alg.states
    for a, b in product(E, E):
        for c in E:
            if c != alg.monoid.table[(a, b)]:
                yield ("add", a, b), with_table(alg, (a, b), c)
    for x, a in product(X, E):
        for y in X:
            if y != alg.action[(x, a)]:
                yield ("action", x, a), with_action(alg, (x, a), y)
    for x in X:
        for a in E:
            if a != alg.phi[x]:
                yield ("phi", x), with_phi(alg, x, a)
    lits = sorted({v.payload for v in alg.psi.values()})
    for x in X:
        for lit in [lits[0] - 1, *lits, lits[-1] + 1]:
            if lit != alg.psi[x].payload:
                yield ("psi", x), with_psi(alg, x, lit)


@pytest.mark.parametrize("name", ["COUNTER5", "CYCLE3", "DIAMOND", "SELFLOOP"])
def test_every_single_mutation_passes_or_is_cited(name):
    base = builtin(name)
    checked = 0
    for coord, alg in _single_mutations(base):
        report = validate_algebra(alg)
        assert set(report.failed_axioms) == naive_axioms(alg), coord
        if not report.passed:
            assert any(w.cites(coord) for w in report.witnesses), coord
            checked += 1
    assert checked > 0


# ill-formed inputs

def test_missing_action_entry_is_ill_formed_not_a_failure():
    alg = builtin("COUNTER5")
    action = dict(alg.action)
    del action[("3", "2")]
    report = validate_algebra(replace(alg, action=action))
    assert not report.well_formed
    assert report.verdicts == {}
    assert any("'3'" in p and "'2'" in p for p in report.ill_formed)


def test_unknown_identifiers_are_reported():
    alg = with_phi(builtin("COUNTER5"), "2", "nope")
    assert any("nope" in p for p in structural_problems(alg))
    bad = AdjustmentMonoid(["0"], "z", {("0", "0"): "0"})
    assert any("zero" in p for p in bad.structural_problems())


def test_psi_from_foreign_order_is_ill_formed():
    alg = builtin("COUNTER5")
    psi = dict(alg.psi)
    psi["0"] = EvalValue(EvalOrder.chain(["x"]), 0)
    assert not validate_algebra(replace(alg, psi=psi)).well_formed


# laws on valid algebras

@pytest.mark.parametrize("name", VALID_NAMES)
def test_action_compatibility_exhaustive(name):
    alg = builtin(name)
    m = alg.monoid
    for x, a, b in product(alg.states, m.elements, m.elements):
        assert apply(alg, apply(alg, x, a), b) == apply(alg, x, net_sum(m, [a, b]))


@pytest.mark.parametrize("name", VALID_NAMES)
def test_phi_strictly_improves(name):
    alg = builtin(name)
    for x in alg.states:
        if not is_fixed_point(alg, x):
            assert alg.psi[apply(alg, x, alg.phi[x])] > alg.psi[x]
