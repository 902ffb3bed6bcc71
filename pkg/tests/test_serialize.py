import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from alpay_workbench.algebra import EvalOrder
from alpay_workbench.builtins import builtin
from alpay_workbench.category import certify_embedding, embed_category
from alpay_workbench.errors import SpecError
from alpay_workbench.generate import RandomAlgebraParams, random_algebra
from alpay_workbench.homology import TwoCell
from alpay_workbench.serialize import (load_category_spec, load_spec, load_two_cells, save_category_spec,
                                       save_spec, spec_document)
from conftest import ALGEBRA_NAMES


def doc(name):
    return spec_document(builtin(name))


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_round_trip_builtins(name):
    alg = builtin(name)
    text = save_spec(alg)
    assert load_spec(text) == alg
    assert save_spec(load_spec(text)) == text


@given(st.integers(1, 6), st.integers(0, 5), st.integers(0, 2**64 - 1), st.sampled_from([1, 2]))
def test_round_trip_random(n, family, seed, copies):
    alg = random_algebra(RandomAlgebraParams(n, family, seed, copies))
    text = save_spec(alg)
    assert load_spec(text) == alg
    assert save_spec(load_spec(text)) == text


def test_canonical_form_is_independent_of_key_order():
    d = doc("COUNTER5")
    shuffled = json.dumps(dict(reversed(list(d.items()))))
    assert save_spec(load_spec(shuffled)) == save_spec(builtin("COUNTER5"))


def test_counter5_document_shape():
    d = json.loads(save_spec(builtin("COUNTER5")))
    assert d["states"] == ["0", "1", "2", "3", "4", "5"]
    assert d["monoid"]["table"][1][1] == "2"
    assert d["monoid"]["table"][3][4] == "5"
    assert d["psi"]["5"] == 5
    assert d["eval_order"] == {"kind": "integer"}
    assert d["initial_state"] == "0"


def test_rational_and_chain_orders_round_trip():
    alg = builtin("COUNTER5")
    from dataclasses import replace

    order = EvalOrder.rational(top="5/2")
    rat = replace(alg, eval_order=order, psi={x: order.value(f"{int(x)}/2") for x in alg.states})
    text = save_spec(rat)
    assert json.loads(text)["psi"]["3"] == "3/2"
    assert json.loads(text)["eval_order"]["top"] == "5/2"
    assert load_spec(text) == rat

    labels = ["l0", "l1", "l2", "l3", "l4", "l5"]
    chain = EvalOrder.chain(labels, top="l5")
    ch = replace(alg, eval_order=chain, psi={x: chain.value(labels[int(x)]) for x in alg.states})
    assert load_spec(save_spec(ch)) == ch


def test_missing_action_pair_is_named():
    d = doc("COUNTER5")
    del d["action"]["3"]["2"]
    with pytest.raises(SpecError, match=r"'3'.*'2'"):
        load_spec(json.dumps(d))


@pytest.mark.parametrize("mutate, pattern", [
    (lambda d: d.pop("phi"), "missing key 'phi'"),
    (lambda d: d.update(extra=1), "unknown keys"),
    (lambda d: d["monoid"]["table"].pop(), "6x6"),
    (lambda d: d["phi"].update({"2": "nope"}), "nope"),
    (lambda d: d["psi"].update({"2": "two"}), r"psi\['2'\]"),
    (lambda d: d["psi"].update({"2": 2.5}), r"psi\['2'\]"),
    (lambda d: d["eval_order"].update(kind="real"), "eval_order.kind"),
    (lambda d: d["monoid"].update(zero=0), "monoid.zero"),
    (lambda d: d["states"].append(7), "states"),
    (lambda d: d["action"]["0"].update({"0": "9"}), "'9'"),
])
def test_load_errors(mutate, pattern):
    d = doc("COUNTER5")
    mutate(d)
    with pytest.raises(SpecError, match=pattern):
        load_spec(json.dumps(d))


def test_parse_error_has_location_and_source():
    with pytest.raises(SpecError) as info:
        load_spec('{"states": [\n  "0",, ]}', source="bad.json")
    msg = str(info.value)
    assert msg.startswith("bad.json: ") and "line 2" in msg


def test_load_does_not_run_axioms():
    d = doc("BADLOOP")
    assert load_spec(json.dumps(d)) == builtin("BADLOOP")


def test_embedded_poset_round_trip_keeps_certificate():
    cat = builtin("POSET3")
    alg, cert = embed_category(cat)
    again = load_spec(save_spec(alg))
    assert again == alg
    assert certify_embedding(cat, again) == cert


def test_category_spec_round_trip():
    cat = builtin("POSET3")
    text = save_category_spec(cat)
    assert load_category_spec(text) == cat
    short = {"objects": ["0", "1"], "arrows": [{"name": "f", "dom": "0", "cod": "1"}], "compose": []}
    loaded = load_category_spec(json.dumps(short))
    assert loaded.identities == {"0": "id_0", "1": "id_1"}


def test_category_spec_errors():
    bad = {"objects": ["0", "1"], "arrows": [{"name": "f", "dom": "0", "cod": "2"}]}
    with pytest.raises(SpecError, match="unknown endpoint"):
        load_category_spec(json.dumps(bad))
    with pytest.raises(SpecError, match="compose"):
        load_category_spec(json.dumps({"objects": [], "compose": [["a"]]}))


def test_two_cell_file():
    text = json.dumps([{"square": ["00", "a", "b"]}, {"chain": [[2, "p", "e"], [-1, "q", "f"]]}])
    cells = load_two_cells(text)
    assert cells == [TwoCell.square("00", "a", "b"), TwoCell.chain([(2, "p", "e"), (-1, "q", "f")])]
    for bad, pattern in [([{"square": []}], "entry 0"), ({"square": []}, "JSON list"), ([{"cube": 1}], "entry 0"),
                         ([{"chain": [[1.5, "p", "e"]]}], "entry 0"), ([{"chain": [[True, "p", "e"]]}], "entry 0")]:
        with pytest.raises(SpecError, match=pattern):
            load_two_cells(json.dumps(bad))
