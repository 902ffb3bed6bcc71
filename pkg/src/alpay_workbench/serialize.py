"""JSON documents for algebras, small categories, and two-cell lists.

Algebra document keys::

    states, monoid{elements, zero, table, commutative, generators},
    action{state: {adjustment: state}}, phi{state: adjustment},
    psi{state: literal}, eval_order{kind, labels?, top?},
    initial_state?, named_sets?

``save_spec`` writes a canonical form (sorted keys, declaration-order lists)
so that equal algebras serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import (CHAIN, INTEGER, ORDER_KINDS, RATIONAL, AdjustmentMonoid, EvalOrder,
                      FiniteAlpayAlgebra, structural_problems)
from .category import SmallCategorySpec
from .errors import IllFormedError, OrderMismatchError, SpecError
from .homology import TwoCell

ALGEBRA_KEYS = {"states", "monoid", "action", "phi", "psi", "eval_order", "initial_state", "named_sets"}
MONOID_KEYS = {"elements", "zero", "table", "commutative", "generators"}


def _parse_json(document, source):
    if isinstance(document, (dict, list)):
        return document
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", source)


def _need(cond, msg, source):
    if not cond:
        raise SpecError(msg, source)


def _id_list(value, what, source):
    _need(isinstance(value, list) and all(isinstance(v, str) for v in value),
           f"{what} must be a list of string identifiers", source)
    return value


def _literal_to_json(order: EvalOrder, payload):
    if order.kind == INTEGER:
        return payload
    return order.to_literal(payload)


def _order_from_json(doc, source):
    _need(isinstance(doc, dict), "eval_order must be an object", source)
    unknown = set(doc) - {"kind", "labels", "top"}
    _need(not unknown, f"eval_order has unknown keys {sorted(unknown)}", source)
    kind = doc.get("kind")
    _need(kind in ORDER_KINDS, f"eval_order.kind must be one of {', '.join(ORDER_KINDS)}", source)
    try:
        if kind == CHAIN:
            labels = _id_list(doc.get("labels"), "eval_order.labels", source)
            return EvalOrder.chain(labels, doc.get("top"))
        _need("labels" not in doc, "eval_order.labels only applies to named-chain", source)
        base = EvalOrder(kind)
        top = doc.get("top")
        return EvalOrder(kind, (), None if top is None else base.value(top).payload)
    except (IllFormedError, OrderMismatchError, ValueError) as exc:
        raise SpecError(f"eval_order: {exc}", source)


def load_spec(document, source=None) -> FiniteAlpayAlgebra:
    """Parse an algebra document (text or decoded JSON) and enforce structural totality.

    Axiom validation is a separate step.
    """
    doc = _parse_json(document, source)
    _need(isinstance(doc, dict), "top level must be a JSON object", source)
    unknown = set(doc) - ALGEBRA_KEYS
    _need(not unknown, f"unknown keys {sorted(unknown)}", source)
    for key in ("states", "monoid", "action", "phi", "psi", "eval_order"):
        _need(key in doc, f"missing key {key!r}", source)
    states = _id_list(doc["states"], "states", source)

    m = doc["monoid"]
    _need(isinstance(m, dict), "monoid must be an object", source)
    unknown = set(m) - MONOID_KEYS
    _need(not unknown, f"monoid has unknown keys {sorted(unknown)}", source)
    elements = _id_list(m.get("elements"), "monoid.elements", source)
    zero = m.get("zero")
    _need(isinstance(zero, str), "monoid.zero must be a string identifier", source)
    rows = m.get("table")
    _need(isinstance(rows, list) and len(rows) == len(elements)
          and all(isinstance(r, list) and len(r) == len(elements) for r in rows),
          f"monoid.table must be a {len(elements)}x{len(elements)} list of lists", source)
    table = {}
    for a, row in zip(elements, rows):
        for b, c in zip(elements, row):
            _need(isinstance(c, str), f"monoid.table entry ({a}, {b}) must be a string", source)
            table[(a, b)] = c
    commutative = m.get("commutative", True)
    _need(isinstance(commutative, bool), "monoid.commutative must be a boolean", source)
    gens = m.get("generators")
    if gens is None:
        gens = [a for a in elements if a != zero]
    gens = _id_list(gens, "monoid.generators", source)
    monoid = AdjustmentMonoid(elements, zero, table, commutative, gens)

    act = doc["action"]
    _need(isinstance(act, dict), "action must be an object of objects", source)
    action = {}
    for x, row in act.items():
        _need(isinstance(row, dict), f"action[{x!r}] must be an object", source)
        for a, y in row.items():
            _need(isinstance(y, str), f"action[{x!r}][{a!r}] must be a string", source)
            action[(x, a)] = y
    phi = doc["phi"]
    _need(isinstance(phi, dict) and all(isinstance(v, str) for v in phi.values()),
          "phi must map states to adjustment identifiers", source)

    order = _order_from_json(doc["eval_order"], source)
    psi_doc = doc["psi"]
    _need(isinstance(psi_doc, dict), "psi must be an object", source)
    psi = {}
    for x, lit in psi_doc.items():
        try:
            psi[x] = order.value(lit)
        except (OrderMismatchError, IllFormedError) as exc:
            raise SpecError(f"psi[{x!r}]: {exc}", source)

    initial = doc.get("initial_state")
    _need(initial is None or isinstance(initial, str), "initial_state must be a string", source)
    named = doc.get("named_sets", {})
    _need(isinstance(named, dict), "named_sets must be an object", source)
    for k, v in named.items():
        _id_list(v, f"named_sets[{k!r}]", source)

    alg = FiniteAlpayAlgebra(states, monoid, action, dict(phi), psi, order, initial, named)
    problems = structural_problems(alg)
    if problems:
        raise SpecError("structural errors: " + "; ".join(problems), source)
    return alg


def spec_document(alg: FiniteAlpayAlgebra) -> dict:
    m = alg.monoid
    order = alg.eval_order
    od = {"kind": order.kind}
    if order.kind == CHAIN:
        od["labels"] = list(order.labels)
    if order.top is not None:
        od["top"] = _literal_to_json(order, order.top)
    doc = {
        "states": list(alg.states),
        "monoid": {
            "elements": list(m.elements),
            "zero": m.zero,
            "table": [[m.table[(a, b)] for b in m.elements] for a in m.elements],
            "commutative": m.commutative,
            "generators": list(m.generators),
        },
        "action": {x: {a: alg.action[(x, a)] for a in m.elements} for x in alg.states},
        "phi": {x: alg.phi[x] for x in alg.states},
        "psi": {x: _literal_to_json(order, alg.psi[x].payload) for x in alg.states},
        "eval_order": od,
    }
    if alg.initial_state is not None:
        doc["initial_state"] = alg.initial_state
    if alg.named_sets:
        doc["named_sets"] = {k: list(v) for k, v in alg.named_sets.items()}
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_spec(alg: FiniteAlpayAlgebra) -> str:
    return dumps(spec_document(alg))


def load_category_spec(document, source=None) -> SmallCategorySpec:
    """Category document: objects, arrows [{name, dom, cod}], compose [[g, f, g∘f | null]], identities?

    Without ``identities``, arrows ``id_<object>`` are added automatically.
    """
    doc = _parse_json(document, source)
    _need(isinstance(doc, dict), "top level must be a JSON object", source)
    unknown = set(doc) - {"objects", "arrows", "compose", "identities"}
    _need(not unknown, f"unknown keys {sorted(unknown)}", source)
    objects = _id_list(doc.get("objects"), "objects", source)
    arrows = []
    for a in doc.get("arrows", []):
        _need(isinstance(a, dict) and set(a) == {"name", "dom", "cod"}
              and all(isinstance(v, str) for v in a.values()),
              "each arrow must be {\"name\", \"dom\", \"cod\"} with string values", source)
        arrows.append((a["name"], a["dom"], a["cod"]))
    compose = {}
    for entry in doc.get("compose", []):
        _need(isinstance(entry, list) and len(entry) == 3 and isinstance(entry[0], str)
              and isinstance(entry[1], str) and (entry[2] is None or isinstance(entry[2], str)),
              "each compose entry must be [g, f, result-or-null]", source)
        compose[(entry[0], entry[1])] = entry[2]
    identities = doc.get("identities")
    if identities is None:
        cat = SmallCategorySpec.from_arrows(objects, arrows, compose)
    else:
        _need(isinstance(identities, dict), "identities must map objects to arrow names", source)
        cat = SmallCategorySpec(objects, arrows, compose, identities)
    problems = cat.problems()
    if problems:
        raise SpecError("invalid category: " + "; ".join(problems), source)
    return cat


def category_document(cat: SmallCategorySpec) -> dict:
    return {
        "objects": list(cat.objects),
        "arrows": [{"name": n, "dom": d, "cod": c} for n, d, c in cat.arrows],
        "identities": dict(cat.identities),
        "compose": [[g, f, r] for (g, f), r in sorted(cat.compose.items())],
    }


def save_category_spec(cat: SmallCategorySpec) -> str:
    return dumps(category_document(cat))


def load_two_cells(document, source=None) -> list:
    """Two-cell file: a list of {"square": [x, a, b]} or {"chain": [[coeff, state, adj], ...]}."""
    doc = _parse_json(document, source)
    _need(isinstance(doc, list), "two-cell file must be a JSON list", source)
    cells = []
    for i, item in enumerate(doc):
        _need(isinstance(item, dict) and len(item) == 1, f"entry {i}: expected one key", source)
        if "square" in item:
            sq = item["square"]
            _need(isinstance(sq, list) and len(sq) == 3 and all(isinstance(v, str) for v in sq),
                  f"entry {i}: square must be [state, adj, adj]", source)
            cells.append(TwoCell.square(*sq))
        elif "chain" in item:
            terms = item["chain"]
            ok = isinstance(terms, list) and all(
                isinstance(t, list) and len(t) == 3 and isinstance(t[0], int) and not isinstance(t[0], bool)
                and isinstance(t[1], str) and isinstance(t[2], str) for t in terms)
            _need(ok, f"entry {i}: chain must be a list of [coeff, state, adj]", source)
            cells.append(TwoCell.chain(terms))
        else:
            raise SpecError(f"entry {i}: expected 'square' or 'chain'", source)
    return cells


def is_category_document(document) -> bool:
    doc = _parse_json(document, None)
    return isinstance(doc, dict) and "objects" in doc


__all__ = ["load_spec", "save_spec", "spec_document", "load_category_spec", "save_category_spec",
           "load_two_cells", "Fraction"]
