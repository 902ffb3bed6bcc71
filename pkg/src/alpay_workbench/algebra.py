"""Finite Alpay algebras: evaluation orders, adjustment monoids, and the axiom validator.

States and adjustments are plain string identifiers. Tables are stored as
mappings keyed by identifiers; an index-based compilation of every table is
built lazily for the exhaustive checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

from . import _backend
from .errors import IllFormedError, OrderMismatchError, UnknownIdentifierError

INTEGER = "integer"
RATIONAL = "exact-rational"
CHAIN = "named-chain"
ORDER_KINDS = (INTEGER, RATIONAL, CHAIN)

# cap on witnesses per axiom; the associativity and compatibility scans stop
# at the cap too, so their violation counts are lower bounds
WITNESS_CAP = 20

Payload = Union[int, Fraction]


@dataclass(frozen=True)
class EvalOrder:
    """A totally ordered evaluation domain with an optional top element.

    ``top`` is held as a payload: an int, a Fraction, or (for named chains)
    the index of the top label.
    """

    kind: str
    labels: tuple = ()
    top: Optional[Payload] = None

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise IllFormedError(f"unknown evaluation order kind {self.kind!r}")
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.kind == CHAIN:
            if len(set(self.labels)) != len(self.labels):
                raise IllFormedError("duplicate chain label")
            if self.top is not None and not (0 <= self.top < len(self.labels)):
                raise IllFormedError("chain top index out of range")
        elif self.labels:
            raise IllFormedError("labels are only meaningful for named-chain orders")
        if self.kind == INTEGER and self.top is not None and not isinstance(self.top, int):
            raise IllFormedError("integer order needs an integer top")
        if self.kind == RATIONAL and self.top is not None:
            object.__setattr__(self, "top", Fraction(self.top))

    @classmethod
    def integer(cls, top=None):
        return cls(INTEGER, (), top)

    @classmethod
    def rational(cls, top=None):
        return cls(RATIONAL, (), None if top is None else Fraction(top))

    @classmethod
    def chain(cls, labels, top=None):
        labels = tuple(labels)
        return cls(CHAIN, labels, None if top is None else labels.index(top))

    def value(self, literal) -> "EvalValue":
        """Build a value of this order from a literal (int, "p/q" string, or chain label)."""
        if isinstance(literal, EvalValue):
            if literal.order != self:
                raise OrderMismatchError("value belongs to a different evaluation order")
            return literal
        if self.kind == INTEGER:
            if isinstance(literal, bool):
                raise IllFormedError(f"not an integer literal: {literal!r}")
            if isinstance(literal, int):
                return EvalValue(self, literal)
            if isinstance(literal, str):
                try:
                    return EvalValue(self, int(literal.strip()))
                except ValueError:
                    pass
            raise OrderMismatchError(f"literal {literal!r} is not an integer")
        if self.kind == RATIONAL:
            if isinstance(literal, bool) or isinstance(literal, float):
                raise OrderMismatchError(f"literal {literal!r} is not an exact rational")
            if isinstance(literal, (int, Fraction)):
                return EvalValue(self, Fraction(literal))
            if isinstance(literal, str):
                try:
                    return EvalValue(self, Fraction(literal.strip()))
                except (ValueError, ZeroDivisionError):
                    pass
            raise OrderMismatchError(f"literal {literal!r} is not an exact rational")
        if literal in self.labels:
            return EvalValue(self, self.labels.index(literal))
        raise OrderMismatchError(f"{literal!r} is not a label of this chain")

    @property
    def top_value(self) -> Optional["EvalValue"]:
        return None if self.top is None else EvalValue(self, self.top)

    def to_literal(self, payload):
        if self.kind == INTEGER:
            return payload
        if self.kind == RATIONAL:
            f = Fraction(payload)
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return self.labels[payload]


@dataclass(frozen=True)
class EvalValue:
    order: EvalOrder
    payload: Payload

    def __post_init__(self):
        o = self.order
        if o.kind == INTEGER:
            if isinstance(self.payload, bool) or not isinstance(self.payload, int):
                raise IllFormedError(f"integer order payload must be int, got {self.payload!r}")
        elif o.kind == RATIONAL:
            if not isinstance(self.payload, (int, Fraction)) or isinstance(self.payload, bool):
                raise IllFormedError(f"rational payload must be exact, got {self.payload!r}")
            object.__setattr__(self, "payload", Fraction(self.payload))
        else:
            if not isinstance(self.payload, int) or not 0 <= self.payload < len(o.labels):
                raise IllFormedError(f"chain index {self.payload!r} out of range")
        if o.top is not None and self.payload > o.top:
            raise IllFormedError(f"value {self} exceeds the declared top")

    def _check(self, other):
        if not isinstance(other, EvalValue):
            return NotImplemented
        if other.order != self.order:
            raise OrderMismatchError("cannot compare values of different evaluation orders")
        return None

    def __lt__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.payload < other.payload

    def __le__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.payload <= other.payload

    def __gt__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.payload > other.payload

    def __ge__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.payload >= other.payload

    @property
    def literal(self):
        return self.order.to_literal(self.payload)

    def __str__(self):
        return str(self.literal)


@dataclass(frozen=True, eq=False)
class _Index:
    states: tuple
    elements: tuple
    state_ix: dict
    elem_ix: dict
    zero: int
    add: list
    act: list
    phi: list
    psi: list
    generators: list


@dataclass(frozen=True)
class AdjustmentMonoid:
    elements: tuple
    zero: str
    table: Mapping
    commutative: bool = True
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "table", dict(self.table))

    def _require(self, a):
        if a not in self.elements_set:
            raise UnknownIdentifierError("adjustment", a)

    @cached_property
    def elements_set(self):
        return frozenset(self.elements)

    def add(self, a, b):
        self._require(a)
        self._require(b)
        return self.table[(a, b)]

    def structural_problems(self):
        problems = []
        if len(set(self.elements)) != len(self.elements):
            problems.append("duplicate adjustment identifiers")
        if self.zero not in self.elements_set:
            problems.append(f"zero {self.zero!r} is not a declared adjustment")
        for g in self.generators:
            if g not in self.elements_set:
                problems.append(f"generator {g!r} is not a declared adjustment")
        for a in self.elements:
            for b in self.elements:
                if (a, b) not in self.table:
                    problems.append(f"add table has no entry for ({a!r}, {b!r})")
                elif self.table[(a, b)] not in self.elements_set:
                    problems.append(
                        f"add table entry ({a!r}, {b!r}) = {self.table[(a, b)]!r} "
                        "is not a declared adjustment")
        extra = [k for k in self.table if k[0] not in self.elements_set or k[1] not in self.elements_set]
        for k in extra:
            problems.append(f"add table entry for undeclared pair {k!r}")
        return problems

    @cached_property
    def add_index(self):
        ix = {a: i for i, a in enumerate(self.elements)}
        return [[ix[self.table[(a, b)]] for b in self.elements] for a in self.elements]


@dataclass(frozen=True)
class FiniteAlpayAlgebra:
    """Explicit finite model: states, monoid, action, update rule and evaluation."""

    states: tuple
    monoid: AdjustmentMonoid
    action: Mapping
    phi: Mapping
    psi: Mapping
    eval_order: EvalOrder
    initial_state: Optional[str] = None
    named_sets: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "action", dict(self.action))
        object.__setattr__(self, "phi", dict(self.phi))
        object.__setattr__(self, "psi", dict(self.psi))
        object.__setattr__(self, "named_sets",
                           {k: tuple(v) for k, v in dict(self.named_sets).items()})

    @property
    def zero(self):
        return self.monoid.zero

    @cached_property
    def states_set(self):
        return frozenset(self.states)

    def require_state(self, x):
        if x not in self.states_set:
            raise UnknownIdentifierError("state", x)

    def require_adjustment(self, a):
        if a not in self.monoid.elements_set:
            raise UnknownIdentifierError("adjustment", a)

    @cached_property
    def index(self) -> _Index:
        problems = structural_problems(self)
        if problems:
            raise IllFormedError(problems)
        states, elements = self.states, self.monoid.elements
        sx = {x: i for i, x in enumerate(states)}
        ex = {a: i for i, a in enumerate(elements)}
        return _Index(
            states=states,
            elements=elements,
            state_ix=sx,
            elem_ix=ex,
            zero=ex[self.monoid.zero],
            add=self.monoid.add_index,
            act=[[sx[self.action[(x, a)]] for a in elements] for x in states],
            phi=[ex[self.phi[x]] for x in states],
            psi=[self.psi[x].payload for x in states],
            generators=[ex[g] for g in self.monoid.generators],
        )


def structural_problems(alg: FiniteAlpayAlgebra) -> list:
    """Every totality / resolution / order problem in *alg*; empty when well formed."""
    problems = list(alg.monoid.structural_problems())
    if len(set(alg.states)) != len(alg.states):
        problems.append("duplicate state identifiers")
    if not alg.states:
        problems.append("no states declared")
    elems = alg.monoid.elements_set
    states = alg.states_set
    for x in alg.states:
        for a in alg.monoid.elements:
            if (x, a) not in alg.action:
                problems.append(f"action has no entry for ({x!r}, {a!r})")
            elif alg.action[(x, a)] not in states:
                problems.append(f"action entry ({x!r}, {a!r}) = {alg.action[(x, a)]!r} is not a declared state")
        if x not in alg.phi:
            problems.append(f"phi undefined at {x!r}")
        elif alg.phi[x] not in elems:
            problems.append(f"phi({x!r}) = {alg.phi[x]!r} is not a declared adjustment")
        if x not in alg.psi:
            problems.append(f"psi undefined at {x!r}")
        elif not isinstance(alg.psi[x], EvalValue) or alg.psi[x].order != alg.eval_order:
            problems.append(f"psi({x!r}) does not belong to the algebra's evaluation order")
    for k in alg.action:
        if k[0] not in states or k[1] not in elems:
            problems.append(f"action entry for undeclared pair {k!r}")
    for k in list(alg.phi) + list(alg.psi):
        if k not in states:
            problems.append(f"phi/psi entry for undeclared state {k!r}")
    if alg.initial_state is not None and alg.initial_state not in states:
        problems.append(f"initial state {alg.initial_state!r} is not declared")
    for name, members in alg.named_sets.items():
        for x in members:
            if x not in states:
                problems.append(f"named set {name!r} contains undeclared state {x!r}")
    return problems


@dataclass(frozen=True)
class Witness:
    axiom: str
    law: str
    subject: tuple
    explanation: str
    entries: tuple = ()

    def cites(self, entry) -> bool:
        return tuple(entry) in self.entries


AXIOM_IDS = ("1", "2", "4.1", "4.2", "5")


@dataclass
class AxiomReport:
    verdicts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    ill_formed: list = field(default_factory=list)
    violation_counts: dict = field(default_factory=dict)

    @property
    def well_formed(self):
        return not self.ill_formed

    @property
    def passed(self):
        return self.well_formed and all(self.verdicts.values())

    @property
    def failed_axioms(self):
        return [k for k in AXIOM_IDS if k in self.verdicts and not self.verdicts[k]]

    def witnesses_for(self, axiom):
        return [w for w in self.witnesses if w.axiom == axiom]

    def to_dict(self):
        return {
            "well_formed": self.well_formed,
            "ill_formed": list(self.ill_formed),
            "passed": self.passed,
            "verdicts": dict(self.verdicts),
            "violation_counts": dict(self.violation_counts),
            "witnesses": [
                {"axiom": w.axiom, "law": w.law, "subject": list(w.subject),
                 "explanation": w.explanation, "entries": [list(e) for e in w.entries]}
                for w in self.witnesses
            ],
        }

    def render(self):
        if not self.well_formed:
            return "ill-formed:\n" + "\n".join(f"  - {p}" for p in self.ill_formed)
        lines = []
        for k in AXIOM_IDS:
            status = "pass" if self.verdicts[k] else "FAIL"
            n = self.violation_counts.get(k, 0)
            lines.append(f"axiom {k:<4} {status}" + (f"  ({n} violations)" if n else ""))
        for w in self.witnesses:
            lines.append(f"  [{w.axiom}/{w.law}] {w.subject}: {w.explanation}")
        return "\n".join(lines)


def validate_algebra(alg: FiniteAlpayAlgebra, backend=None) -> AxiomReport:
    """Exhaustively check Axioms 1, 2, 4 (both clauses) and 5 on a finite algebra.

    Structural problems produce an ill-formed report with no verdicts.
    Witness order is deterministic: by law, then lexicographic in
    declaration indices.
    """
    problems = structural_problems(alg)
    if problems:
        return AxiomReport(ill_formed=problems)
    ix = alg.index
    E, S = ix.elements, ix.states
    add, act, zero = ix.add, ix.act, ix.zero
    report = AxiomReport()
    counts = {k: 0 for k in AXIOM_IDS}

    def record(axiom, law, subject, explanation, entries):
        counts[axiom] += 1
        if len(report.witnesses_for(axiom)) < WITNESS_CAP:
            report.witnesses.append(Witness(axiom, law, subject, explanation, tuple(entries)))

    # Axiom 1: monoid laws
    for a in range(len(E)):
        if add[a][zero] != a or add[zero][a] != a:
            record("1", "identity", (E[a],),
                   f"{E[a]}+0 = {E[add[a][zero]]}, 0+{E[a]} = {E[add[zero][a]]}",
                   [("add", E[a], E[zero]), ("add", E[zero], E[a])])
    for a, b, c in _backend.scan_associativity(add, WITNESS_CAP, backend):
        ab, bc = add[a][b], add[b][c]
        record("1", "associativity", (E[a], E[b], E[c]),
               f"({E[a]}+{E[b]})+{E[c]} = {E[add[ab][c]]} but {E[a]}+({E[b]}+{E[c]}) = {E[add[a][bc]]}",
               [("add", E[a], E[b]), ("add", E[ab], E[c]), ("add", E[b], E[c]), ("add", E[a], E[bc])])
    if alg.monoid.commutative:
        for a in range(len(E)):
            for b in range(a + 1, len(E)):
                if add[a][b] != add[b][a]:
                    record("1", "commutativity", (E[a], E[b]),
                           f"{E[a]}+{E[b]} = {E[add[a][b]]} but {E[b]}+{E[a]} = {E[add[b][a]]}",
                           [("add", E[a], E[b]), ("add", E[b], E[a])])

    # Axiom 2: action laws
    for x in range(len(S)):
        if act[x][zero] != x:
            record("2", "identity-action", (S[x],), f"{S[x]}+0 = {S[act[x][zero]]}",
                   [("action", S[x], E[zero])])
    for x, a, b in _backend.scan_action_compat(act, add, WITNESS_CAP, backend):
        xa, ab = act[x][a], add[a][b]
        record("2", "compatibility", (S[x], E[a], E[b]),
               f"({S[x]}+{E[a]})+{E[b]} = {S[act[xa][b]]} but {S[x]}+({E[a]}+{E[b]}) = {S[act[x][ab]]}",
               [("action", S[x], E[a]), ("action", S[xa], E[b]), ("add", E[a], E[b]),
                ("action", S[x], E[ab])])

    # Axiom 4: progress and local optimality
    psi = ix.psi
    for x in range(len(S)):
        p = ix.phi[x]
        if p != zero:
            y = act[x][p]
            if not psi[y] > psi[x]:
                record("4.1", "strict-progress", (S[x],),
                       f"phi({S[x]}) = {E[p]} leads to {S[y]} with psi {alg.psi[S[y]]} "
                       f"not above psi({S[x]}) = {alg.psi[S[x]]}",
                       [("phi", S[x]), ("action", S[x], E[p]), ("psi", S[x]), ("psi", S[y])])
        else:
            for a in range(len(E)):
                y = act[x][a]
                if psi[y] > psi[x]:
                    record("4.2", "local-optimality", (S[x], E[a]),
                           f"{S[x]} is fixed but {S[x]}+{E[a]} = {S[y]} has psi {alg.psi[S[y]]} "
                           f"above {alg.psi[S[x]]}",
                           [("phi", S[x]), ("action", S[x], E[a]), ("psi", S[x]), ("psi", S[y])])

    # Axiom 5: global maxima are fixed
    top = max(psi)
    for x in range(len(S)):
        if psi[x] == top and ix.phi[x] != zero:
            record("5", "global-max-fixed", (S[x],),
                   f"psi({S[x]}) = {alg.psi[S[x]]} is maximal but phi({S[x]}) = {E[ix.phi[x]]}",
                   [("phi", S[x]), ("psi", S[x])])

    report.verdicts = {k: counts[k] == 0 for k in AXIOM_IDS}
    report.violation_counts = {k: v for k, v in counts.items() if v}
    order = {k: i for i, k in enumerate(AXIOM_IDS)}
    report.witnesses.sort(key=lambda w: order[w.axiom])
    return report


def structure_laws_hold(report: AxiomReport) -> bool:
    """Axioms 1 and 2 alone: the monoid and action laws a category needs."""
    return report.well_formed and report.verdicts["1"] and report.verdicts["2"]


def apply(alg: FiniteAlpayAlgebra, x, a):
    alg.require_state(x)
    alg.require_adjustment(a)
    return alg.action[(x, a)]


def net_sum(monoid: AdjustmentMonoid, seq: Sequence) -> str:
    """Left fold of the add table over *seq*; the empty sum is zero."""
    total = monoid.zero
    for a in seq:
        total = monoid.add(total, a)
    return total


def is_fixed_point(alg: FiniteAlpayAlgebra, x) -> bool:
    alg.require_state(x)
    return alg.phi[x] == alg.monoid.zero
