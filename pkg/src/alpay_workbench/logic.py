"""Modal logic over the states of an algebra.

Formulas combine atoms about phi and psi with boolean connectives and CTL
operators. Each modal operator names its accessibility relation: ``phi``
(the deterministic step x -> x + phi(x)) or ``any`` (x -> x + g for every
nonzero generator g).

Concrete syntax::

    fixed | psi_top | psi >= LIT | state = ID | in NAME
    not F | EX[r] F | AX[r] F | EF[r] F | AF[r] F | EG[r] F | AG[r] F
    F and F | F or F | F -> F | ( F )

``not`` and the modal operators bind tightest, then ``and``, ``or``, and
finally ``->`` (right associative).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .algebra import FiniteAlpayAlgebra
from .dynamics import phi_infinity
from .errors import FormulaSyntaxError, UnknownIdentifierError

PHI = "phi"
ANY = "any"
RELATIONS = (PHI, ANY)
MODAL_OPS = ("EX", "AX", "EF", "AF", "EG", "AG")
KEYWORDS = frozenset({"not", "and", "or", "fixed", "psi", "psi_top", "state", "in", *MODAL_OPS})


@dataclass(frozen=True)
class Fixed:
    pass


@dataclass(frozen=True)
class PsiTop:
    pass


@dataclass(frozen=True)
class PsiGeq:
    literal: str


@dataclass(frozen=True)
class StateIs:
    ident: str


@dataclass(frozen=True)
class InSet:
    name: str


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Modal:
    op: str
    relation: str
    sub: "Formula"

    def __post_init__(self):
        if self.op not in MODAL_OPS:
            raise ValueError(f"unknown modal operator {self.op!r}")
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")


Formula = Union[Fixed, PsiTop, PsiGeq, StateIs, InSet, Not, And, Or, Implies, Modal]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>->|>=|=|\(|\)|\[|\])
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<word>-?[\w'.⊥*/]+)
""", re.VERBOSE)
_BARE = re.compile(r"-?[\w'.⊥*/]+\Z")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text):
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            if kind == "string":
                val = json.loads(val)
            toks.append(_Tok(kind, val, pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return FormulaSyntaxError(msg, self.text, tok.pos)

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def is_kw(self, word):
        t = self.peek()
        return t.kind == "word" and t.text == word

    def expect_op(self, op):
        t = self.take()
        if t.kind != "op" or t.text != op:
            raise self.error(f"expected {op!r}, found {t.text or 'end of input'!r}", t)

    def ident(self, what):
        t = self.take()
        if t.kind not in ("word", "string"):
            raise self.error(f"expected {what}, found {t.text or 'end of input'!r}", t)
        return t.text

    def parse(self):
        f = self.implies()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return f

    def implies(self):
        left = self.disj()
        t = self.peek()
        if t.kind == "op" and t.text == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def disj(self):
        f = self.conj()
        while self.is_kw("or"):
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.is_kw("and"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        t = self.peek()
        if t.kind == "word" and t.text == "not":
            self.take()
            return Not(self.unary())
        if t.kind == "word" and t.text in MODAL_OPS:
            self.take()
            self.expect_op("[")
            r = self.take()
            if r.kind != "word" or r.text not in RELATIONS:
                raise self.error(f"relation must be 'phi' or 'any', found {r.text!r}", r)
            self.expect_op("]")
            return Modal(t.text, r.text, self.unary())
        return self.primary()

    def primary(self):
        t = self.take()
        if t.kind == "op" and t.text == "(":
            f = self.implies()
            self.expect_op(")")
            return f
        if t.kind == "word":
            if t.text == "fixed":
                return Fixed()
            if t.text == "psi_top":
                return PsiTop()
            if t.text == "psi":
                self.expect_op(">=")
                return PsiGeq(self.ident("an evaluation literal"))
            if t.text == "state":
                self.expect_op("=")
                return StateIs(self.ident("a state identifier"))
            if t.text == "in":
                return InSet(self.ident("a set name"))
            raise self.error(f"unknown atom {t.text!r}", t)
        raise self.error(f"expected a formula, found {t.text or 'end of input'!r}", t)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


def _quote(s):
    if _BARE.match(s) and s not in KEYWORDS:
        return s
    return json.dumps(s, ensure_ascii=False)


def format_formula(f: Formula) -> str:
    """Canonical text; ``parse_formula(format_formula(f)) == f``."""
    def operand(g):
        s = format_formula(g)
        return f"({s})" if isinstance(g, (And, Or, Implies)) else s

    if isinstance(f, Fixed):
        return "fixed"
    if isinstance(f, PsiTop):
        return "psi_top"
    if isinstance(f, PsiGeq):
        return f"psi >= {_quote(f.literal)}"
    if isinstance(f, StateIs):
        return f"state = {_quote(f.ident)}"
    if isinstance(f, InSet):
        return f"in {_quote(f.name)}"
    if isinstance(f, Not):
        return f"not {operand(f.sub)}"
    if isinstance(f, Modal):
        return f"{f.op}[{f.relation}] {operand(f.sub)}"
    sym = {And: "and", Or: "or", Implies: "->"}[type(f)]
    return f"{operand(f.left)} {sym} {operand(f.right)}"


@dataclass(frozen=True)
class StateSet:
    """A subset of an algebra's states, kept in declaration order."""

    states: tuple

    def __contains__(self, x):
        return x in self.states

    def __iter__(self):
        return iter(self.states)

    def __len__(self):
        return len(self.states)

    def as_set(self):
        return frozenset(self.states)


class _Kripke:
    def __init__(self, alg: FiniteAlpayAlgebra):
        self.alg = alg
        zero = alg.monoid.zero
        self.all = frozenset(alg.states)
        self.succ = {PHI: {}, ANY: {}}
        for x in alg.states:
            self.succ[PHI][x] = (alg.action[(x, alg.phi[x])],)
            nxt = []
            for g in alg.monoid.generators:
                if g != zero:
                    y = alg.action[(x, g)]
                    if y not in nxt:
                        nxt.append(y)
            self.succ[ANY][x] = tuple(nxt)
        self.pred = {r: {x: [] for x in alg.states} for r in RELATIONS}
        for r in RELATIONS:
            for x, ys in self.succ[r].items():
                for y in ys:
                    self.pred[r][y].append(x)

    def ex(self, r, s):
        return frozenset(x for x in self.all if any(y in s for y in self.succ[r][x]))

    def ef(self, r, s):
        seen = set(s)
        todo = list(s)
        while todo:
            for p in self.pred[r][todo.pop()]:
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    def eg(self, r, s):
        z = frozenset(s)
        while True:
            nz = z & self.ex(r, z)
            if nz == z:
                return z
            z = nz


def _eval(k: _Kripke, f, env):
    alg = k.alg
    if isinstance(f, Fixed):
        zero = alg.monoid.zero
        return frozenset(x for x in alg.states if alg.phi[x] == zero)
    if isinstance(f, PsiTop):
        top = alg.eval_order.top_value
        if top is None:
            top = max(alg.psi[x] for x in alg.states)
        return frozenset(x for x in alg.states if alg.psi[x] == top)
    if isinstance(f, PsiGeq):
        v = alg.eval_order.value(f.literal)
        return frozenset(x for x in alg.states if alg.psi[x] >= v)
    if isinstance(f, StateIs):
        alg.require_state(f.ident)
        return frozenset([f.ident])
    if isinstance(f, InSet):
        if f.name in env:
            members = env[f.name]
        elif f.name in alg.named_sets:
            members = alg.named_sets[f.name]
        else:
            raise UnknownIdentifierError("set", f.name)
        for x in members:
            alg.require_state(x)
        return frozenset(members)
    if isinstance(f, Not):
        return k.all - _eval(k, f.sub, env)
    if isinstance(f, And):
        return _eval(k, f.left, env) & _eval(k, f.right, env)
    if isinstance(f, Or):
        return _eval(k, f.left, env) | _eval(k, f.right, env)
    if isinstance(f, Implies):
        return (k.all - _eval(k, f.left, env)) | _eval(k, f.right, env)
    if isinstance(f, Modal):
        s = _eval(k, f.sub, env)
        r = f.relation
        if f.op == "EX":
            return k.ex(r, s)
        if f.op == "EF":
            return k.ef(r, s)
        if f.op == "EG":
            return k.eg(r, s)
        # universal operators are the duals of the existential ones
        neg = k.all - s
        if f.op == "AX":
            return k.all - k.ex(r, neg)
        if f.op == "AF":
            return k.all - k.eg(r, neg)
        return k.all - k.ef(r, neg)
    raise TypeError(f"not a formula: {f!r}")


def model_check(alg: FiniteAlpayAlgebra, f, env: Optional[dict] = None) -> StateSet:
    """States satisfying *f* (a Formula or its text)."""
    if isinstance(f, str):
        f = parse_formula(f)
    sat = _eval(_Kripke(alg), f, dict(env or {}))
    return StateSet(tuple(x for x in alg.states if x in sat))


ALL_STATES_CONVERGE = "all-states-converge"
UNIQUE_GLOBAL_ATTRACTOR = "unique-global-attractor"
EXISTS_STATE_SATISFYING = "exists-state-satisfying"
CLAIMS = (ALL_STATES_CONVERGE, UNIQUE_GLOBAL_ATTRACTOR, EXISTS_STATE_SATISFYING)


@dataclass
class ClaimResult:
    claim: str
    verdict: bool
    witness: Optional[tuple] = None
    counterexample: Optional[tuple] = None
    attractors: list = field(default_factory=list)
    detail: str = ""

    def render(self):
        lines = [f"claim {self.claim}: {'TRUE' if self.verdict else 'FALSE'}"]
        if self.attractors:
            lines.append("attractors: " + ", ".join(self.attractors))
        for label, item in (("witness", self.witness), ("counterexample", self.counterexample)):
            if item is not None:
                state, traj = item
                path = " -> ".join(traj.states()) if traj is not None else state
                lines.append(f"{label}: {state}" + (f"  ({path})" if traj is not None else ""))
        if self.detail:
            lines.append(self.detail)
        return "\n".join(lines)


def check_claim(alg: FiniteAlpayAlgebra, claim: str, formula=None, env=None) -> ClaimResult:
    if claim == EXISTS_STATE_SATISFYING:
        if formula is None:
            raise ValueError("exists-state-satisfying needs a formula")
        sat = model_check(alg, formula, env)
        if sat.states:
            return ClaimResult(claim, True, witness=(sat.states[0], None),
                               detail=f"{len(sat)} of {len(alg.states)} states satisfy it")
        return ClaimResult(claim, False, counterexample=(alg.states[0], None),
                           detail="no state satisfies the formula")
    if claim not in (ALL_STATES_CONVERGE, UNIQUE_GLOBAL_ATTRACTOR):
        raise ValueError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)}")

    # no axiom precondition here: a cycling algebra simply makes the claim false
    outcomes = {x: phi_infinity(alg, x, len(alg.states) + 1) for x in alg.states}
    attractors = []
    for o in outcomes.values():
        if o.converged and o.state not in attractors:
            attractors.append(o.state)
    for x, o in outcomes.items():
        if not o.converged:
            return ClaimResult(claim, False, counterexample=(x, o.trajectory), attractors=attractors,
                               detail=f"trajectory from {x} ended as {o.result}")
    if claim == ALL_STATES_CONVERGE:
        first = alg.states[0]
        return ClaimResult(claim, True, witness=(first, outcomes[first].trajectory),
                           attractors=attractors)
    if len(attractors) == 1:
        first = alg.states[0]
        return ClaimResult(claim, True, witness=(attractors[0], outcomes[first].trajectory),
                           attractors=attractors)
    for x, o in outcomes.items():
        if o.state != attractors[0]:
            return ClaimResult(claim, False, counterexample=(x, o.trajectory), attractors=attractors,
                               detail=f"{len(attractors)} distinct attractors")
    raise AssertionError("unreachable")
