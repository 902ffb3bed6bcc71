"""Named example algebras used throughout the tests and the CLI."""

from .algebra import AdjustmentMonoid, EvalOrder, FiniteAlpayAlgebra


def _table(elements, op):
    return {(a, b): op(a, b) for a in elements for b in elements}


def counter5() -> FiniteAlpayAlgebra:
    """Saturating counter 0..5: x + a = min(x + a, 5), phi steps by 1 until 5."""
    ids = [str(i) for i in range(6)]
    sat = lambda a, b: str(min(int(a) + int(b), 5))
    monoid = AdjustmentMonoid(ids, "0", _table(ids, sat), commutative=True, generators=("1",))
    order = EvalOrder.integer()
    return FiniteAlpayAlgebra(
        states=ids,
        monoid=monoid,
        action={(x, a): sat(x, a) for x in ids for a in ids},
        phi={x: "0" if x == "5" else "1" for x in ids},
        psi={x: order.value(int(x)) for x in ids},
        eval_order=order,
        initial_state="0",
    )


def cycle3() -> FiniteAlpayAlgebra:
    """Z/3 acting on itself; every state fixed, constant evaluation."""
    ids = ["0", "1", "2"]
    mod = lambda a, b: str((int(a) + int(b)) % 3)
    monoid = AdjustmentMonoid(ids, "0", _table(ids, mod), commutative=True, generators=("1",))
    order = EvalOrder.integer()
    return FiniteAlpayAlgebra(
        states=ids,
        monoid=monoid,
        action={(x, a): mod(x, a) for x in ids for a in ids},
        phi={x: "0" for x in ids},
        psi={x: order.value(0) for x in ids},
        eval_order=order,
        initial_state="0",
    )


_BITS = {"0": 0, "a": 1, "b": 2, "ab": 3}
_NAMES = {v: k for k, v in _BITS.items()}


def diamond() -> FiniteAlpayAlgebra:
    """Two commuting idempotent switches a, b acting on the bit-pairs 00, 10, 01, 11."""
    elements = ["0", "a", "b", "ab"]
    states = ["00", "10", "01", "11"]
    code = {"00": 0, "10": 1, "01": 2, "11": 3}
    state_of = {v: k for k, v in code.items()}
    join = lambda a, b: _NAMES[_BITS[a] | _BITS[b]]
    monoid = AdjustmentMonoid(elements, "0", _table(elements, join), commutative=True,
                              generators=("a", "b"))
    order = EvalOrder.integer()
    phi = {"00": "a", "10": "b", "01": "a", "11": "0"}
    return FiniteAlpayAlgebra(
        states=states,
        monoid=monoid,
        action={(x, a): state_of[code[x] | _BITS[a]] for x in states for a in elements},
        phi=phi,
        psi={x: order.value(bin(code[x]).count("1")) for x in states},
        eval_order=order,
        initial_state="00",
    )


def selfloop() -> FiniteAlpayAlgebra:
    """One state p with an idempotent adjustment e that fixes it."""
    monoid = AdjustmentMonoid(
        ["0", "e"], "0",
        {("0", "0"): "0", ("0", "e"): "e", ("e", "0"): "e", ("e", "e"): "e"},
        commutative=True, generators=("e",))
    order = EvalOrder.integer()
    return FiniteAlpayAlgebra(
        states=["p"],
        monoid=monoid,
        action={("p", "0"): "p", ("p", "e"): "p"},
        phi={"p": "0"},
        psi={"p": order.value(0)},
        eval_order=order,
        initial_state="p",
    )


def badloop() -> FiniteAlpayAlgebra:
    """g swaps a and b forever while psi stays flat; t is an absorbing optimum.

    Fails only the strict-progress clause of Axiom 4. The sink t exists so
    that the global maximum of psi is attained at a fixed point.
    """
    elements = ["0", "g"]
    monoid = AdjustmentMonoid(
        elements, "0",
        {("0", "0"): "0", ("0", "g"): "g", ("g", "0"): "g", ("g", "g"): "0"},
        commutative=True, generators=("g",))
    order = EvalOrder.integer()
    action = {("a", "0"): "a", ("a", "g"): "b",
              ("b", "0"): "b", ("b", "g"): "a",
              ("t", "0"): "t", ("t", "g"): "t"}
    return FiniteAlpayAlgebra(
        states=["a", "b", "t"],
        monoid=monoid,
        action=action,
        phi={"a": "g", "b": "g", "t": "0"},
        psi={"a": order.value(0), "b": order.value(0), "t": order.value(1)},
        eval_order=order,
        initial_state="a",
    )


def twopeaks() -> FiniteAlpayAlgebra:
    """Two disjoint saturating counters 0..5 and 0'..5' sharing one monoid."""
    base = counter5()
    left = list(base.states)
    right = [x + "'" for x in left]
    action = dict(base.action)
    for x in left:
        for a in base.monoid.elements:
            action[(x + "'", a)] = base.action[(x, a)] + "'"
    phi = dict(base.phi)
    phi.update({x + "'": base.phi[x] for x in left})
    psi = dict(base.psi)
    psi.update({x + "'": base.psi[x] for x in left})
    return FiniteAlpayAlgebra(
        states=left + right,
        monoid=base.monoid,
        action=action,
        phi=phi,
        psi=psi,
        eval_order=base.eval_order,
        initial_state="0",
        named_sets={"left": left, "right": right},
    )


def poset3():
    """Category spec: objects 0, 1, 2 with f: 0->1, g: 1->2 and their composite gf."""
    from .category import SmallCategorySpec

    return SmallCategorySpec.from_arrows(
        objects=["0", "1", "2"],
        arrows=[("f", "0", "1"), ("g", "1", "2"), ("gf", "0", "2")],
        compose={("g", "f"): "gf"},
    )


ALGEBRAS = {
    "COUNTER5": counter5,
    "CYCLE3": cycle3,
    "DIAMOND": diamond,
    "SELFLOOP": selfloop,
    "BADLOOP": badloop,
    "TWOPEAKS": twopeaks,
}

CATEGORIES = {"POSET3": poset3}

NAMES = tuple(ALGEBRAS) + tuple(CATEGORIES)


def builtin(name):
    """Look up a catalogue entry by name (case-insensitive)."""
    key = name.upper()
    if key in ALGEBRAS:
        return ALGEBRAS[key]()
    if key in CATEGORIES:
        return CATEGORIES[key]()
    raise KeyError(f"no built-in named {name!r}; choose from {', '.join(NAMES)}")
