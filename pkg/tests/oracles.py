"""Independent reference implementations used only by the tests.

Each one takes a different route from the library code it checks: string-keyed
loops instead of index tables, rank over Q via sympy instead of integer SNF,
and explicit path enumeration instead of fixpoints.
"""

from itertools import product

import sympy

from alpay_workbench.logic import And, Fixed, Implies, InSet, Modal, Not, Or, PsiGeq, PsiTop, StateIs


def naive_axioms(alg):
    """Set of failing axiom ids, computed straight from the dicts."""
    E, X, z = alg.monoid.elements, alg.states, alg.monoid.zero
    add, act, phi, psi = alg.monoid.table, alg.action, alg.phi, alg.psi
    failed = set()
    if any(add[(a, z)] != a or add[(z, a)] != a for a in E):
        failed.add("1")
    if any(add[(add[(a, b)], c)] != add[(a, add[(b, c)])] for a, b, c in product(E, repeat=3)):
        failed.add("1")
    if alg.monoid.commutative and any(add[(a, b)] != add[(b, a)] for a, b in product(E, repeat=2)):
        failed.add("1")
    if any(act[(x, z)] != x for x in X):
        failed.add("2")
    if any(act[(act[(x, a)], b)] != act[(x, add[(a, b)])] for x, a, b in product(X, E, E)):
        failed.add("2")
    for x in X:
        if phi[x] != z:
            if not psi[act[(x, phi[x])]] > psi[x]:
                failed.add("4.1")
        elif any(psi[act[(x, a)]] > psi[x] for a in E):
            failed.add("4.2")
    top = max(psi[x] for x in X)
    if any(psi[x] == top and phi[x] != z for x in X):
        failed.add("5")
    return failed


def rational_betti(complex_):
    """(b0, b1) from ranks over Q."""
    nv, ne = len(complex_.vertices), len(complex_.edges)
    r1 = sympy.Matrix(complex_.d1).rank() if ne and nv else 0
    r2 = sympy.Matrix(complex_.d2).rank() if ne and complex_.cells else 0
    return nv - r1, ne - r1 - r2


def sympy_invariant_factors(m):
    from sympy.matrices.normalforms import smith_normal_form

    if not m or not m[0]:
        return ()
    d = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    return tuple(v for v in diag if v)


class PathSemantics:
    """CTL by enumerating explicit finite paths.

    A path of |X| + 1 states must repeat a state, so it closes a lasso: the
    states admitting an infinite path are exactly the starts of such paths.
    E-operators quantify over infinite paths; A-operators hold vacuously where
    no infinite path exists.
    """

    def __init__(self, alg, relation):
        self.alg = alg
        self.n = len(alg.states)
        zero = alg.monoid.zero
        self.succ = {}
        for x in alg.states:
            if relation == "phi":
                self.succ[x] = [alg.action[(x, alg.phi[x])]]
            else:
                self.succ[x] = sorted({alg.action[(x, g)] for g in alg.monoid.generators if g != zero})

    def paths(self, x, length):
        """All paths with exactly *length* states starting at *x*."""
        if length == 1:
            yield (x,)
            return
        for y in self.succ[x]:
            for rest in self.paths(y, length - 1):
                yield (x,) + rest

    def live(self):
        return {x for x in self.alg.states if next(self.paths(x, self.n + 1), None) is not None}

    def infinite_prefixes(self, x, length):
        live = self.live()
        return [p for p in self.paths(x, length) if p[-1] in live]

    def ex(self, s):
        live = self.live()
        return {x for x in self.alg.states if any(y in s and y in live for y in self.succ[x])}

    def ax(self, s):
        live = self.live()
        return {x for x in self.alg.states if all(y in s for y in self.succ[x] if y in live)}

    def ef(self, s):
        return {x for x in self.alg.states
                if any(any(y in s for y in p) for p in self.infinite_prefixes(x, self.n + 1))}

    def af(self, s):
        return {x for x in self.alg.states
                if all(any(y in s for y in p) for p in self.infinite_prefixes(x, self.n + 1))}

    def eg(self, s):
        return {x for x in self.alg.states
                if any(all(y in s for y in p) for p in self.infinite_prefixes(x, self.n + 1))}

    def ag(self, s):
        return {x for x in self.alg.states
                if all(all(y in s for y in p) for p in self.infinite_prefixes(x, self.n + 1))}


def path_check(alg, f, env=None):
    env = env or {}
    X = set(alg.states)
    if isinstance(f, Fixed):
        return {x for x in X if alg.phi[x] == alg.monoid.zero}
    if isinstance(f, PsiTop):
        top = alg.eval_order.top_value or max(alg.psi.values())
        return {x for x in X if alg.psi[x] == top}
    if isinstance(f, PsiGeq):
        v = alg.eval_order.value(f.literal)
        return {x for x in X if alg.psi[x] >= v}
    if isinstance(f, StateIs):
        return {f.ident}
    if isinstance(f, InSet):
        return set(env.get(f.name, alg.named_sets.get(f.name, ())))
    if isinstance(f, Not):
        return X - path_check(alg, f.sub, env)
    if isinstance(f, And):
        return path_check(alg, f.left, env) & path_check(alg, f.right, env)
    if isinstance(f, Or):
        return path_check(alg, f.left, env) | path_check(alg, f.right, env)
    if isinstance(f, Implies):
        return (X - path_check(alg, f.left, env)) | path_check(alg, f.right, env)
    if isinstance(f, Modal):
        s = path_check(alg, f.sub, env)
        sem = PathSemantics(alg, f.relation)
        return getattr(sem, f.op.lower())(s)
    raise TypeError(f)
