"""The reachability category of an algebra, functor/naturality audits, and embedding small categories.

Morphisms x -> y are identified by their net adjustment: two generator
sequences from x are the same morphism when their monoid sums agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .algebra import (AdjustmentMonoid, EvalOrder, FiniteAlpayAlgebra, structure_laws_hold,
                      validate_algebra)
from .errors import IllFormedError, PreconditionError


@dataclass(frozen=True, order=True)
class Morphism:
    source: str
    target: str
    net: str


@dataclass(frozen=True)
class CategoryView:
    objects: tuple
    hom: Mapping
    depth: int

    def morphisms(self):
        for x in self.objects:
            for y in self.objects:
                yield from sorted(self.hom[(x, y)])

    def outgoing(self, x):
        out = []
        for y in self.objects:
            out.extend(sorted(self.hom[(x, y)]))
        return out


@dataclass
class AuditReport:
    """Pass/fail outcome of a law audit; ``ill_formed`` preempts the laws."""

    name: str
    witnesses: list = field(default_factory=list)
    ill_formed: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.ill_formed and not self.witnesses

    def render(self):
        lines = [f"{self.name}: " + ("PASS" if self.passed else ("ILL-FORMED" if self.ill_formed else "FAIL"))]
        lines += [f"  ill-formed: {p}" for p in self.ill_formed]
        lines += [f"  {law}: {subject} {why}" for law, subject, why in self.witnesses]
        for k, v in self.info.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def default_depth(alg: FiniteAlpayAlgebra) -> int:
    return len(alg.states) * len(alg.monoid.elements)


def reachable_nets(alg: FiniteAlpayAlgebra, depth: int) -> dict:
    """Net adjustments of generator sequences of length <= depth, with their shortest length."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    m = alg.monoid
    nets = {m.zero: 0}
    frontier = [m.zero]
    for d in range(1, depth + 1):
        nxt = []
        for n in frontier:
            for g in m.generators:
                s = m.table[(n, g)]
                if s not in nets:
                    nets[s] = d
                    nxt.append(s)
        if not nxt:
            break
        frontier = nxt
    return nets


def hom_set(alg: FiniteAlpayAlgebra, x, y, depth: int) -> frozenset:
    alg.require_state(x)
    alg.require_state(y)
    nets = reachable_nets(alg, depth)
    return frozenset(Morphism(x, y, n) for n in nets if alg.action[(x, n)] == y)


def category_view(alg: FiniteAlpayAlgebra, depth: Optional[int] = None) -> CategoryView:
    if depth is None:
        depth = default_depth(alg)
    nets = reachable_nets(alg, depth)
    hom = {(x, y): set() for x in alg.states for y in alg.states}
    for x in alg.states:
        for n in nets:
            hom[(x, alg.action[(x, n)])].add(Morphism(x, alg.action[(x, n)], n))
    return CategoryView(alg.states, {k: frozenset(v) for k, v in hom.items()}, depth)


def _require_structure(alg):
    report = validate_algebra(alg)
    if not structure_laws_hold(report):
        raise PreconditionError("monoid or action laws fail; the reachability category is undefined",
                                report)


def category_law_audit(alg: FiniteAlpayAlgebra, depth: int) -> AuditReport:
    """Identity neutrality, associativity and well-typed composition over the depth-bounded view.

    Also records whether every morphism has an inverse in the view (groupoid).
    """
    if depth < 2:
        raise ValueError("category law audit needs depth >= 2")
    _require_structure(alg)
    view = category_view(alg, depth)
    m = alg.monoid
    zero = m.zero
    add = m.table
    out = AuditReport("category laws")
    for x in alg.states:
        if Morphism(x, x, zero) not in view.hom[(x, x)]:
            out.witnesses.append(("identity-present", (x,), "identity morphism missing"))
    for f in view.morphisms():
        if alg.action[(f.source, f.net)] != f.target:
            out.witnesses.append(("typing", (f.source, f.target, f.net), "net does not realize target"))
        if add[(zero, f.net)] != f.net or add[(f.net, zero)] != f.net:
            out.witnesses.append(("identity-neutral", (f.source, f.target, f.net),
                                  "composing with the identity changes the net"))
    triples = 0
    outgoing = {x: view.outgoing(x) for x in alg.states}
    for f in view.morphisms():
        for g in outgoing[f.target]:
            fg = add[(f.net, g.net)]
            if alg.action[(f.source, fg)] != g.target:
                out.witnesses.append(("composite-target", (f.source, g.target, fg),
                                      f"composite of {f.net} then {g.net} misses {g.target}"))
            for h in outgoing[g.target]:
                triples += 1
                left = add[(fg, h.net)]
                right = add[(f.net, add[(g.net, h.net)])]
                if left != right:
                    out.witnesses.append(("associativity", (f.net, g.net, h.net),
                                          f"({f.net}.{g.net}).{h.net} = {left} but "
                                          f"{f.net}.({g.net}.{h.net}) = {right}"))
    out.info["depth"] = depth
    out.info["morphisms"] = sum(len(v) for v in view.hom.values())
    out.info["composable triples"] = triples
    out.info["groupoid"] = is_groupoid(alg, view)
    return out


def is_groupoid(alg: FiniteAlpayAlgebra, view: CategoryView) -> bool:
    zero = alg.monoid.zero
    add = alg.monoid.table
    for f in view.morphisms():
        if not any(add[(f.net, g.net)] == zero and add[(g.net, f.net)] == zero
                   for g in view.hom[(f.target, f.source)]):
            return False
    return True


@dataclass
class ExtremaReport:
    depth: int
    terminal: list
    initial: list
    terminal_by_reachability: list
    initial_by_reachability: list
    hom_sizes: dict = field(default_factory=dict)

    @property
    def degenerate(self):
        n = len({k[0] for k in self.hom_sizes})
        return n > 0 and len(self.terminal) == len(self.initial) == n

    def render(self):
        def fmt(xs):
            return "{" + ", ".join(xs) + "}" if xs else "none found"
        lines = [
            f"terminal (unique net):        {fmt(self.terminal)}",
            f"initial  (unique net):        {fmt(self.initial)}",
            f"terminal (reachability only): {fmt(self.terminal_by_reachability)}",
            f"initial  (reachability only): {fmt(self.initial_by_reachability)}",
            "note: morphisms are identified by net adjustment; a sequence-based reading "
            "would count distinct paths and can only shrink these sets",
        ]
        if self.degenerate:
            lines.append("degenerate: every object is both initial and terminal")
        return "\n".join(lines)


def extremal_objects(alg: FiniteAlpayAlgebra, depth: Optional[int] = None) -> ExtremaReport:
    if depth is None:
        depth = default_depth(alg)
    if depth < len(alg.states):
        raise ValueError(f"depth {depth} is below the state count {len(alg.states)}")
    view = category_view(alg, depth)
    X = alg.states
    sizes = {k: len(v) for k, v in view.hom.items()}
    return ExtremaReport(
        depth=depth,
        terminal=[x for x in X if all(sizes[(y, x)] == 1 for y in X)],
        initial=[x for x in X if all(sizes[(x, y)] == 1 for y in X)],
        terminal_by_reachability=[x for x in X if all(sizes[(y, x)] >= 1 for y in X)],
        initial_by_reachability=[x for x in X if all(sizes[(x, y)] >= 1 for y in X)],
        hom_sizes=sizes,
    )


@dataclass(frozen=True)
class HomomorphismSpec:
    state_map: Mapping
    adj_map: Mapping

    @classmethod
    def identity(cls, alg):
        return cls({x: x for x in alg.states}, {a: a for a in alg.monoid.elements})


def homomorphism_audit(src: FiniteAlpayAlgebra, dst: FiniteAlpayAlgebra,
                       h: HomomorphismSpec) -> AuditReport:
    """Monoid homomorphism, equivariance and phi-compatibility, exhaustively."""
    out = AuditReport("homomorphism")
    for x in src.states:
        if x not in h.state_map:
            out.ill_formed.append(f"state map undefined at {x!r}")
        elif h.state_map[x] not in dst.states_set:
            out.ill_formed.append(f"state map sends {x!r} to unknown state {h.state_map[x]!r}")
    for a in src.monoid.elements:
        if a not in h.adj_map:
            out.ill_formed.append(f"adjustment map undefined at {a!r}")
        elif h.adj_map[a] not in dst.monoid.elements_set:
            out.ill_formed.append(f"adjustment map sends {a!r} to unknown adjustment {h.adj_map[a]!r}")
    if out.ill_formed:
        return out
    F, FA = h.state_map, h.adj_map
    m1, m2 = src.monoid, dst.monoid
    if FA[m1.zero] != m2.zero:
        out.witnesses.append(("zero", (m1.zero,), f"maps to {FA[m1.zero]}, not {m2.zero}"))
    for a in m1.elements:
        for b in m1.elements:
            lhs = FA[m1.table[(a, b)]]
            rhs = m2.table[(FA[a], FA[b])]
            if lhs != rhs:
                out.witnesses.append(("additive", (a, b), f"F({a}+{b}) = {lhs} but F({a})+F({b}) = {rhs}"))
    for x in src.states:
        for a in m1.elements:
            lhs = F[src.action[(x, a)]]
            rhs = dst.action[(F[x], FA[a])]
            if lhs != rhs:
                out.witnesses.append(("equivariant", (x, a), f"F({x}+{a}) = {lhs} but F({x})+F({a}) = {rhs}"))
        if FA[src.phi[x]] != dst.phi[F[x]]:
            out.witnesses.append(("phi-compatible", (x,),
                                  f"F(phi({x})) = {FA[src.phi[x]]} but phi(F({x})) = {dst.phi[F[x]]}"))
    return out


@dataclass(frozen=True)
class NaturalTransformationSpec:
    components: Mapping


def naturality_audit(src, dst, F: HomomorphismSpec, G: HomomorphismSpec,
                     eta: NaturalTransformationSpec) -> AuditReport:
    for name, h in (("F", F), ("G", G)):
        r = homomorphism_audit(src, dst, h)
        if not r.passed:
            raise PreconditionError(f"{name} is not a homomorphism", r)
    out = AuditReport("naturality")
    comp = eta.components
    for x in src.states:
        if x not in comp:
            out.ill_formed.append(f"component missing at {x!r}")
        elif comp[x] not in dst.monoid.elements_set:
            out.ill_formed.append(f"component at {x!r} is unknown adjustment {comp[x]!r}")
        elif dst.action[(F.state_map[x], comp[x])] != G.state_map[x]:
            out.ill_formed.append(
                f"component at {x!r} sends F({x}) = {F.state_map[x]} to "
                f"{dst.action[(F.state_map[x], comp[x])]}, not G({x}) = {G.state_map[x]}")
    if out.ill_formed:
        return out
    add = dst.monoid.table
    for x in src.states:
        for a in src.monoid.generators:
            x2 = src.action[(x, a)]
            via_f = add[(F.adj_map[a], comp[x2])]
            via_g = add[(comp[x], G.adj_map[a])]
            if via_f != via_g:
                out.witnesses.append(("square-net", (x, a), f"F({a}) then eta({x2}) = {via_f} but "
                                      f"eta({x}) then G({a}) = {via_g}"))
            start = F.state_map[x]
            if dst.action[(start, via_f)] != G.state_map[x2] or dst.action[(start, via_g)] != G.state_map[x2]:
                out.witnesses.append(("square-target", (x, a), f"square does not land on G({x2})"))
    return out


@dataclass(frozen=True)
class SmallCategorySpec:
    """A finite category. ``compose[(g, f)]`` is g after f; ``None`` marks a truncated composite."""

    objects: tuple
    arrows: tuple
    compose: Mapping
    identities: Mapping

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(self, "compose", dict(self.compose))
        object.__setattr__(self, "identities", dict(self.identities))

    @classmethod
    def from_arrows(cls, objects, arrows, compose, identities=None):
        """Build a spec adding identity arrows ``id_<obj>`` and their compositions."""
        objects = tuple(objects)
        arrows = [tuple(a) for a in arrows]
        if identities is None:
            identities = {o: f"id_{o}" for o in objects}
            arrows = [(identities[o], o, o) for o in objects] + arrows
        comp = dict(compose)
        for name, dom, cod in arrows:
            # unknown endpoints are left for problems() to report
            if cod in identities:
                comp.setdefault((identities[cod], name), name)
            if dom in identities:
                comp.setdefault((name, identities[dom]), name)
        return cls(objects, tuple(arrows), comp, identities)

    def dom(self, f):
        return self._arrow[f][0]

    def cod(self, f):
        return self._arrow[f][1]

    @property
    def _arrow(self):
        return {n: (d, c) for n, d, c in self.arrows}

    def arrow_names(self):
        return [a[0] for a in self.arrows]

    def hom(self, x, y):
        return [n for n, d, c in self.arrows if d == x and c == y]

    def problems(self):
        probs = []
        names = self.arrow_names()
        if len(set(names)) != len(names):
            probs.append("duplicate arrow names")
        if len(set(self.objects)) != len(self.objects):
            probs.append("duplicate objects")
        objs = set(self.objects)
        arrow = self._arrow
        for n, d, c in self.arrows:
            if d not in objs or c not in objs:
                probs.append(f"arrow {n!r} has unknown endpoint")
        for o in self.objects:
            i = self.identities.get(o)
            if i not in arrow or arrow[i] != (o, o):
                probs.append(f"identity of {o!r} missing or not an endomorphism")
        if probs:
            return probs
        for (g, f), r in self.compose.items():
            if g not in arrow or f not in arrow:
                probs.append(f"composite of unknown arrows ({g!r}, {f!r})")
            elif arrow[f][1] != arrow[g][0]:
                probs.append(f"composite ({g!r} after {f!r}) given for a non-composable pair")
            elif r is not None and (r not in arrow or arrow[r] != (arrow[f][0], arrow[g][1])):
                probs.append(f"composite {g!r} after {f!r} = {r!r} has the wrong type")
        for f in names:
            for g in names:
                if arrow[f][1] == arrow[g][0] and (g, f) not in self.compose:
                    probs.append(f"composite {g!r} after {f!r} undefined")
        if probs:
            return probs
        for n in names:
            d, c = arrow[n]
            if self.compose[(self.identities[c], n)] != n or self.compose[(n, self.identities[d])] != n:
                probs.append(f"identity law fails at {n!r}")

        def comp(g, f):
            if g is None or f is None:
                return None
            return self.compose[(g, f)]

        for f in names:
            for g in names:
                if arrow[f][1] != arrow[g][0]:
                    continue
                for h in names:
                    if arrow[g][1] != arrow[h][0]:
                        continue
                    if comp(h, comp(g, f)) != comp(comp(h, g), f):
                        probs.append(f"associativity fails at ({h!r}, {g!r}, {f!r})")
        return probs


def _fresh(name, taken):
    base, k = name, 1
    while name in taken:
        name = f"{base}{k}"
        k += 1
    return name


@dataclass
class EmbeddingCertificate:
    object_map: dict
    arrow_map: dict
    hom_bijection_checked: bool
    composition_preserved: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return self.hom_bijection_checked and self.composition_preserved

    def render(self):
        lines = [f"hom-set bijection: {'PASS' if self.hom_bijection_checked else 'FAIL'}",
                 f"composition preserved: {'PASS' if self.composition_preserved else 'FAIL'}"]
        lines += [f"  {f}" for f in self.failures]
        return "\n".join(lines)


def embed_category(cat: SmallCategorySpec):
    """Realize *cat* inside a non-commutative algebra; returns ``(algebra, certificate)``.

    Monoid = arrows + {0, dead} with a+b = "a then b"; states = objects + a sink.
    A truncated composite x -> y becomes a per-hom-set overflow element that
    acts like an arrow x -> y and absorbs anything composed with it, so the
    action stays compatible.
    """
    probs = cat.problems()
    if probs:
        raise IllFormedError(probs)
    names = cat.arrow_names()
    zero = _fresh("0", set(names))
    dead = _fresh("dead", set(names) | {zero})
    bottom = _fresh("⊥", set(cat.objects))
    typ = {n: (d, c) for n, d, c in cat.arrows}

    taken = set(names) | {zero, dead}
    overflow = {}
    for (g, f), r in cat.compose.items():
        key = (typ[f][0], typ[g][1])
        if r is None and key not in overflow:
            overflow[key] = _fresh(f"overflow_{key[0]}_{key[1]}", taken)
            taken.add(overflow[key])
    typ.update({o: key for key, o in overflow.items()})
    over = set(overflow.values())

    elements = [zero] + names + [overflow[k] for k in sorted(overflow)] + [dead]
    table = {}
    for a in elements:
        for b in elements:
            if a == zero:
                table[(a, b)] = b
            elif b == zero:
                table[(a, b)] = a
            elif a == dead or b == dead or typ[a][1] != typ[b][0]:
                table[(a, b)] = dead
            else:
                r = None if a in over or b in over else cat.compose[(b, a)]
                table[(a, b)] = r if r is not None else overflow[(typ[a][0], typ[b][1])]
    states = list(cat.objects) + [bottom]
    action = {}
    for x in states:
        for a in elements:
            if a == zero:
                action[(x, a)] = x
            elif x == bottom or a == dead:
                action[(x, a)] = bottom
            else:
                action[(x, a)] = typ[a][1] if typ[a][0] == x else bottom
    order = EvalOrder.chain(["*"])
    monoid = AdjustmentMonoid(elements, zero, table, commutative=False, generators=tuple(names))
    alg = FiniteAlpayAlgebra(
        states=states,
        monoid=monoid,
        action=action,
        phi={x: zero for x in states},
        psi={x: order.value("*") for x in states},
        eval_order=order,
    )
    return alg, certify_embedding(cat, alg)


def certify_embedding(cat: SmallCategorySpec, alg: FiniteAlpayAlgebra, depth=None) -> EmbeddingCertificate:
    """Check hom_D(x, y) matches the arrow-valued nets of hom(x, y) and that composition is preserved."""
    object_map = {o: o for o in cat.objects}
    arrow_map = {n: n for n in cat.arrow_names()}
    failures = []
    view = category_view(alg, depth)
    names = set(cat.arrow_names())
    bij = True
    for x in cat.objects:
        for y in cat.objects:
            got = {m.net for m in view.hom[(object_map[x], object_map[y])] if m.net in names}
            want = {arrow_map[n] for n in cat.hom(x, y)}
            if got != want:
                bij = False
                failures.append(f"hom({x}, {y}): category has {sorted(want)}, algebra has {sorted(got)}")
    comp_ok = True
    m = alg.monoid
    arrow = {n: (d, c) for n, d, c in cat.arrows}
    for (g, f), r in cat.compose.items():
        got = m.table[(arrow_map[f], arrow_map[g])]
        if r is not None:
            if got != arrow_map[r]:
                comp_ok = False
                failures.append(f"{f} then {g}: expected {arrow_map[r]}, algebra gives {got}")
            continue
        # a truncated composite must leave the arrows but stay in hom(dom f, cod g)
        x, y = object_map[arrow[f][0]], object_map[arrow[g][1]]
        if got in names or got == m.zero or alg.action[(x, got)] != y:
            comp_ok = False
            failures.append(f"{f} then {g}: truncated composite should be a non-arrow net "
                            f"{x} -> {y}, algebra gives {got}")
    return EmbeddingCertificate(object_map, arrow_map, bij, comp_ok, failures)
