"""Random algebras over union-closed set families.

States are the members of a union-closed family of subsets of ``range(n)``
containing the empty and the full set. The monoid is the family under union,
acting on itself, with psi = cardinality. Any phi that picks a strictly growing
generator (or zero at the top) satisfies every axiom, so no rejection step is
needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .algebra import AdjustmentMonoid, EvalOrder, FiniteAlpayAlgebra

MAX_GROUND = 8
MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class RandomAlgebraParams:
    ground_set_size: int
    family_size: int = 4
    seed: int = 0
    copies: int = 1

    def problems(self):
        out = []
        if not 1 <= self.ground_set_size <= MAX_GROUND:
            out.append(f"ground_set_size must be in 1..{MAX_GROUND}, got {self.ground_set_size}")
        if not 0 <= self.family_size <= 64:
            out.append(f"family_size must be in 0..64, got {self.family_size}")
        if not 0 <= self.seed <= MAX_SEED:
            out.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.copies not in (1, 2):
            out.append(f"copies must be 1 or 2, got {self.copies}")
        return out


def set_name(mask: int) -> str:
    return "{" + ",".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


def union_closure(masks) -> set:
    family = set(masks)
    frontier = list(family)
    while frontier:
        new = []
        for a in frontier:
            for b in list(family):
                c = a | b
                if c not in family:
                    family.add(c)
                    new.append(c)
        frontier = new
    return family


def join_irreducibles(family) -> list:
    """Nonzero members that are not the union of the members strictly below them."""
    out = []
    for s in family:
        if s == 0:
            continue
        below = 0
        for t in family:
            if t != s and t | s == s:
                below |= t
        if below != s:
            out.append(s)
    return out


def random_family(n: int, family_size: int, rng: random.Random) -> list:
    """A union-closed family with 0 and the full set, ordered by (size, mask)."""
    full = (1 << n) - 1
    family = union_closure({0, full, *(rng.getrandbits(n) for _ in range(family_size))})
    return sorted(family, key=lambda m: (bin(m).count("1"), m))


def random_algebra(params: RandomAlgebraParams, seed: Optional[int] = None) -> FiniteAlpayAlgebra:
    """Build the algebra for *params*; *seed* overrides ``params.seed`` when given.

    With ``copies=2`` the result is a disjoint union of two independently drawn
    lattices (the second copy's names carry a prime), giving two attractors.
    """
    if seed is not None:
        params = RandomAlgebraParams(params.ground_set_size, params.family_size, seed, params.copies)
    problems = params.problems()
    if problems:
        raise ValueError("; ".join(problems))
    rng = random.Random(params.seed)
    n = params.ground_set_size

    blocks = []
    for _ in range(params.copies):
        family = random_family(n, params.family_size, rng)
        irreducible = set(join_irreducibles(family))
        gens = [m for m in family if m in irreducible or (m != 0 and rng.random() < 0.5)]
        blocks.append((family, gens))
    if params.copies == 1:
        return _single(blocks[0], rng)
    return _disjoint(blocks, rng)


def _single(block, rng):
    family, gens = block
    names = [set_name(m) for m in family]
    ix = {m: set_name(m) for m in family}
    table = {(ix[a], ix[b]): ix[a | b] for a in family for b in family}
    monoid = AdjustmentMonoid(names, ix[0], table, True, [ix[g] for g in gens])
    action = dict(table)
    phi = {}
    for x in family:
        growing = [g for g in gens if x | g != x]
        phi[ix[x]] = ix[rng.choice(growing)] if growing else ix[0]
    order = EvalOrder.integer()
    psi = {ix[m]: order.value(bin(m).count("1")) for m in family}
    return FiniteAlpayAlgebra(names, monoid, action, phi, psi, order, ix[0])


def _disjoint(blocks, rng):
    """Two lattices side by side; monoid is the product of the two union monoids."""
    (fam0, gens0), (fam1, gens1) = blocks
    s0 = {m: set_name(m) for m in fam0}
    s1 = {m: set_name(m) + "'" for m in fam1}
    states = [s0[m] for m in fam0] + [s1[m] for m in fam1]

    def pair(a, b):
        return f"({set_name(a)},{set_name(b)})"

    elements = [pair(a, b) for a in fam0 for b in fam1]
    table = {(pair(a, b), pair(c, d)): pair(a | c, b | d)
             for a in fam0 for b in fam1 for c in fam0 for d in fam1}
    gens = [pair(g, 0) for g in gens0] + [pair(0, g) for g in gens1]
    monoid = AdjustmentMonoid(elements, pair(0, 0), table, True, gens)
    action = {}
    for x in fam0:
        for a in fam0:
            for b in fam1:
                action[(s0[x], pair(a, b))] = s0[x | a]
    for x in fam1:
        for a in fam0:
            for b in fam1:
                action[(s1[x], pair(a, b))] = s1[x | b]
    phi = {}
    for x in fam0:
        growing = [g for g in gens0 if x | g != x]
        phi[s0[x]] = pair(rng.choice(growing), 0) if growing else pair(0, 0)
    for x in fam1:
        growing = [g for g in gens1 if x | g != x]
        phi[s1[x]] = pair(0, rng.choice(growing)) if growing else pair(0, 0)
    order = EvalOrder.integer()
    psi = {**{s0[m]: order.value(bin(m).count("1")) for m in fam0},
           **{s1[m]: order.value(bin(m).count("1")) for m in fam1}}
    named = {"left": [s0[m] for m in fam0], "right": [s1[m] for m in fam1]}
    return FiniteAlpayAlgebra(states, monoid, action, phi, psi, order, s0[0], named)
