"""Chain complex of the state-transition graph, H0/H1 via Smith normal form, and a graph oracle.

0-cells are states, 1-cells are transitions x --a--> x + a, and 2-cells are
declared fillers (commuting squares or explicit integer cycles).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FiniteAlpayAlgebra
from .errors import IllFormedError
from .snf import matmul, smith_normal_form

GENERATORS = "generators"
ALL = "all"
KEEP = "keep"
DROP = "drop"

CONSISTENT = "consistent-with-conjecture"
COUNTER_ONLY_IF = "counterexample-to-only-if"
COUNTER_IF = "counterexample-to-if"


@dataclass(frozen=True)
class EdgePolicy:
    edges: str = GENERATORS
    self_loops: str = KEEP

    def __post_init__(self):
        if self.edges not in (GENERATORS, ALL):
            raise ValueError(f"edges must be {GENERATORS!r} or {ALL!r}, got {self.edges!r}")
        if self.self_loops not in (KEEP, DROP):
            raise ValueError(f"self_loops must be {KEEP!r} or {DROP!r}, got {self.self_loops!r}")

    def __str__(self):
        return f"edges={self.edges},self-loops={self.self_loops}"


ALL_POLICIES = tuple(EdgePolicy(e, s) for e in (GENERATORS, ALL) for s in (KEEP, DROP))


@dataclass(frozen=True, order=True)
class Edge:
    source: str
    label: str
    target: str

    @property
    def is_loop(self):
        return self.source == self.target


@dataclass(frozen=True)
class TwoCell:
    """A 2-cell given by a commuting square at (x, a, b) or an explicit chain of (coeff, state, adj)."""

    kind: str
    data: tuple

    @classmethod
    def square(cls, x, a, b):
        return cls("square", (x, a, b))

    @classmethod
    def chain(cls, terms):
        return cls("chain", tuple((int(c), s, a) for c, s, a in terms))

    def terms(self, alg: FiniteAlpayAlgebra):
        """Signed (coeff, source, label) terms before validation."""
        if self.kind == "square":
            x, a, b = self.data
            act = alg.action
            return [(1, x, a), (1, act[(x, a)], b), (-1, x, b), (-1, act[(x, b)], a)]
        return list(self.data)


def enumerate_edges(alg: FiniteAlpayAlgebra, policy: EdgePolicy) -> list:
    zero = alg.monoid.zero
    labels = alg.monoid.generators if policy.edges == GENERATORS else alg.monoid.elements
    labels = [a for a in labels if a != zero]
    edges = []
    for x in alg.states:
        for a in labels:
            y = alg.action[(x, a)]
            if x == y and policy.self_loops == DROP:
                continue
            edges.append(Edge(x, a, y))
    return edges


@dataclass(frozen=True)
class ChainComplex:
    vertices: tuple
    edges: tuple
    cells: tuple
    d1: list
    d2: list
    policy: EdgePolicy

    @property
    def vertex_index(self):
        return {x: i for i, x in enumerate(self.vertices)}

    @property
    def edge_index(self):
        return {(e.source, e.label): i for i, e in enumerate(self.edges)}

    @property
    def self_loop_count(self):
        return sum(e.is_loop for e in self.edges)


def _check_state(alg, x, what):
    if x not in alg.states_set:
        raise IllFormedError(f"{what}: unknown state {x!r}")


def build_complex(alg: FiniteAlpayAlgebra, policy: EdgePolicy = EdgePolicy(), two_cells=()) -> ChainComplex:
    """Assemble d1 (|X| x |E|) and d2 (|E| x #cells) and assert d1 . d2 = 0."""
    edges = enumerate_edges(alg, policy)
    vix = {x: i for i, x in enumerate(alg.states)}
    eix = {(e.source, e.label): i for i, e in enumerate(edges)}
    d1 = [[0] * len(edges) for _ in alg.states]
    for j, e in enumerate(edges):
        if not e.is_loop:
            d1[vix[e.source]][j] -= 1
            d1[vix[e.target]][j] += 1

    columns = []
    for cell in two_cells:
        what = f"{cell.kind} {cell.data}"
        if cell.kind == "square":
            x, a, b = cell.data
            _check_state(alg, x, what)
            for adj in (a, b):
                if adj not in alg.monoid.elements_set:
                    raise IllFormedError(f"{what}: unknown adjustment {adj!r}")
            add = alg.monoid.table
            if alg.action[(x, add[(a, b)])] != alg.action[(x, add[(b, a)])]:
                raise IllFormedError(f"{what}: square does not commute")
        col = [0] * len(edges)
        for coeff, src, label in cell.terms(alg):
            _check_state(alg, src, what)
            if (src, label) not in eix:
                raise IllFormedError(f"{what}: edge ({src}, {label}) is not in the complex under {policy}")
            col[eix[(src, label)]] += coeff
        boundary = [sum(d1[i][j] * col[j] for j in range(len(edges))) for i in range(len(alg.states))]
        if any(boundary):
            raise IllFormedError(f"{what}: boundary is not a cycle")
        columns.append(col)
    d2 = [[columns[k][j] for k in range(len(columns))] for j in range(len(edges))]
    prod = matmul(d1, d2) if edges else [[0] * len(columns) for _ in alg.states]
    assert all(v == 0 for row in prod for v in row), "d1 . d2 != 0"
    return ChainComplex(tuple(alg.states), tuple(edges), tuple(two_cells), d1, d2, policy)


@dataclass(frozen=True)
class HomologyReport:
    b0: int
    b1: int
    h1_torsion: tuple
    policy: EdgePolicy
    self_loop_count: int
    vertices: int
    edges: int
    cells: int

    def render(self):
        tors = " + ".join(f"Z/{t}" for t in self.h1_torsion)
        h1 = " + ".join(filter(None, [f"Z^{self.b1}" if self.b1 else "", tors])) or "0"
        return "\n".join([
            f"policy: {self.policy}",
            f"vertices {self.vertices}, edges {self.edges} ({self.self_loop_count} self-loops), "
            f"2-cells {self.cells}",
            f"b0 = {self.b0}",
            f"b1 = {self.b1}",
            f"H1 = {h1}",
        ])


def homology_report(c: ChainComplex) -> HomologyReport:
    nv, ne, nc = len(c.vertices), len(c.edges), len(c.cells)
    if nc == 0:
        # H1 = ker d1, free of rank ne - r1; the transforms are not needed
        r1 = smith_normal_form(c.d1, cols=ne).rank
        rank2, torsion = 0, ()
    else:
        s1 = smith_normal_form(c.d1, transforms=True, cols=ne)
        r1 = s1.rank
        # ker d1 has Z-basis = columns r1.. of the right transform; coordinates
        # of im d2 in that basis are the matching rows of right_inverse @ d2
        coords = matmul(s1.right_inverse, c.d2) if ne else []
        if any(v for row in coords[:r1] for v in row):
            raise AssertionError("image of d2 escapes ker d1")
        s2 = smith_normal_form(coords[r1:], cols=nc)
        rank2, torsion = s2.rank, tuple(f for f in s2.invariant_factors if f > 1)
    return HomologyReport(
        b0=nv - r1,
        b1=(ne - r1) - rank2,
        h1_torsion=torsion,
        policy=c.policy,
        self_loop_count=c.self_loop_count,
        vertices=nv,
        edges=ne,
        cells=nc,
    )


class _DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class OracleReport:
    components: int
    cycle_rank: int
    directed_acyclic: bool
    policy: EdgePolicy


def _directed_acyclic(vertices, edges):
    succ = {x: [] for x in vertices}
    for e in edges:
        succ[e.source].append(e.target)
    white, grey, black = 0, 1, 2
    color = {x: white for x in vertices}
    for root in vertices:
        if color[root] != white:
            continue
        color[root] = grey
        stack = [(root, iter(succ[root]))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = black
                stack.pop()
            elif color[nxt] == grey:
                return False
            elif color[nxt] == white:
                color[nxt] = grey
                stack.append((nxt, iter(succ[nxt])))
    return True


def graph_oracle(alg: FiniteAlpayAlgebra, policy: EdgePolicy = EdgePolicy()) -> OracleReport:
    """Components by union-find, cycle rank |E| - |X| + components, and directed acyclicity by DFS."""
    edges = enumerate_edges(alg, policy)
    ds = _DisjointSet(alg.states)
    for e in edges:
        ds.union(e.source, e.target)
    components = len({ds.find(x) for x in alg.states})
    return OracleReport(components, len(edges) - len(alg.states) + components,
                        _directed_acyclic(alg.states, edges), policy)


def _strongly_connected(alg, edges):
    if not alg.states:
        return True
    succ = {x: set() for x in alg.states}
    pred = {x: set() for x in alg.states}
    for e in edges:
        succ[e.source].add(e.target)
        pred[e.target].add(e.source)

    def reach(start, nbrs):
        seen, todo = {start}, [start]
        while todo:
            for y in nbrs[todo.pop()]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen

    root = alg.states[0]
    return len(reach(root, succ)) == len(alg.states) == len(reach(root, pred))


@dataclass(frozen=True)
class PolicyFinding:
    policy: EdgePolicy
    b0: int
    b1: int
    directed_acyclic: bool
    weakly_connected: bool
    strongly_connected: bool
    classification: str


@dataclass
class ProbeFinding:
    findings: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def for_policy(self, policy: EdgePolicy) -> PolicyFinding:
        for f in self.findings:
            if f.policy == policy:
                return f
        raise KeyError(str(policy))

    @property
    def impossible_seen(self):
        return any(f.classification == COUNTER_IF for f in self.findings)

    def render(self):
        lines = [f"{'policy':<32} {'b0':>3} {'b1':>4} {'acyclic':>8}  classification"]
        for f in self.findings:
            lines.append(f"{str(f.policy):<32} {f.b0:>3} {f.b1:>4} {str(f.directed_acyclic):>8}  "
                         f"{f.classification}")
        if self.impossible_seen:
            lines.append("WARNING: directed cycle with b1 = 0 and no 2-cells; this should be impossible")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def classify(b1: int, directed_acyclic: bool) -> str:
    if b1 != 0 and directed_acyclic:
        return COUNTER_ONLY_IF
    if b1 == 0 and not directed_acyclic:
        return COUNTER_IF
    return CONSISTENT


def conjecture4_probe(alg: FiniteAlpayAlgebra, policies=ALL_POLICIES) -> ProbeFinding:
    """Compare 'H1 vanishes' with 'no directed cycle' under each edge policy, without 2-cells."""
    out = ProbeFinding()
    for policy in policies:
        h = homology_report(build_complex(alg, policy))
        edges = enumerate_edges(alg, policy)
        acyclic = _directed_acyclic(alg.states, edges)
        out.findings.append(PolicyFinding(
            policy=policy,
            b0=h.b0,
            b1=h.b1,
            directed_acyclic=acyclic,
            weakly_connected=h.b0 == 1,
            strongly_connected=_strongly_connected(alg, edges),
            classification=classify(h.b1, acyclic),
        ))
    out.notes.append("cycles here are integer 1-cycles of the transition graph with orientation "
                     "reversal, not adjustment sequences summing to zero in the monoid; the two "
                     "notions differ when adjustments have no inverses")
    out.notes.append("b0 counts weakly connected components; strong connectivity is reported "
                     "separately for the reachability reading of H0")
    return out
