"""Graphviz DOT rendering of the state-transition graph."""

from __future__ import annotations

from .algebra import FiniteAlpayAlgebra, is_fixed_point
from .homology import EdgePolicy, enumerate_edges


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(alg: FiniteAlpayAlgebra, policy: EdgePolicy = EdgePolicy()) -> str:
    """Nodes in state order, edges in (state, label) order; fixed points get a double border."""
    lines = ["digraph alpay {", "  rankdir=LR;", "  node [shape=box];"]
    for x in alg.states:
        attrs = [f"label={_q(f'{x} | ψ={alg.psi[x]}')}"]
        if is_fixed_point(alg, x):
            attrs.append("peripheries=2")
        lines.append(f"  {_q(x)} [{', '.join(attrs)}];")
    for e in enumerate_edges(alg, policy):
        lines.append(f"  {_q(e.source)} -> {_q(e.target)} [label={_q(e.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
