"""Iterating the update rule: trajectories, fixed points and the termination audit."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import FiniteAlpayAlgebra, EvalValue, net_sum, validate_algebra
from .errors import PreconditionError

FIXED_POINT = "fixed_point"
CYCLE_DETECTED = "cycle_detected"
BUDGET_EXHAUSTED = "budget_exhausted"

CONVERGED = "converged"
NONTERMINATING = "nonterminating"


@dataclass(frozen=True)
class StepRecord:
    state_before: str
    adjustment: str
    state_after: str
    psi_after: EvalValue


@dataclass(frozen=True)
class Trajectory:
    start: str
    steps: tuple
    outcome: str
    # fixed_point: the fixed state; cycle_detected: index (into states())
    # of the first revisited state
    fixed_state: Optional[str] = None
    first_repeat_index: Optional[int] = None
    start_psi: Optional[EvalValue] = None

    def states(self):
        return [self.start] + [s.state_after for s in self.steps]

    @property
    def final_state(self):
        return self.steps[-1].state_after if self.steps else self.start

    @property
    def adjustments(self):
        return [s.adjustment for s in self.steps]

    def cycle(self):
        """States on the detected cycle, in visiting order."""
        if self.outcome != CYCLE_DETECTED:
            return []
        return self.states()[self.first_repeat_index:-1]


@dataclass(frozen=True)
class FixpointOutcome:
    result: str
    state: Optional[str] = None
    steps_taken: int = 0
    cycle: tuple = ()
    trajectory: Optional[Trajectory] = None

    @property
    def converged(self):
        return self.result == CONVERGED


@dataclass
class TerminationReport:
    outcomes: dict = field(default_factory=dict)
    max_steps_observed: int = 0
    step_bound: int = 0
    bound_respected: bool = True

    @property
    def all_converged(self):
        return all(o.converged for o in self.outcomes.values())

    @property
    def passed(self):
        return self.all_converged and self.bound_respected

    def attractors(self):
        seen = []
        for o in self.outcomes.values():
            if o.converged and o.state not in seen:
                seen.append(o.state)
        return seen

    def render(self):
        lines = [f"{'start':<12} {'outcome':<15} {'target':<12} steps"]
        for x, o in self.outcomes.items():
            lines.append(f"{x:<12} {o.result:<15} {str(o.state or ''):<12} {o.steps_taken}")
        lines.append(f"max steps observed: {self.max_steps_observed}  bound: {self.step_bound}  "
                     f"bound respected: {self.bound_respected}")
        lines.append("theorem 1 audit: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def step(alg: FiniteAlpayAlgebra, x) -> StepRecord:
    alg.require_state(x)
    a = alg.phi[x]
    y = alg.action[(x, a)]
    return StepRecord(x, a, y, alg.psi[y])


def run_trajectory(alg: FiniteAlpayAlgebra, x0, budget: int) -> Trajectory:
    """Iterate x -> x + phi(x) from *x0*.

    Stops at a fixed point, at the first revisited state, or after *budget*
    steps, whichever comes first.
    """
    alg.require_state(x0)
    if not isinstance(budget, int) or budget < 1:
        raise ValueError(f"budget must be a positive integer, got {budget!r}")
    zero = alg.monoid.zero
    seen = {x0: 0}
    steps = []
    x = x0
    while True:
        if alg.phi[x] == zero:
            return Trajectory(x0, tuple(steps), FIXED_POINT, fixed_state=x, start_psi=alg.psi[x0])
        if len(steps) == budget:
            return Trajectory(x0, tuple(steps), BUDGET_EXHAUSTED, start_psi=alg.psi[x0])
        rec = step(alg, x)
        steps.append(rec)
        x = rec.state_after
        if x in seen:
            return Trajectory(x0, tuple(steps), CYCLE_DETECTED,
                              first_repeat_index=seen[x], start_psi=alg.psi[x0])
        seen[x] = len(steps)


def phi_infinity(alg: FiniteAlpayAlgebra, x0, budget: int) -> FixpointOutcome:
    t = run_trajectory(alg, x0, budget)
    if t.outcome == FIXED_POINT:
        return FixpointOutcome(CONVERGED, t.fixed_state, len(t.steps), trajectory=t)
    if t.outcome == CYCLE_DETECTED:
        return FixpointOutcome(NONTERMINATING, None, len(t.steps), tuple(t.cycle()), trajectory=t)
    return FixpointOutcome(BUDGET_EXHAUSTED, t.final_state, len(t.steps), trajectory=t)


def psi_trace(t: Trajectory) -> list:
    return [t.start_psi] + [s.psi_after for s in t.steps]


def distinct_psi_count(alg: FiniteAlpayAlgebra) -> int:
    return len({alg.psi[x].payload for x in alg.states})


def theorem1_audit(alg: FiniteAlpayAlgebra) -> TerminationReport:
    """Run phi-infinity from every state and check convergence within the strict-increase bound.

    Raises PreconditionError when the algebra fails axiom validation.
    """
    report = validate_algebra(alg)
    if not report.passed:
        raise PreconditionError("termination audit needs an algebra satisfying the axioms", report)
    budget = len(alg.states) + 1
    bound = distinct_psi_count(alg) - 1
    out = TerminationReport(step_bound=bound)
    for x in alg.states:
        o = phi_infinity(alg, x, budget)
        out.outcomes[x] = o
        out.max_steps_observed = max(out.max_steps_observed, o.steps_taken)
        if o.converged and o.steps_taken > bound:
            out.bound_respected = False
    return out


def net_adjustment_holds(alg: FiniteAlpayAlgebra, t: Trajectory) -> bool:
    """start + (sum of applied adjustments) lands on the final state."""
    total = net_sum(alg.monoid, t.adjustments)
    return alg.action[(t.start, total)] == t.final_state
