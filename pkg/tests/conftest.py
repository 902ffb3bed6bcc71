import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from alpay_workbench import builtins
from alpay_workbench.logic import MODAL_OPS, And, Fixed, Implies, Modal, Not, Or, PsiGeq, PsiTop, StateIs

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ALGEBRA_NAMES = list(builtins.ALGEBRAS)
VALID_NAMES = [n for n in ALGEBRA_NAMES if n != "BADLOOP"]


@pytest.fixture(params=ALGEBRA_NAMES)
def any_builtin(request):
    return builtins.builtin(request.param)


def formulas(alg, max_leaves=6):
    """Random formulas whose atoms resolve against *alg*."""
    psis = sorted({str(v) for v in alg.psi.values()})
    atoms = st.one_of(
        st.just(Fixed()),
        st.just(PsiTop()),
        st.sampled_from(psis).map(PsiGeq),
        st.sampled_from(alg.states).map(StateIs),
    )

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Modal, st.sampled_from(MODAL_OPS), st.sampled_from(["phi", "any"]), children),
        )

    return st.recursive(atoms, extend, max_leaves=max_leaves)


# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[number])
