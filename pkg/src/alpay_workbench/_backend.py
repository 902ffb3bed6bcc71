"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels are used. Setting ``ALPAY_WORKBENCH_PURE=1`` forces the fallback.
"""

import os

from . import _kernels_py

_compiled = None
if os.environ.get("ALPAY_WORKBENCH_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def compiled_available():
    return _compiled is not None


def snf(matrix, rows, cols, transforms=False, backend=None):
    use = backend or BACKEND
    if use == "compiled" and _compiled is not None:
        try:
            return _compiled.snf(matrix, rows, cols, transforms)
        except OverflowError:
            pass
    return _kernels_py.snf(matrix, rows, cols, transforms)


def scan_associativity(add, cap, backend=None):
    if (backend or BACKEND) == "compiled" and _compiled is not None:
        return _compiled.scan_associativity(add, cap)
    return _kernels_py.scan_associativity(add, cap)


def scan_action_compat(act, add, cap, backend=None):
    if (backend or BACKEND) == "compiled" and _compiled is not None:
        return _compiled.scan_action_compat(act, add, cap)
    return _kernels_py.scan_action_compat(act, add, cap)
