"""Smith normal form over the integers, backed by the compiled kernel when available."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _backend


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple
    rank: int
    shape: tuple
    left: Optional[list] = None
    right: Optional[list] = None
    right_inverse: Optional[list] = None

    def diagonal(self):
        rows, cols = self.shape
        d = [[0] * cols for _ in range(rows)]
        for i, f in enumerate(self.invariant_factors):
            d[i][i] = f
        return d

    def verify(self, matrix) -> bool:
        """left @ matrix @ right == diagonal, both transforms unimodular, factors a divisibility chain."""
        if self.left is None:
            raise ValueError("transforms were not retained")
        f = self.invariant_factors
        if any(x <= 0 for x in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            return False
        if matmul(matmul(self.left, matrix, self.shape[0]), self.right, self.shape[0]) != self.diagonal():
            return False
        return abs(determinant(self.left)) == 1 and abs(determinant(self.right)) == 1


def _shape(matrix, cols):
    rows = len(matrix)
    if rows:
        c = len(matrix[0])
        if any(len(r) != c for r in matrix):
            raise ValueError("ragged matrix")
        if cols is not None and cols != c:
            raise ValueError("cols disagrees with the row length")
        return rows, c
    return 0, cols or 0


def smith_normal_form(matrix, transforms: bool = False, cols: Optional[int] = None,
                      backend: Optional[str] = None) -> SNFResult:
    """Invariant factors of an integer matrix (list of rows).

    ``cols`` is only needed to give a 0-row matrix a width. With
    *transforms*, unimodular ``left``/``right`` (and ``right_inverse``) are
    kept so that ``left @ matrix @ right`` is the diagonal form.
    """
    rows, ncols = _shape(matrix, cols)
    factors, left, right, rinv = _backend.snf(matrix, rows, ncols, transforms, backend)
    return SNFResult(tuple(factors), len(factors), (rows, ncols), left, right, rinv)


def matmul(a, b, rows_a=None):
    if rows_a is None:
        rows_a = len(a)
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    if inner == 0:
        return [[0] * cols for _ in range(rows_a)]
    out = []
    for row in a:
        acc = [0] * cols
        for k, v in enumerate(row):
            if v:
                bk = b[k]
                for j in range(cols):
                    acc[j] += v * bk[j]
        out.append(acc)
    return out


def determinant(m) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
