"""Pure-Python reference kernels.

Same contracts as the compiled ``_kernels`` extension. These are always
available and are the fallback whenever the extension is missing or an
int64 computation overflows.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf(matrix, rows, cols, transforms=False):
    """Smith normal form of an integer matrix given as a list of rows.

    Returns ``(factors, left, right, right_inv)`` where ``factors`` are the
    nonzero diagonal entries in divisibility order. The three matrices are
    ``None`` unless *transforms* is true; then ``left @ matrix @ right`` is
    the diagonal form and ``right_inv`` is the inverse of ``right``.
    """
    a = [list(map(int, row)) for row in matrix]
    left = _identity(rows) if transforms else None
    right = _identity(cols) if transforms else None
    rinv = _identity(cols) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if transforms:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in right:
                row[i], row[j] = row[j], row[i]
            rinv[i], rinv[j] = rinv[j], rinv[i]

    def row_sub(i, t, q):
        # row_i -= q * row_t
        ri, rt = a[i], a[t]
        for k in range(cols):
            if rt[k]:
                ri[k] -= q * rt[k]
        if transforms:
            li, lt = left[i], left[t]
            for k in range(rows):
                if lt[k]:
                    li[k] -= q * lt[k]

    def col_sub(j, t, q):
        # col_j -= q * col_t
        for row in a:
            if row[t]:
                row[j] -= q * row[t]
        if transforms:
            for row in right:
                if row[t]:
                    row[j] -= q * row[t]
            rt, rj = rinv[t], rinv[j]
            for k in range(cols):
                if rj[k]:
                    rt[k] += q * rj[k]

    factors = []
    t = 0
    limit = min(rows, cols)
    while t < limit:
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)

        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                v = a[i][t]
                if v:
                    row_sub(i, t, v // p)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                v = a[t][j]
                if v:
                    col_sub(j, t, v // p)
                    if a[t][j]:
                        clean = False
            if not clean:
                # a remainder survived: it is smaller than the pivot
                best = None
                for i in range(t + 1, rows):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t + 1, cols):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, rows):
                row = a[i]
                for j in range(t + 1, cols):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad puts a non-multiple into row t
            row_sub(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if transforms:
                left[t] = [-v for v in left[t]]
        factors.append(a[t][t])
        t += 1
    return factors, left, right, rinv


def scan_associativity(add, cap):
    """Triples (a, b, c) of element indices with (a+b)+c != a+(b+c)."""
    n = len(add)
    found = []
    for a in range(n):
        row_a = add[a]
        for b in range(n):
            ab = row_a[b]
            row_ab = add[ab]
            row_b = add[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    found.append((a, b, c))
                    if len(found) >= cap:
                        return found
    return found


def scan_action_compat(act, add, cap):
    """Triples (x, a, b) with (x+a)+b != x+(a+b)."""
    n = len(add)
    found = []
    for x, row_x in enumerate(act):
        for a in range(n):
            row_xa = act[row_x[a]]
            row_a = add[a]
            for b in range(n):
                if row_xa[b] != row_x[row_a[b]]:
                    found.append((x, a, b))
                    if len(found) >= cap:
                        return found
    return found
