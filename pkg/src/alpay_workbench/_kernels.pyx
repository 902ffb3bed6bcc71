# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: int64 Smith normal form and exhaustive law scans.

Every arithmetic step in ``snf`` is overflow-checked; on overflow it raises
OverflowError and the caller reruns the pure-Python big-integer version.
"""

import numpy as np

cimport cython

cdef extern from *:
    """
    static inline int ck_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int ck_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int ck_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int ck_mul(long long a, long long b, long long *r) nogil
    int ck_sub(long long a, long long b, long long *r) nogil
    int ck_add(long long a, long long b, long long *r) nogil

cdef long long LIMIT = 1LL << 62


@cython.cdivision(True)
cdef inline long long floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long llabs(long long v) nogil:
    return -v if v < 0 else v


cdef int row_sub(long long[:, ::1] m, Py_ssize_t i, Py_ssize_t t, long long q) except -1:
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(m.shape[1]):
        if m[t, k] != 0:
            if ck_mul(q, m[t, k], &tmp) or ck_sub(m[i, k], tmp, &m[i, k]):
                raise OverflowError("int64 overflow in row operation")
    return 0


cdef int col_sub(long long[:, ::1] m, Py_ssize_t j, Py_ssize_t t, long long q) except -1:
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(m.shape[0]):
        if m[k, t] != 0:
            if ck_mul(q, m[k, t], &tmp) or ck_sub(m[k, j], tmp, &m[k, j]):
                raise OverflowError("int64 overflow in column operation")
    return 0


cdef int row_addmul(long long[:, ::1] m, Py_ssize_t t, Py_ssize_t j, long long q) except -1:
    # row_t += q * row_j
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(m.shape[1]):
        if m[j, k] != 0:
            if ck_mul(q, m[j, k], &tmp) or ck_add(m[t, k], tmp, &m[t, k]):
                raise OverflowError("int64 overflow in inverse update")
    return 0


cdef void swap_rows(long long[:, ::1] m, Py_ssize_t i, Py_ssize_t j):
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(m.shape[1]):
        tmp = m[i, k]
        m[i, k] = m[j, k]
        m[j, k] = tmp


cdef void swap_cols(long long[:, ::1] m, Py_ssize_t i, Py_ssize_t j):
    cdef Py_ssize_t k
    cdef long long tmp
    for k in range(m.shape[0]):
        tmp = m[k, i]
        m[k, i] = m[k, j]
        m[k, j] = tmp


def snf(matrix, Py_ssize_t rows, Py_ssize_t cols, bint transforms=False):
    """int64 Smith normal form; see ``_kernels_py.snf`` for the contract."""
    cdef Py_ssize_t i, j, t, bi, bj, limit
    cdef long long p, v, best, q
    cdef bint clean, found
    cdef long long[:, ::1] a, left, right, rinv
    arr = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        row = matrix[i]
        for j in range(cols):
            entry = row[j]
            if entry >= LIMIT or entry <= -LIMIT:
                raise OverflowError("entry outside int64 working range")
            arr[i, j] = entry
    a = arr
    # without transforms the three views are never touched; skip the O(n^2) identities
    left_arr = np.eye(rows if transforms else 1, dtype=np.int64)
    right_arr = np.eye(cols if transforms else 1, dtype=np.int64)
    rinv_arr = np.eye(cols if transforms else 1, dtype=np.int64)
    left = left_arr
    right = right_arr
    rinv = rinv_arr

    factors = []
    t = 0
    limit = rows if rows < cols else cols
    while t < limit:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, rows):
            for j in range(t, cols):
                v = llabs(a[i, j])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    bi = i
                    bj = j
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            swap_rows(a, bi, t)
            if transforms:
                swap_rows(left, bi, t)
        if bj != t:
            swap_cols(a, bj, t)
            if transforms:
                swap_cols(right, bj, t)
                swap_rows(rinv, bj, t)

        while True:
            p = a[t, t]
            clean = True
            for i in range(t + 1, rows):
                v = a[i, t]
                if v != 0:
                    q = floordiv(v, p)
                    row_sub(a, i, t, q)
                    if transforms:
                        row_sub(left, i, t, q)
                    if a[i, t] != 0:
                        clean = False
            for j in range(t + 1, cols):
                v = a[t, j]
                if v != 0:
                    q = floordiv(v, p)
                    col_sub(a, j, t, q)
                    if transforms:
                        col_sub(right, j, t, q)
                        row_addmul(rinv, t, j, q)
                    if a[t, j] != 0:
                        clean = False
            if not clean:
                best = 0
                for i in range(t + 1, rows):
                    v = llabs(a[i, t])
                    if v != 0 and (best == 0 or v < best):
                        best = v
                        bi = i
                        bj = t
                for j in range(t + 1, cols):
                    v = llabs(a[t, j])
                    if v != 0 and (best == 0 or v < best):
                        best = v
                        bi = t
                        bj = j
                if bi != t:
                    swap_rows(a, bi, t)
                    if transforms:
                        swap_rows(left, bi, t)
                if bj != t:
                    swap_cols(a, bj, t)
                    if transforms:
                        swap_cols(right, bj, t)
                        swap_rows(rinv, bj, t)
                continue
            found = False
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i, j] % p != 0:
                        found = True
                        break
                if found:
                    break
            if not found:
                break
            row_sub(a, t, i, -1)
            if transforms:
                row_sub(left, t, i, -1)
        if a[t, t] < 0:
            for j in range(cols):
                if ck_sub(0, a[t, j], &a[t, j]):
                    raise OverflowError("int64 overflow in negation")
            if transforms:
                for j in range(rows):
                    if ck_sub(0, left[t, j], &left[t, j]):
                        raise OverflowError("int64 overflow in negation")
        factors.append(int(a[t, t]))
        t += 1

    if not transforms:
        return factors, None, None, None
    return factors, left_arr.tolist(), right_arr.tolist(), rinv_arr.tolist()


def scan_associativity(add, Py_ssize_t cap):
    if len(add) == 0:
        return []
    tab = np.ascontiguousarray(add, dtype=np.int64)
    cdef long long[:, ::1] m = tab
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t a, b, c
    cdef long long ab
    found = []
    for a in range(n):
        for b in range(n):
            ab = m[a, b]
            for c in range(n):
                if m[ab, c] != m[a, m[b, c]]:
                    found.append((a, b, c))
                    if len(found) >= cap:
                        return found
    return found


def scan_action_compat(act, add, Py_ssize_t cap):
    if len(act) == 0 or len(add) == 0:
        return []
    act_arr = np.ascontiguousarray(act, dtype=np.int64)
    add_arr = np.ascontiguousarray(add, dtype=np.int64)
    cdef long long[:, ::1] s = act_arr
    cdef long long[:, ::1] m = add_arr
    cdef Py_ssize_t nx = s.shape[0]
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t x, a, b
    cdef long long xa
    found = []
    for x in range(nx):
        for a in range(n):
            xa = s[x, a]
            for b in range(n):
                if s[xa, b] != s[x, m[a, b]]:
                    found.append((x, a, b))
                    if len(found) >= cap:
                        return found
    return found
