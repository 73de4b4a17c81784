# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular kernels. Moduli must be below 2**31 so products fit in int64."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64* _load(list a, Py_ssize_t rows, Py_ssize_t cols, i64 p) except NULL:
    # entries are reduced into [0, p) on the way in
    cdef i64* buf = <i64*> malloc(max(rows * cols, 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef list row
    for i in range(rows):
        row = a[i]
        for j in range(cols):
            buf[i * cols + j] = row[j] % p
            if buf[i * cols + j] < 0:
                buf[i * cols + j] += p
    return buf


cdef list _dump(i64* buf, Py_ssize_t rows, Py_ssize_t cols):
    cdef Py_ssize_t i, j
    cdef list out = []
    cdef list row
    for i in range(rows):
        row = [0] * cols
        for j in range(cols):
            row[j] = buf[i * cols + j]
        out.append(row)
    return out


cdef inline bint _lazy_ok(Py_ssize_t updates, i64 p):
    """Can ``updates`` unreduced additions of products below ``p**2`` stay in int64?"""
    cdef double bound = <double> (updates + 1) * <double> p * <double> p
    return bound < 4.0e18


cdef inline i64 _inv(i64 x, i64 p):
    cdef i64 r = 1, e = p - 2, b = x % p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def matmul_mod(list a, list b, long long n):
    cdef Py_ssize_t rows = len(a)
    if rows == 0:
        return []
    cdef Py_ssize_t inner = len(b)
    cdef Py_ssize_t cols = len(b[0]) if inner else 0
    cdef i64* A = _load(a, rows, inner, n)
    cdef i64* B = _load(b, inner, cols, n)
    cdef i64* C = <i64*> malloc(max(rows * cols, 1) * sizeof(i64))
    cdef Py_ssize_t i, j, k
    cdef i64 acc, x
    cdef bint lazy = _lazy_ok(inner, n)
    try:
        for i in range(rows):
            for j in range(cols):
                C[i * cols + j] = 0
            for k in range(inner):
                x = A[i * inner + k]
                if x == 0:
                    continue
                if lazy:
                    for j in range(cols):
                        C[i * cols + j] += x * B[k * cols + j]
                else:
                    for j in range(cols):
                        C[i * cols + j] = (C[i * cols + j] + x * B[k * cols + j]) % n
            if lazy:
                for j in range(cols):
                    C[i * cols + j] %= n
        return _dump(C, rows, cols)
    finally:
        free(A)
        free(B)
        free(C)


cdef Py_ssize_t _rref(i64* m, Py_ssize_t rows, Py_ssize_t cols, i64 p, list pivots, bint full):
    # entries may sit unreduced (but nonnegative) between steps when that
    # cannot overflow; anything read as a pivot or multiplier is reduced first
    cdef bint lazy = _lazy_ok(rows, p)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, t
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            m[i * cols + c] %= p
            if piv < 0 and m[i * cols + c] != 0:
                piv = i
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r * cols + j]
                m[r * cols + j] = m[piv * cols + j]
                m[piv * cols + j] = t
        inv = _inv(m[r * cols + c], p)
        for j in range(c, cols):
            m[r * cols + j] = (m[r * cols + j] % p) * inv % p
        for i in range(0 if full else r + 1, rows):
            if i == r:
                continue
            f = m[i * cols + c] % p
            if f != 0:
                f = p - f
                if lazy:
                    for j in range(c, cols):
                        m[i * cols + j] += f * m[r * cols + j]
                else:
                    for j in range(c, cols):
                        m[i * cols + j] = (m[i * cols + j] + f * m[r * cols + j]) % p
        pivots.append(c)
        r += 1
    for i in range(rows * cols):
        m[i] %= p
    return r


def rref_mod_p(list a, long long p):
    cdef Py_ssize_t rows = len(a)
    cdef Py_ssize_t cols = len(a[0]) if rows else 0
    if rows == 0:
        return [], []
    cdef i64* m = _load(a, rows, cols, p)
    cdef list pivots = []
    try:
        _rref(m, rows, cols, p, pivots, True)
        return _dump(m, rows, cols), pivots
    finally:
        free(m)


def rank_mod_p(list a, long long p):
    cdef Py_ssize_t rows = len(a)
    cdef Py_ssize_t cols = len(a[0]) if rows else 0
    if rows == 0:
        return 0
    cdef i64* m = _load(a, rows, cols, p)
    cdef list pivots = []
    try:
        return _rref(m, rows, cols, p, pivots, False)
    finally:
        free(m)


def det_mod_p(list a, long long p):
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return 1
    cdef i64* m = _load(a, n, n, p)
    cdef bint lazy = _lazy_ok(n, p)
    cdef Py_ssize_t c, i, j, piv
    cdef i64 det = 1, inv, f, t
    try:
        for c in range(n):
            piv = -1
            for i in range(c, n):
                m[i * n + c] %= p
                if piv < 0 and m[i * n + c] != 0:
                    piv = i
            if piv < 0:
                return 0
            if piv != c:
                for j in range(n):
                    t = m[c * n + j]
                    m[c * n + j] = m[piv * n + j]
                    m[piv * n + j] = t
                det = (p - det) % p
            for j in range(c, n):
                m[c * n + j] %= p
            det = det * m[c * n + c] % p
            inv = _inv(m[c * n + c], p)
            for i in range(c + 1, n):
                f = m[i * n + c] * inv % p
                if f != 0:
                    f = p - f
                    if lazy:
                        for j in range(c, n):
                            m[i * n + j] += f * m[c * n + j]
                    else:
                        for j in range(c, n):
                            m[i * n + j] = (m[i * n + j] + f * m[c * n + j]) % p
        return det % p
    finally:
        free(m)


def isotropic_mod_pk(long long a, long long b, long long p, int k):
    cdef i64 q = 1
    cdef int e
    for e in range(k):
        q *= p
    a %= q
    if a < 0:
        a += q
    b %= q
    if b < 0:
        b += q
    cdef char* sq = <char*> malloc(q)
    cdef char* reach = <char*> malloc(q)
    if sq == NULL or reach == NULL:
        raise MemoryError()
    cdef i64 x, y, v
    try:
        for x in range(q):
            sq[x] = 0
            reach[x] = 0
        for x in range(q):
            sq[x * x % q] = 1
        for y in range(q):
            if sq[(a + b * (y * y % q)) % q]:
                return True
        for x in range(q):
            if sq[(a * (x * x % q) + b) % q]:
                return True
        y = 0
        while y < q:
            reach[b * (y * y % q) % q] = 1
            y += p
        x = 0
        while x < q:
            v = (1 - a * (x * x % q) % q) % q
            if v < 0:
                v += q
            if reach[v]:
                return True
            x += p
        return False
    finally:
        free(sq)
        free(reach)
