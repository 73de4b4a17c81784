"""Pure-Python reference kernels (same API as the compiled ``_ckernels``).

Matrices are lists of row lists of ints; entries are reduced modulo the
stated modulus on the way in, as the compiled kernels do.
"""


def matmul_mod(a, b, n):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    bt = [[b[k][j] for k in range(inner)] for j in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) % n for col in bt] for row in a]


def rref_mod_p(a, p):
    """Reduced row echelon form over GF(p); returns ``(rows, pivots)``."""
    m = [[x % p for x in r] for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        # the pivot row is zero left of c, so only the tail changes
        tail = [x * inv % p for x in m[r][c:]]
        m[r] = m[r][:c] + tail
        for i in range(rows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = mi[:c] + [(x - f * y) % p for x, y in zip(mi[c:], tail)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(a, p):
    return len(rref_mod_p(a, p)[1])


def det_mod_p(a, p):
    m = [[x % p for x in r] for r in a]
    n = len(m)
    det = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        pc = m[c][c]
        det = det * pc % p
        inv = pow(pc, p - 2, p)
        tail = m[c][c + 1:]
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            if f:
                # column c is not read again, so only the tail is kept current
                m[i] = [0] * (c + 1) + [(x - f * y) % p for x, y in zip(m[i][c + 1:], tail)]
    return det % p


def isotropic_mod_pk(a, b, p, k):
    """Is there a primitive solution of ``z^2 = a x^2 + b y^2`` modulo ``p**k``?

    Scaling a unit coordinate to 1 splits the search into three cases:
    ``x = 1``; ``y = 1``; ``z = 1`` with ``x, y`` divisible by ``p``.
    """
    q = p**k
    a %= q
    b %= q
    squares = [False] * q
    for z in range(q):
        squares[z * z % q] = True
    for y in range(q):
        if squares[(a + b * y * y) % q]:
            return True
    for x in range(q):
        if squares[(a * x * x + b) % q]:
            return True
    reach = set()
    for y in range(0, q, p):
        reach.add(b * y * y % q)
    for x in range(0, q, p):
        if (1 - a * x * x) % q in reach:
            return True
    return False
