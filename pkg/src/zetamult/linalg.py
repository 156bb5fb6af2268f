"""Small exact linear algebra kernel over Fraction.

Matrices are lists of lists of Fraction.  Everything here is O(n^3)
Gaussian elimination; the dimensions in this package stay below ~150 so
no pivoting sophistication is needed beyond exact nonzero pivots.
"""

from fractions import Fraction

F0 = Fraction(0)
F1 = Fraction(1)


def zeros(rows, cols):
    return [[F0] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = F1
    return m


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for j in range(k):
            x = ai[j]
            if x:
                bj = b[j]
                for c in range(m):
                    if bj[c]:
                        oi[c] += x * bj[c]
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace_inner(a, b):
    """tr(a b), the trace form used throughout lie_core."""
    n = len(a)
    s = F0
    for i in range(n):
        for j in range(n):
            if a[i][j] and b[j][i]:
                s += a[i][j] * b[j][i]
    return s


def vec(m):
    """Row-major flattening."""
    return [x for row in m for x in row]


def rref(rows):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def row_space_basis(rows):
    red, pivots = rref(rows)
    return [red[i] for i in range(len(pivots))]


def nullspace(matrix):
    """Basis of {x : matrix @ x = 0} as a list of vectors."""
    ncols = len(matrix[0]) if matrix else 0
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F0] * ncols
        v[fc] = F1
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


class SpanSolver:
    """Solves for exact coordinates of vectors inside span(columns).

    Built once from a list of column vectors; solve() raises ValueError
    for vectors outside the span.
    """

    def __init__(self, columns):
        self.ncols = len(columns)
        self.dim = len(columns[0])
        # augmented [A | I] row-reduced once; solve by elimination replay
        self._cols = columns
        aug = [[columns[j][i] for j in range(self.ncols)] for i in range(self.dim)]
        self._red, pivots = rref([row + [F1 if k == i else F0
                                         for k in range(self.dim)]
                                  for i, row in enumerate(aug)])
        self._coord_rows = [(i, p) for i, p in enumerate(pivots) if p < self.ncols]
        self._check_rows = [i for i, p in enumerate(pivots) if p >= self.ncols]
        if len(self._coord_rows) != self.ncols:
            raise ValueError("columns are linearly dependent")

    def solve(self, v):
        n = self.ncols
        coords = [F0] * n
        for i, p in self._coord_rows:
            row = self._red[i]
            coords[p] = sum((row[n + k] * v[k] for k in range(self.dim)
                             if row[n + k] and v[k]), F0)
        # consistency: rows with no column pivot must annihilate v
        for i in self._check_rows:
            row = self._red[i]
            s = sum((row[n + k] * v[k] for k in range(self.dim)
                     if row[n + k] and v[k]), F0)
            if s:
                raise ValueError("vector outside span")
        return coords


def det(matrix):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    m = [list(r) for r in matrix]
    n = len(m)
    sign = F1
    d = F1
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return F0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        pv = m[c][c]
        d *= pv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / pv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * d


def fraction_sqrt(q):
    """Exact square root of a non-negative Fraction, or None."""
    import math
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)
