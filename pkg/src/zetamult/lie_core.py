"""Exact matrix models of the rank-one real simple Lie algebras.

Supported families: so(n,1) (real hyperbolic), su(n,1) realified
(complex hyperbolic), sp(n,1) realified (quaternionic hyperbolic).
All arithmetic is over Fraction; root spaces are exact eigenspaces of
ad(H0) with the generator H0 normalized so the smaller restricted root
takes the value 1.

The octonionic family has no comparably simple rational matrix model and
is rejected here; its Euler-characteristic data lives in euler_topology.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import DegenerateRank, StructureViolation, UnsupportedFamily
from .linalg import F0, F1, SpanSolver, commutator, nullspace, rref, trace_inner

REAL = "real-hyperbolic"
COMPLEX = "complex-hyperbolic"
QUATERNIONIC = "quaternionic-hyperbolic"
OCTONIONIC = "octonionic-hyperbolic"

# (m_alpha, m_2alpha) as functions of the family parameter n
ROOT_MULTIPLICITIES = {
    REAL: lambda n: (n - 1, 0),
    COMPLEX: lambda n: (2 * n - 2, 1),
    QUATERNIONIC: lambda n: (4 * n - 4, 3),
}


@dataclass(frozen=True)
class Family:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind == OCTONIONIC:
            raise UnsupportedFamily(
                "octonionic hyperbolic plane has no rational matrix model here; "
                "use euler_topology for its Euler-characteristic data")
        if self.kind not in ROOT_MULTIPLICITIES:
            raise UnsupportedFamily(f"unknown family kind {self.kind!r}")
        min_n = 2 if self.kind == REAL else 1
        if self.n < min_n:
            raise UnsupportedFamily(f"{self.kind} requires n >= {min_n}")

    @property
    def d(self):
        """dim(X) = real dimension of the hyperbolic space."""
        return {REAL: self.n, COMPLEX: 2 * self.n, QUATERNIONIC: 4 * self.n}[self.kind]

    def root_multiplicities(self):
        return ROOT_MULTIPLICITIES[self.kind](self.n)

    def __str__(self):
        return f"{self.kind}(n={self.n})"


@dataclass(frozen=True)
class BasisElement:
    label: str
    space: str      # "m0" | "a0" | "n+" | "n-"
    root: int       # ad(H0) eigenvalue: 0, +-1, +-2
    matrix: tuple   # tuple of tuples of Fraction


@dataclass(frozen=True)
class LieAlgebraModel:
    family: Family
    ambient_size: int
    basis: tuple            # tuple[BasisElement]
    bracket_table: tuple    # bracket_table[i][j] = coeff tuple of [e_i, e_j]
    h0_index: int
    m0_indices: tuple
    nplus_indices: tuple    # root-1 vectors first, then root-2
    nminus_indices: tuple   # theta-images of nplus, in matching order
    form_signature: tuple   # diagonal of the invariant form J (realified)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def d(self):
        return self.family.d

    @property
    def m_alpha(self):
        return self.family.root_multiplicities()[0]

    @property
    def m_2alpha(self):
        return self.family.root_multiplicities()[1]

    def matrix_of(self, coeffs):
        n = self.ambient_size
        out = linalg.zeros(n, n)
        for c, el in zip(coeffs, self.basis):
            if c:
                for i in range(n):
                    row = el.matrix[i]
                    for j in range(n):
                        if row[j]:
                            out[i][j] += c * row[j]
        return out

    def unit(self, idx):
        v = [F0] * self.dim
        v[idx] = F1
        return v


@dataclass(frozen=True)
class ComponentSplit:
    ma_part: tuple
    nplus_part: tuple
    nminus_part: tuple


# ---------------------------------------------------------------------------
# spanning sets


def _realify_complex(mat):
    """(n+1)x(n+1) matrix of (re, im) Fraction pairs -> 2(n+1) real matrix."""
    n = len(mat)
    out = linalg.zeros(2 * n, 2 * n)
    for r in range(n):
        for c in range(n):
            a, b = mat[r][c]
            out[2 * r][2 * c] = a
            out[2 * r][2 * c + 1] = -b
            out[2 * r + 1][2 * c] = b
            out[2 * r + 1][2 * c + 1] = a
    return out


# left-multiplication matrix of the quaternion units in basis (1, i, j, k)
_QUNITS = {
    "1": ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    "i": ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)),
    "j": ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0)),
    "k": ((0, 0, 0, -1), (0, 0, -1, 0), (0, 1, 0, 0), (1, 0, 0, 0)),
}


def _realify_quaternion(mat):
    """(n+1)x(n+1) matrix of quaternion 4-tuples -> 4(n+1) real matrix."""
    n = len(mat)
    out = linalg.zeros(4 * n, 4 * n)
    for r in range(n):
        for c in range(n):
            a, b, cc, d = mat[r][c]
            block = [[Fraction(a), Fraction(-b), Fraction(-cc), Fraction(-d)],
                     [Fraction(b), Fraction(a), Fraction(-d), Fraction(cc)],
                     [Fraction(cc), Fraction(d), Fraction(a), Fraction(-b)],
                     [Fraction(d), Fraction(-cc), Fraction(b), Fraction(a)]]
            for i in range(4):
                for j in range(4):
                    out[4 * r + i][4 * c + j] = block[i][j]
    return out


def _spanning_real(n):
    size = n + 1
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            m = linalg.zeros(size, size)
            m[i][j], m[j][i] = F1, -F1
            mats.append(m)
    for i in range(n):
        m = linalg.zeros(size, size)
        m[i][n], m[n][i] = F1, F1
        mats.append(m)
    return mats, [F1] * n + [-F1]


def _spanning_complex(n):
    size = n + 1

    def cz():
        return [[(F0, F0) for _ in range(size)] for _ in range(size)]

    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            m = cz()
            m[i][j], m[j][i] = (F1, F0), (-F1, F0)
            mats.append(m)
            m = cz()
            m[i][j], m[j][i] = (F0, F1), (F0, F1)
            mats.append(m)
    for i in range(n):
        m = cz()
        m[i][n], m[n][i] = (F1, F0), (F1, F0)
        mats.append(m)
        m = cz()
        m[i][n], m[n][i] = (F0, F1), (F0, -F1)
        mats.append(m)
    for j in range(n):
        m = cz()
        m[j][j], m[n][n] = (F0, F1), (F0, -F1)
        mats.append(m)
    sig = [F1] * (2 * n) + [-F1, -F1]
    return [_realify_complex(m) for m in mats], sig


def _spanning_quaternionic(n):
    size = n + 1

    def qz():
        return [[(0, 0, 0, 0) for _ in range(size)] for _ in range(size)]

    def unit(name):
        return {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0),
                "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}[name]

    def neg(q):
        return tuple(-x for x in q)

    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            m = qz()
            m[i][j], m[j][i] = unit("1"), neg(unit("1"))
            mats.append(m)
            for u in ("i", "j", "k"):
                m = qz()
                m[i][j], m[j][i] = unit(u), unit(u)
                mats.append(m)
    for j in range(n):
        for u in ("i", "j", "k"):
            m = qz()
            m[j][j] = unit(u)
            mats.append(m)
    for i in range(n):
        m = qz()
        m[i][n], m[n][i] = unit("1"), unit("1")
        mats.append(m)
        for u in ("i", "j", "k"):
            m = qz()
            m[i][n], m[n][i] = unit(u), neg(unit(u))
            mats.append(m)
    for u in ("i", "j", "k"):
        m = qz()
        m[n][n] = unit(u)
        mats.append(m)
    sig = [F1] * (4 * n) + [-F1] * 4
    return [_realify_quaternion(m) for m in mats], sig


def _h0_matrix(family):
    """E_{1,n+1} + E_{n+1,1} in the realified ambient space."""
    n = family.n
    if family.kind == REAL:
        m = linalg.zeros(n + 1, n + 1)
        m[0][n], m[n][0] = F1, F1
        return m
    if family.kind == COMPLEX:
        cm = [[(F0, F0) for _ in range(n + 1)] for _ in range(n + 1)]
        cm[0][n], cm[n][0] = (F1, F0), (F1, F0)
        return _realify_complex(cm)
    qm = [[(0, 0, 0, 0) for _ in range(n + 1)] for _ in range(n + 1)]
    qm[0][n], qm[n][0] = (1, 0, 0, 0), (1, 0, 0, 0)
    return _realify_quaternion(qm)


# ---------------------------------------------------------------------------
# model construction


def _clear_denominators(vector):
    from math import lcm
    denoms = [c.denominator for c in vector if c]
    if not denoms:
        return vector
    mult = lcm(*denoms)
    return [c * mult for c in vector]


def _theta(matrix, sig):
    """Cartan involution X -> J X J with J = diag(sig)."""
    n = len(matrix)
    return [[sig[i] * matrix[i][j] * sig[j] for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def build_model(family):
    """Construct the LieAlgebraModel for a Family; cached per family."""
    if family.kind == REAL:
        span, sig = _spanning_real(family.n)
    elif family.kind == COMPLEX:
        span, sig = _spanning_complex(family.n)
    else:
        span, sig = _spanning_quaternionic(family.n)

    dim = len(span)
    columns = [linalg.vec(m) for m in span]
    _, pivots = rref([list(col) for col in zip(*columns)])
    if len(pivots) != dim:
        raise DegenerateRank("spanning set of the matrix model is dependent")
    solver = SpanSolver(columns)

    h0 = _h0_matrix(family)
    # ad(H0) in the spanning basis
    ad = [[F0] * dim for _ in range(dim)]
    for j, m in enumerate(span):
        col = solver.solve(linalg.vec(commutator(h0, m)))
        for i in range(dim):
            ad[i][j] = col[i]

    m_alpha, m_2alpha = family.root_multiplicities()
    expected = {F1: m_alpha, Fraction(2): m_2alpha,
                -F1: m_alpha, Fraction(-2): m_2alpha}
    eigvecs = {}
    for lam in (F1, Fraction(2), -F1, Fraction(-2), F0):
        shifted = [[ad[i][j] - (lam if i == j else F0) for j in range(dim)]
                   for i in range(dim)]
        eigvecs[lam] = nullspace(shifted)
    for lam, mult in expected.items():
        if len(eigvecs[lam]) != mult:
            raise DegenerateRank(
                f"ad(H0) eigenvalue {lam}: multiplicity {len(eigvecs[lam])}, "
                f"expected {mult} for {family}")
    zero_dim = dim - 2 * (m_alpha + m_2alpha)
    if len(eigvecs[F0]) != zero_dim:
        raise DegenerateRank("centralizer dimension mismatch")

    def to_matrix(coords):
        out = linalg.zeros(len(h0), len(h0))
        for c, m in zip(coords, span):
            if c:
                out = linalg.mat_add(out, linalg.mat_scale(m, c))
        return out

    # split ker(ad H0) = a0 + m0 using trace-form orthogonality to H0
    kernel_mats = [to_matrix(_clear_denominators(v)) for v in eigvecs[F0]]
    h0_norm = trace_inner(h0, h0)
    m0_mats = []
    for m in kernel_mats:
        proj = trace_inner(m, h0) / h0_norm
        mm = linalg.mat_sub(m, linalg.mat_scale(h0, proj))
        if any(any(row) for row in mm):
            m0_mats.append(mm)
    m0_vecs = linalg.row_space_basis([linalg.vec(m) for m in m0_mats]) if m0_mats else []
    m0_mats = []
    size = len(h0)
    for v in m0_vecs:
        v = _clear_denominators(v)
        m0_mats.append([v[i * size:(i + 1) * size] for i in range(size)])

    nplus_mats = [to_matrix(_clear_denominators(v)) for v in eigvecs[F1]]
    nplus_mats += [to_matrix(_clear_denominators(v)) for v in eigvecs[Fraction(2)]]
    nminus_mats = [_theta(m, sig) for m in nplus_mats]

    basis = []
    for k, m in enumerate(m0_mats):
        basis.append(BasisElement(f"M0[{k}]", "m0", 0, tuple(map(tuple, m))))
    a0_index = len(basis)
    basis.append(BasisElement("A0", "a0", 0, tuple(map(tuple, h0))))
    nplus_indices = []
    for k, m in enumerate(nplus_mats):
        root = 1 if k < m_alpha else 2
        tag = "a" if root == 1 else "2a"
        nplus_indices.append(len(basis))
        basis.append(BasisElement(f"N+({tag})[{k if root == 1 else k - m_alpha}]",
                                  "n+", root, tuple(map(tuple, m))))
    nminus_indices = []
    for k, m in enumerate(nminus_mats):
        root = -1 if k < m_alpha else -2
        tag = "a" if root == -1 else "2a"
        nminus_indices.append(len(basis))
        basis.append(BasisElement(f"N-({tag})[{k if root == -1 else k - m_alpha}]",
                                  "n-", root, tuple(map(tuple, m))))

    columns = [linalg.vec([list(r) for r in el.matrix]) for el in basis]
    solver = SpanSolver(columns)
    table = []
    n_basis = len(basis)
    for i in range(n_basis):
        row = []
        mi = [list(r) for r in basis[i].matrix]
        for j in range(n_basis):
            if j < i:
                row.append(tuple(-c for c in table[j][i]))
                continue
            if j == i:
                row.append(tuple([F0] * n_basis))
                continue
            mj = [list(r) for r in basis[j].matrix]
            try:
                row.append(tuple(solver.solve(linalg.vec(commutator(mi, mj)))))
            except ValueError as exc:
                raise StructureViolation(
                    f"bracket [{basis[i].label}, {basis[j].label}] "
                    "falls outside the model") from exc
        table.append(row)

    return LieAlgebraModel(
        family=family,
        ambient_size=len(h0),
        basis=tuple(basis),
        bracket_table=tuple(tuple(r) for r in table),
        h0_index=a0_index,
        m0_indices=tuple(range(a0_index)),
        nplus_indices=tuple(nplus_indices),
        nminus_indices=tuple(nminus_indices),
        form_signature=tuple(sig),
    )


# ---------------------------------------------------------------------------
# operations on coefficient vectors


def bracket(model, x, y):
    """[x, y] for coefficient vectors over the model basis."""
    dim = model.dim
    out = [F0] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = model.bracket_table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            tij = row[j]
            f = xi * yj
            for k, c in enumerate(tij):
                if c:
                    out[k] += f * c
    return out


def project_components(model, z):
    ma = [F0] * model.dim
    np_ = [F0] * model.dim
    nm = [F0] * model.dim
    for i, c in enumerate(z):
        if not c:
            continue
        space = model.basis[i].space
        if space in ("m0", "a0"):
            ma[i] = c
        elif space == "n+":
            np_[i] = c
        else:
            nm[i] = c
    return ComponentSplit(tuple(ma), tuple(np_), tuple(nm))


def ad_eigenvalue(model, idx):
    return model.basis[idx].root


def killing_gram(model, indices):
    """Trace-form Gram matrix over a subset of basis elements."""
    mats = [[list(r) for r in model.basis[i].matrix] for i in indices]
    return [[trace_inner(a, b) for b in mats] for a in mats]


def verify_structure(model, check_jacobi=True):
    """Assert every structural invariant; returns a diagnostic report.

    Raises StructureViolation naming the first failed identity.
    """
    report = {"family": str(model.family), "dim": model.dim, "checks": []}

    def ok(name):
        report["checks"].append(name)

    m_alpha, m_2alpha = model.family.root_multiplicities()
    if model.d - 1 != m_alpha + m_2alpha:
        raise StructureViolation("dimension table: d-1 != m_alpha + m_2alpha")
    if (len(model.nplus_indices) != m_alpha + m_2alpha
            or len(model.nminus_indices) != m_alpha + m_2alpha):
        raise StructureViolation("root multiplicity table")
    ok("root multiplicities")

    h0 = model.unit(model.h0_index)
    for idx in range(model.dim):
        lam = model.basis[idx].root
        got = bracket(model, h0, model.unit(idx))
        want = [lam * c for c in model.unit(idx)]
        if got != want:
            raise StructureViolation(
                f"ad(H0) eigenvalue on {model.basis[idx].label}")
    ok("ad(H0) eigenvalues")

    for i in model.m0_indices:
        if any(bracket(model, model.unit(i), h0)):
            raise StructureViolation("m0 does not centralize H0")
    ok("m0 centralizes a0")

    # [m0 + a0, n+-] in n+-, [g_a, g_a] in g_2a
    ma = list(model.m0_indices) + [model.h0_index]
    for i in ma:
        for sgn, idxs in (("n+", model.nplus_indices), ("n-", model.nminus_indices)):
            for j in idxs:
                v = bracket(model, model.unit(i), model.unit(j))
                for k, c in enumerate(v):
                    if c and model.basis[k].space != sgn:
                        raise StructureViolation(f"[m0+a0, {sgn}] not in {sgn}")
    ok("MA-module property")

    alpha_idx = [i for i in model.nplus_indices if model.basis[i].root == 1]
    for i in alpha_idx:
        for j in alpha_idx:
            v = bracket(model, model.unit(i), model.unit(j))
            for k, c in enumerate(v):
                if c and model.basis[k].root != 2:
                    raise StructureViolation("[g_a, g_a] not in g_2a")
    ok("[g_a, g_a] in g_2a")

    if check_jacobi:
        dim = model.dim
        units = [model.unit(i) for i in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                if any(bracket(model, units[i], units[j])
                       != [-c for c in bracket(model, units[j], units[i])]
                       for _ in (0,)):
                    raise StructureViolation("antisymmetry")
                for k in range(j + 1, dim):
                    s = bracket(model, units[i], model.bracket_table[j][k])
                    t = bracket(model, units[j], model.bracket_table[k][i])
                    u = bracket(model, units[k], model.bracket_table[i][j])
                    if any(a + b + c for a, b, c in zip(s, t, u)):
                        raise StructureViolation(
                            f"Jacobi({model.basis[i].label}, "
                            f"{model.basis[j].label}, {model.basis[k].label})")
        ok("Jacobi identity")

    gram_m0 = killing_gram(model, model.m0_indices)
    for v in _definite_check(gram_m0, negative=True):
        raise StructureViolation(f"trace form not negative definite on m0: {v}")
    h0_mat = [list(r) for r in model.basis[model.h0_index].matrix]
    if trace_inner(h0_mat, h0_mat) <= 0:
        raise StructureViolation("trace form not positive on a0")
    ok("trace-form signs")

    return report


def _definite_check(gram, negative=False):
    """Yield messages for failed leading-principal-minor sign conditions."""
    n = len(gram)
    for k in range(1, n + 1):
        minor = linalg.det([row[:k] for row in gram[:k]])
        want_positive = (k % 2 == 0) if negative else True
        if (minor > 0) != want_positive or minor == 0:
            yield f"leading minor {k} has wrong sign"
            return


# ---------------------------------------------------------------------------
# JSON interface


def dump_model(model):
    """JSON-ready dict: labels, exact matrices, bracket table, metadata."""
    def frac(x):
        return f"{x.numerator}/{x.denominator}"

    return {
        "family": {"kind": model.family.kind, "n": model.family.n},
        "ambient_size": model.ambient_size,
        "d": model.d,
        "root_multiplicities": list(model.family.root_multiplicities()),
        "basis": [
            {"label": el.label, "space": el.space, "root": el.root,
             "matrix": [[frac(x) for x in row] for row in el.matrix]}
            for el in model.basis
        ],
        "bracket_table": [
            [[frac(c) for c in cell] for cell in row]
            for row in model.bracket_table
        ],
    }
