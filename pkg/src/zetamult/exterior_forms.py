"""Exterior algebra over (a0 + n0+ + n0-)* with exact scalar coefficients.

Scalars are rational multiples of pi^k * i^m, so the (i/2pi) factors of
the curvature-determinant and primitive constructions cancel provably.
Covector 0 is dual to H0; covectors 1..d-1 are duals of the n0+ basis,
d..2d-2 duals of the n0- basis (model basis order).

Sign convention of the invariant differential: d(H0*) = -kappa, where
kappa is the contact 2-form kappa(X, Y) = H0-coefficient of [X, Y].
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import lie_core
from .errors import (DegreeOverflow, EigenvalueAmbiguous, MixedScalar,
                     NotProportional, OddDimension)
from .linalg import F0, F1, nullspace

# ---------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class ScaledScalar:
    """q * pi^pi_pow * i^i_pow with q rational, i_pow canonical in {0, 1}.

    pi_pow is a Fraction: multiplicity_geometry needs half-integer powers
    for sphere volumes; everywhere else it stays an integer.
    """
    q: Fraction
    pi_pow: Fraction = Fraction(0)
    i_pow: int = 0

    @staticmethod
    def make(q, pi_pow=0, i_pow=0):
        q = Fraction(q)
        if q == 0:
            return ScaledScalar(Fraction(0), Fraction(0), 0)
        i_pow %= 4
        if i_pow >= 2:
            q, i_pow = -q, i_pow - 2
        return ScaledScalar(q, Fraction(pi_pow), i_pow)

    @staticmethod
    def zero():
        return ScaledScalar(Fraction(0), Fraction(0), 0)

    @staticmethod
    def one():
        return ScaledScalar(Fraction(1), Fraction(0), 0)

    def is_zero(self):
        return self.q == 0

    def is_real(self):
        return self.q == 0 or self.i_pow == 0

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ScaledScalar.make(self.q * other, self.pi_pow, self.i_pow)
        return ScaledScalar.make(self.q * other.q,
                                 self.pi_pow + other.pi_pow,
                                 self.i_pow + other.i_pow)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.q == 0:
            return other
        if other.q == 0:
            return self
        if self.pi_pow != other.pi_pow or self.i_pow != other.i_pow:
            raise MixedScalar(f"cannot add {self} + {other}")
        return ScaledScalar.make(self.q + other.q, self.pi_pow, self.i_pow)

    def __neg__(self):
        return ScaledScalar(-self.q, self.pi_pow, self.i_pow)

    def __float__(self):
        import math
        v = float(self.q) * math.pi ** float(self.pi_pow)
        if self.i_pow:
            raise ValueError("imaginary scalar has no float value")
        return v

    def as_json(self):
        return {"num": str(self.q.numerator), "den": str(self.q.denominator),
                "pi_pow": str(self.pi_pow), "i_pow": self.i_pow}

    def __repr__(self):
        s = str(self.q)
        if self.pi_pow:
            s += f"*pi^{self.pi_pow}"
        if self.i_pow:
            s += "*i"
        return s


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class ExteriorForm:
    """Alternating form of fixed degree over n_covectors covectors.

    coeffs maps strictly increasing index tuples to nonzero ScaledScalar.
    """
    degree: int
    n_covectors: int
    coeffs: tuple  # sorted tuple of (index_tuple, ScaledScalar)

    @staticmethod
    def build(degree, n_covectors, coeff_map):
        cleaned = tuple(sorted((idx, c) for idx, c in coeff_map.items()
                               if not c.is_zero()))
        for idx, _ in cleaned:
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"bad index tuple {idx} for degree {degree}")
            if idx and (idx[0] < 0 or idx[-1] >= n_covectors):
                raise ValueError(f"index out of range: {idx}")
        return ExteriorForm(degree, n_covectors, cleaned)

    @staticmethod
    def zero(degree, n_covectors):
        return ExteriorForm(degree, n_covectors, ())

    def coeff_dict(self):
        return dict(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if self.degree != other.degree or self.n_covectors != other.n_covectors:
            raise ValueError("degree/space mismatch in form addition")
        out = self.coeff_dict()
        for idx, c in other.coeffs:
            out[idx] = out.get(idx, ScaledScalar.zero()) + c
        return ExteriorForm.build(self.degree, self.n_covectors, out)

    def __neg__(self):
        return ExteriorForm(self.degree, self.n_covectors,
                            tuple((idx, -c) for idx, c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = ScaledScalar.make(scalar)
        if scalar.is_zero():
            return ExteriorForm.zero(self.degree, self.n_covectors)
        return ExteriorForm(self.degree, self.n_covectors,
                            tuple((idx, c * scalar) for idx, c in self.coeffs))

    def is_real(self):
        return all(c.is_real() for _, c in self.coeffs)


def _merge_sign(a, b):
    """Sign of sorting the concatenation of two increasing tuples, or
    (0, None) when they share an index."""
    sign = 1
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a)-i entries of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def wedge(f, g):
    if f.n_covectors != g.n_covectors:
        raise ValueError("forms over different spaces")
    deg = f.degree + g.degree
    if deg > f.n_covectors:
        raise DegreeOverflow(
            f"wedge degree {deg} exceeds {f.n_covectors} covectors")
    out = {}
    for ia, ca in f.coeffs:
        for ib, cb in g.coeffs:
            sign, idx = _merge_sign(ia, ib)
            if sign == 0:
                continue
            c = ca * cb
            if sign < 0:
                c = -c
            out[idx] = out.get(idx, ScaledScalar.zero()) + c
    return ExteriorForm.build(deg, f.n_covectors, out)


def contract(f, direction):
    """Interior product with the basis vector dual to covector `direction`."""
    out = {}
    for idx, c in f.coeffs:
        if direction not in idx:
            continue
        pos = idx.index(direction)
        rest = idx[:pos] + idx[pos + 1:]
        cc = c if pos % 2 == 0 else -c
        out[rest] = out.get(rest, ScaledScalar.zero()) + cc
    return ExteriorForm.build(f.degree - 1, f.n_covectors, out)


# ---------------------------------------------------------------------------
# model-covector dictionary


@lru_cache(maxsize=None)
def covector_basis_indices(model):
    """Model basis indices in covector order: H0, n+ basis, n- basis."""
    return (model.h0_index,) + model.nplus_indices + model.nminus_indices


def n_covectors(model):
    return 2 * model.d - 1


def covector_weights(model):
    """ad(H0) eigenvalue of the basis vector dual to each covector."""
    return tuple(model.basis[i].root for i in covector_basis_indices(model))


def basis_covector(model, position):
    """The covector (degree-1 form) at a covector position."""
    return ExteriorForm.build(1, n_covectors(model),
                              {(position,): ScaledScalar.one()})


# ---------------------------------------------------------------------------
# secondary form constructions


@dataclass(frozen=True)
class FormMatrix:
    """(d-1) x (d-1) matrix of 2-forms indexed by the chosen n0+- basis."""
    sign: int
    entries: tuple  # tuple of tuples of ExteriorForm

    @property
    def size(self):
        return len(self.entries)


def _bracket_coeff_cache(model):
    return {(i, j): model.bracket_table[i][j]
            for i in range(model.dim) for j in range(model.dim)}


def omega_R(model, sign):
    """End-valued curvature-like 2-form: entry (j,k) evaluated on the pair
    (X, Y) of n+ or n- basis vectors is <Z^k, -[[X,Y]_0, Z_j]>."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    z_indices = model.nplus_indices if sign > 0 else model.nminus_indices
    cov_basis = covector_basis_indices(model)
    ncov = n_covectors(model)
    nsz = len(z_indices)
    pair_values = {}
    # covector positions 1..2d-2 carry the n+ and n- directions
    n_positions = range(1, ncov)
    for p, q in combinations(n_positions, 2):
        xp, xq = cov_basis[p], cov_basis[q]
        v = lie_core.bracket(model, model.unit(xp), model.unit(xq))
        v0 = list(lie_core.project_components(model, v).ma_part)
        for j, zj in enumerate(z_indices):
            w = lie_core.bracket(model, v0, model.unit(zj))
            w = [-c for c in w]
            for k, zk in enumerate(z_indices):
                if w[zk]:
                    pair_values.setdefault((j, k), {})[(p, q)] = w[zk]
    entries = []
    for j in range(nsz):
        row = []
        for k in range(nsz):
            cmap = {idx: ScaledScalar.make(c)
                    for idx, c in pair_values.get((j, k), {}).items()}
            row.append(ExteriorForm.build(2, ncov, cmap))
        entries.append(tuple(row))
    return FormMatrix(sign, tuple(entries))


def _det_of_two_forms(entries, ncov):
    """Leibniz determinant of a matrix of 2-forms (a commutative ring),
    via first-row Laplace expansion memoized on column subsets."""
    size = len(entries)

    def expand(row, cols):
        if not cols:
            return ExteriorForm.build(0, ncov, {(): ScaledScalar.one()})
        acc = ExteriorForm.zero(2 * len(cols), ncov)
        for pos, c in enumerate(cols):
            entry = entries[row][c]
            if entry.is_zero():
                continue
            sub = _memo(row + 1, cols[:pos] + cols[pos + 1:])
            term = wedge(entry, sub)
            if pos % 2:
                term = -term
            acc = acc + term
        return acc

    memo = {}

    def _memo(row, cols):
        key = cols
        if key not in memo:
            memo[key] = expand(row, cols)
        return memo[key]

    return expand(0, tuple(range(size)))


def Omega_R(model, sign):
    """det((i/2pi) omega_R): the degree-(2d-2) secondary form."""
    fm = omega_R(model, sign)
    ncov = n_covectors(model)
    raw = _det_of_two_forms(fm.entries, ncov)
    d1 = fm.size
    factor = ScaledScalar.make(Fraction(1, 2 ** d1), -d1, d1)
    return raw.scale(factor)


def contact_two_form(model):
    """kappa(X, Y) = H0-coefficient of [X, Y] over n+ + n- pairs."""
    cov_basis = covector_basis_indices(model)
    ncov = n_covectors(model)
    out = {}
    for p, q in combinations(range(1, ncov), 2):
        v = lie_core.bracket(model, model.unit(cov_basis[p]),
                             model.unit(cov_basis[q]))
        c = v[model.h0_index]
        if c:
            out[(p, q)] = ScaledScalar.make(c)
    return ExteriorForm.build(2, ncov, out)


def invariant_d(form, model):
    """Chevalley-Eilenberg differential for invariant forms: the bracket is
    projected to a0 + n0+ + n0- (forms annihilate m0)."""
    ncov = n_covectors(model)
    if form.degree >= ncov:
        if form.is_zero():
            return ExteriorForm.zero(min(form.degree + 1, ncov), ncov)
        raise DegreeOverflow("differential of a top-degree form")
    cov_basis = covector_basis_indices(model)
    # projected bracket of covector-position pairs, expanded over positions
    dim = model.dim
    pos_of_basis = {b: p for p, b in enumerate(cov_basis)}
    coeff = form.coeff_dict()
    out = {}
    for subset in combinations(range(ncov), form.degree + 1):
        total = ScaledScalar.zero()
        for ii in range(len(subset)):
            for jj in range(ii + 1, len(subset)):
                bi, bj = cov_basis[subset[ii]], cov_basis[subset[jj]]
                br = lie_core.bracket(model, model.unit(bi), model.unit(bj))
                rest = subset[:ii] + subset[ii + 1:jj] + subset[jj + 1:]
                pair_sign = -1 if (ii + jj) % 2 else 1
                for b, c in enumerate(br):
                    if not c or model.basis[b].space == "m0":
                        continue
                    pl = pos_of_basis[b]
                    if pl in rest:
                        continue
                    # value of form on (e_l, rest): sort e_l into place
                    insert_at = sum(1 for r in rest if r < pl)
                    idx = tuple(sorted(rest + (pl,)))
                    val = coeff.get(idx)
                    if val is None:
                        continue
                    s = pair_sign * (1 if insert_at % 2 == 0 else -1)
                    term = val * c
                    if s < 0:
                        term = -term
                    total = total + term
        if not total.is_zero():
            out[subset] = total
    _ = dim
    return ExteriorForm.build(form.degree + 1, ncov, out)


def h0_coadjoint_derivative(form, model):
    """Lie derivative of the form along the flow generator H0 (coadjoint
    action extended as a derivation): zero iff the form is flow-invariant."""
    weights = covector_weights(model)
    out = {}
    for idx, c in form.coeffs:
        w = sum(weights[p] for p in idx)
        if w:
            out[idx] = c * Fraction(-w)
    return ExteriorForm.build(form.degree, form.n_covectors, out)


# ---------------------------------------------------------------------------
# eigenvalue 2-form and its primitive


def proportionality_constant(f, g):
    """Exact rational lam with f = lam * g, or None (g must be nonzero,
    both forms with plain rational coefficients)."""
    if g.is_zero():
        return None
    gi = dict(g.coeffs)
    lam = None
    for idx, c in f.coeffs:
        if idx not in gi:
            return None
    for idx, cg in g.coeffs:
        cf = dict(f.coeffs).get(idx)
        if cf is None:
            r = Fraction(0)
        else:
            if cf.pi_pow != cg.pi_pow or cf.i_pow != cg.i_pow:
                return None
            r = cf.q / cg.q
        if lam is None:
            lam = r
        elif lam != r:
            return None
    return lam if lam is not None else Fraction(0)


def _root_blocks(model, sign):
    """Index blocks of the n+- basis by |ad(H0)| eigenvalue (1 then 2)."""
    z_indices = model.nplus_indices if sign > 0 else model.nminus_indices
    blocks = []
    for r in (1, 2):
        blk = [j for j, zi in enumerate(z_indices)
               if abs(model.basis[zi].root) == r]
        if blk:
            blocks.append(tuple(blk))
    return blocks


def _validate_eigenvalue(fm, mu, ncov):
    """Eigenvalue test over the even-degree form ring: mu is an eigenvalue
    of the matrix iff det(M - mu I) vanishes identically.

    (A constant-coefficient eigenvector need not exist: already for
    real-hyperbolic 4-space the matrix is kappa*I + skew, and the skew
    part has no constant nullspace; its determinant, of odd size, still
    vanishes over the commutative ring.)"""
    size = fm.size
    shifted = []
    for j in range(size):
        row = []
        for k in range(size):
            e = fm.entries[j][k]
            if j == k:
                e = e - mu
            row.append(e)
        shifted.append(tuple(row))
    if 2 * size > ncov:
        # det degree would overflow the space: pad is impossible, but the
        # determinant of degree > ncov is identically zero anyway
        return True
    return _det_of_two_forms(tuple(shifted), ncov).is_zero()


def mu_R(model, sign):
    """The unique nonzero real 2-form eigenvalue of omega_R(model, sign).

    Candidates are block-averaged diagonals of the symmetrized matrix,
    kept only when (M - mu I) has an exact constant-vector nullspace.
    Returns (mu, lam) with mu = lam * kappa, lam a nonzero rational.
    """
    if model.d % 2:
        raise OddDimension("the eigenvalue 2-form requires even dim(X)")
    fm = omega_R(model, sign)
    ncov = n_covectors(model)
    size = fm.size
    sym = [[fm.entries[j][k] + fm.entries[k][j] for k in range(size)]
           for j in range(size)]
    candidates = []
    for blk in _root_blocks(model, sign):
        acc = ExteriorForm.zero(2, ncov)
        for j in blk:
            acc = acc + sym[j][j].scale(Fraction(1, 2))
        cand = acc.scale(Fraction(1, len(blk)))
        if cand.is_zero() or not cand.is_real():
            continue
        if any(cand.coeffs == c.coeffs for c in candidates):
            continue
        if _validate_eigenvalue(fm, cand, ncov):
            candidates.append(cand)
    if len(candidates) != 1:
        raise EigenvalueAmbiguous(
            f"{len(candidates)} real eigenvalue candidates survived for "
            f"{model.family}, sign {sign:+d}")
    mu = candidates[0]
    kappa = contact_two_form(model)
    lam = proportionality_constant(mu, kappa)
    if lam is None or lam == 0:
        raise NotProportional("mu_R is not a nonzero multiple of kappa")
    return mu, lam


def alpha_R(model, sign):
    """The invariant primitive: the 1-form a with d(a) = (i/2pi) mu_R."""
    mu, lam = mu_R(model, sign)
    h0_star = basis_covector(model, 0)
    d_h0 = invariant_d(h0_star, model)
    kappa = contact_two_form(model)
    p = proportionality_constant(-d_h0, kappa)
    if p is None or p == 0:
        raise NotProportional("d(H0*) is not a nonzero multiple of kappa")
    c = ScaledScalar.make(Fraction(-lam, 2) / p, -1, 1)
    alpha = h0_star.scale(c)
    check = invariant_d(alpha, model) - mu.scale(ScaledScalar.make(Fraction(1, 2), -1, 1))
    if not check.is_zero():
        raise NotProportional("primitive failed its defining equation")
    return alpha


def dump_form(form):
    """JSON-ready dict for an ExteriorForm."""
    return {
        "degree": form.degree,
        "n_covectors": form.n_covectors,
        "terms": [{"indices": list(idx), "coeff": c.as_json()}
                  for idx, c in form.coeffs],
    }
