"""Evaluate the multiplicity integral by invariance.

The integral of the secondary form over the sphere bundle reduces, by
homogeneity, to

    r = m0 / chi(X) = sigma * T * vol(S^{d-1}) / (D * rho)

where T is the top coefficient of Omega_R wedge alpha_R in the model
frame, D the volume distortion of that frame against the Sasaki metric
of the unit sphere bundle, rho the Gauss-Bonnet Euler density of the
symmetric metric (normalized so the smaller-root sectional curvature is
-1), and sigma a single calibration constant fixed once by the surface
case m0 = chi(X).  Everything stays in the exact scalar ring; pi-powers
must cancel to zero in r.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from . import exterior_forms as xf
from . import lie_core
from .errors import (MismatchedSigns, NonIntegerMultiplicity, NonSquareGram,
                     OddDimension, WrongFamily)
from .exterior_forms import ExteriorForm, ScaledScalar, wedge
from .lie_core import Family, REAL, build_model
from .linalg import (commutator, det, fraction_sqrt, mat_scale,
                     row_space_basis, trace_inner)


@dataclass(frozen=True)
class MultiplicityRatio:
    family: Family
    ratio: Fraction                 # m0 = ratio * chi(X)
    top_coefficient: ScaledScalar   # of Omega_R(P+) wedge alpha_R(-)
    euler_density: ScaledScalar
    fiber_volume: ScaledScalar
    frame_distortion: Fraction      # D = sqrt(det Gram_Sasaki)
    calibration: Fraction


def _scalar_inv(s):
    if s.q == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    if s.i_pow == 0:
        return ScaledScalar.make(1 / s.q, -s.pi_pow, 0)
    return ScaledScalar.make(-1 / s.q, -s.pi_pow, 1)


def _theta_mat(model, m):
    sig = model.form_signature
    n = len(m)
    return [[sig[i] * m[i][j] * sig[j] for j in range(n)] for i in range(n)]


def _cartan_split(model, m):
    th = _theta_mat(model, m)
    k_part = [[(a + b) / 2 for a, b in zip(ra, rb)] for ra, rb in zip(m, th)]
    p_part = [[(a - b) / 2 for a, b in zip(ra, rb)] for ra, rb in zip(m, th)]
    return k_part, p_part


@lru_cache(maxsize=None)
def _p0_frame(model):
    """Basis of p0 (as ambient matrices), with H0 first."""
    size = model.ambient_size
    h0 = [list(r) for r in model.basis[model.h0_index].matrix]
    vecs = [[x for row in h0 for x in row]]
    for el in model.basis:
        _, p = _cartan_split(model, [list(r) for r in el.matrix])
        if any(any(row) for row in p):
            vecs.append([x for row in p for x in row])
    basis = row_space_basis(vecs)
    if len(basis) != model.d:
        raise OddDimension(f"p0 has dimension {len(basis)}, expected {model.d}")
    return [[v[i * size:(i + 1) * size] for i in range(size)] for v in basis]


@lru_cache(maxsize=None)
def _metric_scale(model):
    """Rational c with g = c * trace form on p0 giving sectional curvature
    exactly -1 on the (H0, smaller-root) plane."""
    h0 = [list(r) for r in model.basis[model.h0_index].matrix]
    alpha_idx = next(i for i in model.nplus_indices if model.basis[i].root == 1)
    _, u = _cartan_split(model, [list(r) for r in model.basis[alpha_idx].matrix])
    # K_tr = <R(H0,U)U, H0> / (|H0|^2 |U|^2 - <H0,U>^2), R(X,Y)Z = -[[X,Y],Z]
    r = mat_scale(commutator(commutator(h0, u), u), Fraction(-1))
    num = trace_inner(r, h0)
    den = (trace_inner(h0, h0) * trace_inner(u, u)
           - trace_inner(h0, u) ** 2)
    k_tr = num / den
    if k_tr >= 0:
        raise OddDimension("model plane is not negatively curved")
    return -k_tr


def _pfaffian_skew_forms(entries, ncov):
    """Pfaffian of a skew matrix of commuting forms, by recursive
    expansion along the first remaining index."""
    size = len(entries)

    def pf(indices):
        if not indices:
            return ExteriorForm.build(0, ncov, {(): ScaledScalar.one()})
        i0 = indices[0]
        rest = indices[1:]
        acc = None
        for pos, j in enumerate(rest):
            e = entries[i0][j]
            if e.is_zero():
                continue
            sub = pf(rest[:pos] + rest[pos + 1:])
            term = wedge(e, sub)
            if pos % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            return ExteriorForm.zero(len(indices), ncov)
        return acc

    return pf(tuple(range(size)))


def pfaffian_euler_density(model):
    """Gauss-Bonnet density of (X, g): the Pfaffian of the curvature form
    over (2 pi)^{d/2}, as a number (the density is constant on X)."""
    d = model.d
    if d % 2:
        raise OddDimension("Euler density requires even dim(X)")
    frame = _p0_frame(model)
    c = _metric_scale(model)
    gram = [[c * trace_inner(a, b) for b in frame] for a in frame]
    det_g = det(gram)
    # lowered curvature 2-forms over the p0 frame duals
    entries = []
    for a in range(d):
        row = []
        for b in range(d):
            cmap = {}
            for cc, dd in combinations(range(d), 2):
                rxy = mat_scale(
                    commutator(commutator(frame[cc], frame[dd]), frame[b]),
                    Fraction(-1))
                val = c * trace_inner(rxy, frame[a])
                if val:
                    cmap[(cc, dd)] = ScaledScalar.make(val)
            row.append(ExteriorForm.build(2, d, cmap))
        entries.append(tuple(row))
    pf = _pfaffian_skew_forms(tuple(entries), d)
    top = tuple(range(d))
    coeff = dict(pf.coeffs).get(top, ScaledScalar.zero()).q
    return ScaledScalar.make(coeff / (det_g * 2 ** (d // 2)),
                             Fraction(-d, 2), 0)


def fiber_volume(d):
    """vol(S^{d-1}) = 2 pi^{d/2} / Gamma(d/2) for even d."""
    if d % 2:
        raise OddDimension("odd-dimensional fiber volume not needed here")
    return ScaledScalar.make(Fraction(2, factorial(d // 2 - 1)),
                             Fraction(d, 2), 0)


@lru_cache(maxsize=None)
def _frame_distortion(model):
    """D = sqrt(det Gram) of the model frame (H0, n+ basis, n- basis)
    mapped into the Sasaki tangent space p0 + X0-perp at the base point."""
    c = _metric_scale(model)
    h0 = [list(r) for r in model.basis[model.h0_index].matrix]
    h0_sq = trace_inner(h0, h0)
    frame_indices = ((model.h0_index,) + model.nplus_indices
                     + model.nminus_indices)
    horiz = []
    vert = []
    for i in frame_indices:
        k, p = _cartan_split(model, [list(r) for r in model.basis[i].matrix])
        horiz.append(p)
        vert.append(commutator(k, h0))  # divided by |H0|_g below
    n = len(frame_indices)
    gram = [[c * trace_inner(horiz[i], horiz[j])
             + trace_inner(vert[i], vert[j]) / h0_sq
             for j in range(n)] for i in range(n)]
    dg = det(gram)
    root = fraction_sqrt(dg)
    if root is None:
        raise NonSquareGram(f"frame Gram determinant {dg} is not a square")
    return root


@lru_cache(maxsize=None)
def _contact_orientation_sign(model):
    """Sign of the canonical contact volume H0* wedge kappa^{d-1} relative
    to the block-ordered covector frame (H0*, n+ duals, n- duals).

    The frame blocks are a convention; the contact structure orients the
    flow space canonically, and the multiplicity integrand is measured
    against that orientation."""
    kappa = xf.contact_two_form(model)
    vol = xf.basis_covector(model, 0)
    for _ in range(model.d - 1):
        vol = wedge(vol, kappa)
    ncov = xf.n_covectors(model)
    coeff = dict(vol.coeffs).get(tuple(range(ncov)), ScaledScalar.zero())
    if coeff.is_zero():
        raise MismatchedSigns("degenerate contact volume")
    return 1 if coeff.q > 0 else -1


def _top_coefficient(model, sign):
    """Top coefficient of Omega_R(P^sign) wedge alpha_R(-sign) relative to
    the model covector frame (H0*, n+ duals, n- duals)."""
    om = xf.Omega_R(model, sign)
    al = xf.alpha_R(model, -sign)
    top = wedge(om, al)
    ncov = xf.n_covectors(model)
    return dict(top.coeffs).get(tuple(range(ncov)), ScaledScalar.zero())


def _raw_ratio(model, sign):
    """T * vol(S^{d-1}) / (D * rho), before calibration."""
    t = _top_coefficient(model, sign)
    rho = pfaffian_euler_density(model)
    d_fr = _frame_distortion(model)
    r = t * fiber_volume(model.d) * _scalar_inv(rho)
    r = ScaledScalar.make(r.q * _contact_orientation_sign(model) / d_fr,
                          r.pi_pow, r.i_pow)
    if r.pi_pow != 0 or r.i_pow != 0:
        raise MismatchedSigns(
            f"pi/i powers failed to cancel in the ratio: {r}")
    return r.q


@lru_cache(maxsize=None)
def calibration_constant():
    """sigma, fixed once by requiring ratio = 1 on the hyperbolic surface."""
    model = build_model(Family(REAL, 2))
    raw = _raw_ratio(model, +1)
    if raw == 0:
        raise MismatchedSigns("degenerate surface anchor")
    return 1 / raw


def multiplicity_ratio(family):
    """Exact rational r with m0 = r * chi(X), from the forms route."""
    if family.d % 2:
        raise OddDimension("forms-route ratio requires even dim(X)")
    model = build_model(family)
    sigma = calibration_constant()
    r_plus = sigma * _raw_ratio(model, +1)
    r_minus = sigma * _raw_ratio(model, -1)
    if r_plus != r_minus:
        raise MismatchedSigns(
            f"the two integrand sign choices disagree: {r_plus} vs {r_minus}")
    return MultiplicityRatio(
        family=family,
        ratio=r_plus,
        top_coefficient=_top_coefficient(model, +1),
        euler_density=pfaffian_euler_density(model),
        fiber_volume=fiber_volume(model.d),
        frame_distortion=_frame_distortion(model),
        calibration=sigma,
    )


def godbillon_vey_density(model):
    """4 pi^2 times the top coefficient of the surface secondary form;
    integrates to 4 pi^2 chi(X) (the Godbillon-Vey number of the
    weak-stable foliation)."""
    if not (model.family.kind == REAL and model.family.n == 2):
        raise WrongFamily("Godbillon-Vey density is the surface case only")
    t = _top_coefficient(model, +1)
    return ScaledScalar.make(4, 2, 0) * t


def godbillon_vey_integral(genus):
    """4 pi^2 * m0 for a genus-g surface (m0 = 2 - 2g)."""
    chi = 2 - 2 * genus
    m0 = multiplicity_from_chi(Family(REAL, 2), chi)
    return ScaledScalar.make(4 * m0, 2, 0)


def multiplicity_from_chi(family, chi):
    """m0 = r * chi, required to be exactly integral."""
    r = multiplicity_ratio(family).ratio * chi
    if r.denominator != 1:
        raise NonIntegerMultiplicity(f"r*chi = {r} is not an integer")
    return int(r)
