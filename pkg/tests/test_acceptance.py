"""Acceptance gate: one test per release criterion, pinned tolerances.

The deep Bolza spectrum (word length 10, geodesic horizon 11.5) is built
once per session and shared by the numeric criteria.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from zetamult import errors
from zetamult.euler_topology import (BettiVector, euler_table,
                                     multiplicity_from_betti)
from zetamult.exterior_forms import (Omega_R, ScaledScalar, alpha_R,
                                     contract, h0_coadjoint_derivative,
                                     invariant_d, mu_R, wedge)
from zetamult.geodesic_spectrum import dedup_crosscheck, entropy_fit
from zetamult.lie_core import COMPLEX, QUATERNIONIC, REAL, Family, build_model
from zetamult.multiplicity_geometry import (godbillon_vey_integral,
                                            multiplicity_from_chi,
                                            multiplicity_ratio)
from zetamult.zeta_engine import (check_quotient_identity, ruelle_fe_rhs,
                                  selberg_fe_factor)

from conftest import SYSTOLE

CROSS_FAMILY = [Family(REAL, 4), Family(REAL, 6), Family(COMPLEX, 2),
                Family(COMPLEX, 3), Family(QUATERNIONIC, 2)]


def test_criterion_1_surface_anchor():
    """Forms route returns exactly 2 - 2g on the surface, in < 1 s."""
    start = time.perf_counter()
    for genus in (2, 3, 4):
        m0 = multiplicity_from_chi(Family(REAL, 2), 2 - 2 * genus)
        assert m0 == 2 - 2 * genus  # exact integer, zero tolerance
    assert time.perf_counter() - start < 1.0


def test_criterion_2_cross_family_ratio():
    """multiplicity_ratio == d/2 exactly, no per-family tuning, < 30 s."""
    start = time.perf_counter()
    for family in CROSS_FAMILY:
        ratio = multiplicity_ratio(family).ratio
        assert ratio == Fraction(family.d, 2), family
    assert time.perf_counter() - start < 30.0


def test_criterion_3_integrand_sign_symmetry():
    """Omega(P+)^alpha- and Omega(P-)^alpha+ give identical top forms."""
    for family in CROSS_FAMILY:
        model = build_model(family)
        top_plus = wedge(Omega_R(model, +1), alpha_R(model, -1))
        top_minus = wedge(Omega_R(model, -1), alpha_R(model, +1))
        assert (top_plus - top_minus).is_zero(), family
        assert not top_plus.is_zero(), family


def test_criterion_4_euler_consistency():
    """chi_geo / chi_dual == d/2 for all four families, < 1 s."""
    start = time.perf_counter()
    rows = euler_table()
    assert {r["family"] for r in rows} >= {"octonionic-hyperbolic"}
    for row in rows:
        assert row["consistent"], row
        assert row["ratio"] == row["d"] // 2, row
    octo = [r for r in rows if r["family"] == "octonionic-hyperbolic"][0]
    assert (octo["chi_dual"], octo["chi_geodesic_space"],
            octo["d"]) == (3, 24, 16)
    assert time.perf_counter() - start < 1.0


def test_criterion_5_closed_basic_form_identities():
    """dOmega = 0, i_H0 Omega = 0, flow invariance, sign antisymmetry,
    and d(alpha) = (i/2pi) mu, all exactly, every supported model."""
    i_over_2pi = ScaledScalar.make(Fraction(1, 2), -1, 1)
    for family in [Family(REAL, 2)] + CROSS_FAMILY:
        model = build_model(family)
        for sign in (+1, -1):
            omega = Omega_R(model, sign)
            assert invariant_d(omega, model).is_zero(), (family, sign)
            assert contract(omega, 0).is_zero(), (family, sign)
            assert h0_coadjoint_derivative(omega, model).is_zero(), \
                (family, sign)
            mu, _ = mu_R(model, sign)
            alpha = alpha_R(model, sign)
            assert (invariant_d(alpha, model)
                    - mu.scale(i_over_2pi)).is_zero(), (family, sign)
        assert (Omega_R(model, +1) + Omega_R(model, -1)).is_zero(), family


def test_criterion_6_godbillon_vey():
    """The surface secondary form integrates to 4 pi^2 (2 - 2g) exactly."""
    for genus in (2, 3, 4):
        expected = ScaledScalar.make(4 * (2 - 2 * genus), 2, 0)
        assert godbillon_vey_integral(genus) == expected


def test_criterion_7_zeta_numerics(deep_spectrum):
    """Quotient identity < 1e-8 at s = 2.5; functional-equation factor
    products within 1e-10 at 20 random s; rhs symmetry to machine
    precision. Runtime < 60 s including enumeration."""
    start = time.perf_counter()
    assert deep_spectrum.max_word_length >= 10
    residual = check_quotient_identity(deep_spectrum, 2.5 + 0j)
    assert residual < 1e-8
    rng = random.Random(20260826)
    for _ in range(20):
        s = complex(rng.uniform(-2.0, 2.0), rng.uniform(0.2, 2.0))
        prod = selberg_fe_factor(s, 2) * selberg_fe_factor(1.0 - s, 2)
        assert abs(prod - 1.0) < 1e-10, s
    for _ in range(20):
        s = complex(rng.uniform(0.05, 0.45), rng.uniform(-1.0, 1.0))
        assert abs(ruelle_fe_rhs(s, 2) - ruelle_fe_rhs(-s, 2)) == 0.0, s
    elapsed = time.perf_counter() - start + deep_spectrum.build_seconds
    assert elapsed < 60.0


def test_criterion_8_spectrum_integrity(bolza, deep_spectrum):
    """Systole within 1e-9; even shells; exact dedup agreement to word
    length 8; entropy fit in [0.8, 1.2]."""
    assert abs(deep_spectrum.records[0].length - SYSTOLE) < 1e-9
    for _, count in deep_spectrum.shells():
        assert count % 2 == 0
    pipeline, exhaustive = dedup_crosscheck(bolza, max_word_length=8,
                                            max_geodesic_length=7.0)
    assert pipeline == exhaustive
    h_hat = entropy_fit(deep_spectrum).h_hat
    assert 0.8 <= h_hat <= 1.2


def test_criterion_9_betti_evaluator():
    """Betti route: pinned values, evenness, duality rejection, 1000-case
    randomized Poincare-dual suite, < 1 s."""
    start = time.perf_counter()
    assert multiplicity_from_betti([1, 0, 0, 1]) == -4
    assert multiplicity_from_betti([1, 2, 2, 1]) == 0
    with pytest.raises(errors.DualityViolation):
        BettiVector.parse([1, 0, 1, 1])
    rng = random.Random(17)
    for _ in range(1000):
        n = rng.randint(1, 6)
        half = [1] + [rng.randint(0, 20) for _ in range(n)]
        betti = half + half[::-1]
        m0 = multiplicity_from_betti(betti)
        assert m0 % 2 == 0, betti
    assert time.perf_counter() - start < 1.0
