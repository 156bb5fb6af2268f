import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetamult import errors
from zetamult.geodesic_spectrum import ConjugacyClassRecord, LengthSpectrum
from zetamult.zeta_engine import (TruncationParams, check_quotient_identity,
                                  ruelle_fe_rhs, ruelle_zeta,
                                  selberg_fe_factor, selberg_zeta)


def toy_spectrum(lengths):
    records = tuple(
        ConjugacyClassRecord(canonical_word=f"w{i}",
                             trace=2.0 * math.cosh(ell / 2.0), length=ell,
                             primitive=True, power_of=None,
                             orientation_partner=f"w{i}")
        for i, ell in enumerate(lengths))
    horizon = max(lengths) + 1e-6 if lengths else 1.0
    return LengthSpectrum(records=records, max_word_length=1,
                          max_geodesic_length=horizon, dedup_tolerance=1e-9,
                          det_drift=0.0, collisions=())


def test_empty_product_is_one():
    spec = toy_spectrum([])
    assert ruelle_zeta(spec, 2.0 + 0j).value == 1.0 + 0j


def test_single_class_values():
    spec = toy_spectrum([3.0])
    zr = ruelle_zeta(spec, 2.0 + 0j)
    assert abs(zr.value - 1.0 / (1.0 - math.exp(-6.0))) < 1e-14
    zs = selberg_zeta(spec, 2.0 + 0j, TruncationParams(selberg_N_max=0))
    assert abs(zs.value - (1.0 - math.exp(-6.0))) < 1e-14


def test_quotient_identity_on_toy(shallow_spectrum):
    residual = check_quotient_identity(shallow_spectrum, 2.5 + 0j)
    assert residual < 1e-12


def test_truncation_bound_reported(shallow_spectrum):
    ev = ruelle_zeta(shallow_spectrum, 2.5 + 0j)
    assert 0.0 <= ev.truncation_bound < 1e-6


def test_refuses_below_entropy(shallow_spectrum):
    with pytest.raises(errors.OutsideConvergence):
        ruelle_zeta(shallow_spectrum, 0.25 + 0j)


def test_fe_rhs_values():
    assert ruelle_fe_rhs(0.5 + 0j, 2) == pytest.approx(0.0625)
    # the right-hand side is even in s
    for s in (0.3 + 0.2j, 1.7 - 0.4j):
        assert abs(ruelle_fe_rhs(s, 2) - ruelle_fe_rhs(-s, 2)) == 0.0


def test_fe_rhs_pole_detection():
    with pytest.raises(errors.PoleAtInteger):
        ruelle_fe_rhs(0.0 + 0j, 2)


def test_selberg_fe_factor_near_pole_rejected():
    with pytest.raises(errors.PathNearPole):
        selberg_fe_factor(1.5 + 0j, 2)


@given(st.floats(min_value=-2.0, max_value=2.0),
       st.floats(min_value=0.2, max_value=2.0))
@settings(max_examples=20, deadline=None)
def test_selberg_fe_factor_product(re, im):
    s = complex(re, im)
    prod = selberg_fe_factor(s, 2) * selberg_fe_factor(1.0 - s, 2)
    assert abs(prod - 1.0) < 1e-10


def test_product_order_invariance():
    lengths = [3.0, 3.5, 4.0, 5.5]
    a = ruelle_zeta(toy_spectrum(lengths), 2.0 + 0j).value
    b = ruelle_zeta(toy_spectrum(lengths[::-1]), 2.0 + 0j).value
    assert a == b
