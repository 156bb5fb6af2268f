from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetamult import errors
from zetamult.exterior_forms import (ExteriorForm, Omega_R, ScaledScalar,
                                     alpha_R, basis_covector,
                                     contact_two_form, contract,
                                     h0_coadjoint_derivative, invariant_d,
                                     mu_R, n_covectors, wedge)
from zetamult.lie_core import COMPLEX, QUATERNIONIC, REAL, Family, build_model

EVEN_FAMILIES = [Family(REAL, 2), Family(REAL, 4),
                 Family(COMPLEX, 2), Family(QUATERNIONIC, 2)]


# --- ScaledScalar ring laws -------------------------------------------------

scalars = st.builds(
    ScaledScalar.make,
    st.fractions(min_value=-50, max_value=50, max_denominator=10),
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=0, max_value=3),
)


@given(scalars, scalars)
def test_scalar_multiplication_commutes(a, b):
    assert a * b == b * a


@given(scalars, scalars, scalars)
def test_scalar_multiplication_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(scalars)
def test_scalar_i_fourth_power_is_identity(a):
    i = ScaledScalar.make(1, 0, 1)
    assert a * i * i * i * i == a


@given(scalars)
def test_scalar_additive_inverse(a):
    assert (a + (-a)).is_zero()


def test_mixed_scalar_addition_rejected():
    with pytest.raises(errors.MixedScalar):
        ScaledScalar.make(1, 1, 0) + ScaledScalar.make(1, 0, 0)


# --- wedge algebra ----------------------------------------------------------

def random_form(draw, degree, ncov):
    from itertools import combinations
    idxs = list(combinations(range(ncov), degree))
    picks = draw(st.lists(st.sampled_from(idxs), max_size=4, unique=True))
    coeffs = {idx: ScaledScalar.make(draw(st.integers(-5, 5)))
              for idx in picks}
    return ExteriorForm.build(degree, ncov, coeffs)


@st.composite
def form_pairs(draw):
    ncov = 5
    p = draw(st.integers(1, 3))
    q = draw(st.integers(1, min(3, ncov - p)))
    return (random_form(draw, p, ncov), random_form(draw, q, ncov))


@given(form_pairs())
@settings(max_examples=200)
def test_wedge_graded_commutativity(pair):
    f, g = pair
    sign = (-1) ** (f.degree * g.degree)
    assert (wedge(f, g) - wedge(g, f).scale(Fraction(sign))).is_zero()


@given(form_pairs())
def test_wedge_bilinear_in_first_argument(pair):
    f, g = pair
    lhs = wedge(f.scale(Fraction(3)), g)
    assert (lhs - wedge(f, g).scale(Fraction(3))).is_zero()


def test_wedge_degree_overflow():
    ncov = 3
    f = ExteriorForm.build(2, ncov, {(0, 1): ScaledScalar.one()})
    with pytest.raises(errors.DegreeOverflow):
        wedge(f, f)


def test_contract_is_antiderivation():
    ncov = 4
    f = ExteriorForm.build(1, ncov, {(0,): ScaledScalar.one()})
    g = ExteriorForm.build(2, ncov, {(0, 1): ScaledScalar.one(),
                                     (2, 3): ScaledScalar.make(2)})
    lhs = contract(wedge(f, g), 0)
    rhs = wedge(contract(f, 0), g) - wedge(f, contract(g, 0))
    assert (lhs - rhs).is_zero()


# --- model form identities --------------------------------------------------

def test_d_squared_vanishes_on_surface_invariant_forms():
    """d o d = 0 on the invariant covectors of the surface model."""
    model = build_model(Family(REAL, 2))
    for pos in range(n_covectors(model)):
        f = basis_covector(model, pos)
        dd = invariant_d(invariant_d(f, model), model)
        assert dd.is_zero()


@pytest.mark.parametrize("family", EVEN_FAMILIES, ids=str)
@pytest.mark.parametrize("sign", [+1, -1])
def test_secondary_form_identities(family, sign):
    model = build_model(family)
    omega = Omega_R(model, sign)
    assert invariant_d(omega, model).is_zero()
    assert contract(omega, 0).is_zero()
    assert h0_coadjoint_derivative(omega, model).is_zero()


@pytest.mark.parametrize("family", EVEN_FAMILIES, ids=str)
def test_omega_sign_antisymmetry(family):
    model = build_model(family)
    assert (Omega_R(model, +1) + Omega_R(model, -1)).is_zero()


@pytest.mark.parametrize("family", EVEN_FAMILIES, ids=str)
@pytest.mark.parametrize("sign", [+1, -1])
def test_primitive_equation(family, sign):
    model = build_model(family)
    mu, lam = mu_R(model, sign)
    assert lam != 0
    alpha = alpha_R(model, sign)
    target = mu.scale(ScaledScalar.make(Fraction(1, 2), -1, 1))
    assert (invariant_d(alpha, model) - target).is_zero()
    # the eigenvalue form is a rational multiple of the contact form
    kappa = contact_two_form(model)
    assert (mu - kappa.scale(lam)).is_zero()


def test_contact_form_nondegenerate_on_surface():
    model = build_model(Family(REAL, 2))
    kappa = contact_two_form(model)
    assert not kappa.is_zero()
    assert invariant_d(kappa, model).is_zero()
