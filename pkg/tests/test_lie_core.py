from fractions import Fraction

import pytest

from zetamult import errors
from zetamult.lie_core import (COMPLEX, OCTONIONIC, QUATERNIONIC, REAL,
                               Family, bracket, build_model,
                               verify_structure)

EVEN_FAMILIES = [Family(REAL, 2), Family(REAL, 4), Family(REAL, 6),
                 Family(COMPLEX, 2), Family(COMPLEX, 3),
                 Family(QUATERNIONIC, 2)]


def test_octonionic_has_no_matrix_model():
    with pytest.raises(errors.UnsupportedFamily):
        Family(OCTONIONIC, 2)


@pytest.mark.parametrize("family", EVEN_FAMILIES, ids=str)
def test_structure_verifies(family):
    model = build_model(family)
    verify_structure(model)


@pytest.mark.parametrize("family", EVEN_FAMILIES, ids=str)
def test_root_space_dimensions(family):
    model = build_model(family)
    m_alpha, m_2alpha = family.root_multiplicities()
    assert len(model.nplus_indices) == m_alpha + m_2alpha == family.d - 1
    assert len(model.nminus_indices) == family.d - 1
    roots = [model.basis[i].root for i in model.nplus_indices]
    assert roots.count(1) == m_alpha and roots.count(2) == m_2alpha


@pytest.mark.parametrize("family", EVEN_FAMILIES, ids=str)
def test_h0_grades_the_algebra(family):
    """[H0, Z] = root(Z) * Z for every root-space basis vector."""
    model = build_model(family)
    h0 = model.unit(model.h0_index)
    for i in model.nplus_indices + model.nminus_indices:
        br = bracket(model, h0, model.unit(i))
        expect = [Fraction(0)] * model.dim
        expect[i] = Fraction(model.basis[i].root)
        assert list(br) == expect


def test_dimension_table():
    assert Family(REAL, 4).d == 4
    assert Family(COMPLEX, 3).d == 6
    assert Family(QUATERNIONIC, 2).d == 8
