import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetamult import errors
from zetamult.euler_topology import (BettiVector, RootSystemDescriptor,
                                     euler_char_dual,
                                     euler_char_geodesic_space, euler_table,
                                     multiplicity_from_dimension, multiplicity_from_proportionality,
                                     multiplicity_from_betti, weyl_order)


def test_weyl_orders():
    assert weyl_order(RootSystemDescriptor("A", 2)) == 6
    assert weyl_order(RootSystemDescriptor("B", 3)) == 48
    assert weyl_order(RootSystemDescriptor("C", 3)) == 48
    assert weyl_order(RootSystemDescriptor("D", 4)) == 192
    assert weyl_order(RootSystemDescriptor("F4", 4)) == 1152


@pytest.mark.parametrize("family,n,dual,geo", [
    ("real-hyperbolic", 2, 2, 2),
    ("real-hyperbolic", 4, 2, 4),
    ("real-hyperbolic", 3, 0, 4),
    ("complex-hyperbolic", 2, 3, 6),
    ("quaternionic-hyperbolic", 2, 3, 12),
    ("octonionic-hyperbolic", 2, 3, 24),
])
def test_euler_characteristics(family, n, dual, geo):
    assert euler_char_dual(family, n) == dual
    assert euler_char_geodesic_space(family, n) == geo


def test_table_is_consistent():
    rows = euler_table()
    assert len(rows) == 8
    for row in rows:
        assert row["consistent"]
        assert row["ratio"] == row["d"] // 2


def test_proportionality_matches_dimension_formula_on_surface():
    assert multiplicity_from_proportionality("real-hyperbolic", -2, 2) == -2
    assert multiplicity_from_dimension(2, -2) == -2


def test_proportionality_rejects_bad_input():
    with pytest.raises(errors.OddDimension):
        multiplicity_from_proportionality("real-hyperbolic", -2, 3)
    with pytest.raises(errors.NonDivisibleChi):
        multiplicity_from_proportionality("complex-hyperbolic", 2, 2)  # chi(CP^2) = 3


def test_betti_route_reference_values():
    assert multiplicity_from_betti([1, 0, 0, 1]) == -4
    assert multiplicity_from_betti([1, 2, 2, 1]) == 0


def test_betti_validation():
    with pytest.raises(errors.DualityViolation):
        BettiVector.parse([1, 0, 1, 1])
    with pytest.raises(errors.WrongParity):
        BettiVector.parse([1, 0, 1])


@given(st.integers(min_value=1, max_value=4),
       st.data())
def test_betti_route_always_even_on_dual_vectors(n, data):
    half = [1] + [data.draw(st.integers(0, 9)) for _ in range(n)]
    betti = half + half[::-1]
    assert multiplicity_from_betti(betti) % 2 == 0
