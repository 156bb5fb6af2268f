"""Euler characteristics via Weyl-group orders, and the closed-form
multiplicity evaluators (proportionality, dimension formula, Betti sum).

The compact dual of each hyperbolic family is an equal-rank homogeneous
space, so chi = |W(G_c)| / |W(K_c)|; the same works for the manifold of
oriented closed geodesics of the dual with its isotropy group.  The
isotropy tables are hard-coded per family and cross-checked at test time
against the consistency identity chi_geo / chi_dual = d/2.
"""

from dataclasses import dataclass
from math import factorial

from .errors import (DualityViolation, NonDivisibleChi, OddDimension,
                     UnsupportedFamily, WrongParity)

FAMILIES = ("real-hyperbolic", "complex-hyperbolic",
            "quaternionic-hyperbolic", "octonionic-hyperbolic")


@dataclass(frozen=True)
class RootSystemDescriptor:
    type: str  # A, B, C, D, F4
    rank: int

    def __post_init__(self):
        if self.type not in ("A", "B", "C", "D", "F4"):
            raise ValueError(f"unknown root system type {self.type!r}")
        if self.type == "F4" and self.rank != 4:
            raise ValueError("F4 has rank 4")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")


def weyl_order(rs):
    """|W|: (n+1)! for A_n, 2^n n! for B_n/C_n, 2^{n-1} n! for D_n, 1152
    for F4.  Degenerate low ranks use the standard identifications
    (D_1 = trivial SO(2) torus factor handled by the tables as rank 0)."""
    n = rs.rank
    if rs.type == "A":
        return factorial(n + 1)
    if rs.type in ("B", "C"):
        return 2 ** n * factorial(n)
    if rs.type == "D":
        return 2 ** (n - 1) * factorial(n) if n >= 2 else 1
    return 1152


def _weyl_product(factors):
    order = 1
    for t, r in factors:
        if r == 0 or t == "T":  # torus factor
            continue
        order *= weyl_order(RootSystemDescriptor(t, r))
    return order


def _dim_X(family, n):
    return {"real-hyperbolic": n, "complex-hyperbolic": 2 * n,
            "quaternionic-hyperbolic": 4 * n,
            "octonionic-hyperbolic": 16}[family]


def _check_family(family):
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}")


def euler_char_dual(family, n=2):
    """chi of the compact dual: S^d, CP^n, HP^n, or the Cayley plane."""
    _check_family(family)
    if family == "real-hyperbolic":
        if n % 2:
            return 0  # odd sphere
        m = n // 2
        return _weyl_product([("B", m)]) // _weyl_product([("D", m)])
    if family == "complex-hyperbolic":
        return _weyl_product([("A", n)]) // _weyl_product([("A", n - 1)])
    if family == "quaternionic-hyperbolic":
        return (_weyl_product([("C", n + 1)])
                // _weyl_product([("C", n), ("C", 1)]))
    return _weyl_product([("F4", 4)]) // _weyl_product([("B", 4)])


def euler_char_geodesic_space(family, n=2):
    """chi of the manifold of oriented closed geodesics of the dual.

    Isotropy groups: SO(2) x SO(d-1) in SO(d+1); S(U(1)xU(1)xU(n-1)) in
    SU(n+1); U(1) x Sp(1) x Sp(n-1) in Sp(n+1); a B3 x torus subgroup of
    F4 for the Cayley plane."""
    _check_family(family)
    if family == "real-hyperbolic":
        if n % 2:
            k = (n + 1) // 2  # SO(n+2) is type D_k, SO(n-1) is D_{k-1}
            return _weyl_product([("D", k)]) // _weyl_product([("D", k - 1)])
        m = n // 2  # SO(n+1) is type B_m, SO(n-1) is B_{m-1}
        return _weyl_product([("B", m)]) // _weyl_product([("B", m - 1)])
    if family == "complex-hyperbolic":
        return _weyl_product([("A", n)]) // _weyl_product([("A", n - 2)])
    if family == "quaternionic-hyperbolic":
        return (_weyl_product([("C", n + 1)])
                // _weyl_product([("C", 1), ("C", n - 1)]))
    return _weyl_product([("F4", 4)]) // _weyl_product([("B", 3)])


def multiplicity_from_proportionality(family, chi_x, n=2):
    """m0 = (chi(X) / chi(dual)) * chi(geodesic space); even dim only."""
    _check_family(family)
    d = _dim_X(family, n)
    if d % 2:
        raise OddDimension("proportionality formula requires even dim(X)")
    dual = euler_char_dual(family, n)
    if chi_x % dual:
        raise NonDivisibleChi(
            f"chi(X) = {chi_x} is not a multiple of chi(dual) = {dual}")
    return (chi_x // dual) * euler_char_geodesic_space(family, n)


def multiplicity_from_dimension(d, chi_x):
    """m0 = (dim(X)/2) chi(X)."""
    if d % 2 or d < 2:
        raise OddDimension(f"dim(X) = {d} must be even and >= 2")
    return (d // 2) * chi_x


@dataclass(frozen=True)
class BettiVector:
    b: tuple

    @staticmethod
    def parse(values):
        b = tuple(int(x) for x in values)
        if len(b) % 2 or len(b) < 2:
            raise WrongParity(
                f"Betti vector of length {len(b)}: odd-dimensional spaces "
                "have an even number of Betti numbers b_0..b_{2n+1}")
        if any(x < 0 for x in b):
            raise DualityViolation("negative Betti number")
        if b[0] != 1:
            raise DualityViolation("b_0 must be 1 (connected space)")
        for p in range(len(b)):
            if b[p] != b[len(b) - 1 - p]:
                raise DualityViolation(
                    f"Poincare duality fails: b_{p} != b_{len(b) - 1 - p}")
        return BettiVector(b)

    @property
    def n(self):
        """Space dimension is 2n+1."""
        return len(self.b) // 2 - 1


def multiplicity_from_betti(betti):
    """Odd real hyperbolic: m0 = 2 sum_{p=n+1}^{2n+1} (-1)^p (p-n) b_p."""
    if not isinstance(betti, BettiVector):
        betti = BettiVector.parse(betti)
    n = betti.n
    total = 0
    for p in range(n + 1, 2 * n + 2):
        total += (-1) ** p * (p - n) * betti.b[p]
    return 2 * total


def euler_table():
    """Per-family consistency table for the even-dimensional cases."""
    rows = []
    cases = [("real-hyperbolic", 2), ("real-hyperbolic", 4),
             ("real-hyperbolic", 6), ("complex-hyperbolic", 2),
             ("complex-hyperbolic", 3), ("quaternionic-hyperbolic", 2),
             ("quaternionic-hyperbolic", 3), ("octonionic-hyperbolic", 2)]
    for family, n in cases:
        d = _dim_X(family, n)
        dual = euler_char_dual(family, n)
        geo = euler_char_geodesic_space(family, n)
        rows.append({
            "family": family,
            "n": n,
            "d": d,
            "chi_dual": dual,
            "chi_geodesic_space": geo,
            "ratio": geo // dual if geo % dual == 0 else geo / dual,
            "d_over_2": d // 2,
            "consistent": dual * (d // 2) == geo,
        })
    return rows
