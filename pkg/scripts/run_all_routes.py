#!/usr/bin/env python3
"""Compute the multiplicity of the zeta singularity at s = 0 by every
closed-form route, for a grid of spaces, and print a comparison table.

Usage: python3 scripts/run_all_routes.py [--chi CHI]
"""

import argparse
from fractions import Fraction

from zetamult.euler_topology import multiplicity_from_dimension, multiplicity_from_proportionality
from zetamult.lie_core import COMPLEX, QUATERNIONIC, REAL, Family
from zetamult.multiplicity_geometry import (multiplicity_from_chi,
                                            multiplicity_ratio)

CASES = [Family(REAL, 2), Family(REAL, 4), Family(REAL, 6),
         Family(COMPLEX, 2), Family(COMPLEX, 3), Family(QUATERNIONIC, 2)]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--chi", type=int, default=-2,
                        help="Euler characteristic of the quotient space")
    args = parser.parse_args()

    header = f"{'space':32} {'d':>3} {'ratio':>6} {'forms':>7} " \
             f"{'euler':>7} {'dim-formula':>12}"
    print(header)
    print("-" * len(header))
    for family in CASES:
        ratio = multiplicity_ratio(family).ratio
        forms = multiplicity_from_chi(family, args.chi)
        try:
            prop = multiplicity_from_proportionality(family.kind, args.chi, family.n)
        except Exception as exc:  # chi not divisible by chi(dual)
            prop = f"({type(exc).__name__})"
        dim_formula = multiplicity_from_dimension(family.d, args.chi)
        assert ratio == Fraction(family.d, 2)
        print(f"{str(family):32} {family.d:>3} {str(ratio):>6} "
              f"{forms:>7} {str(prop):>7} {dim_formula:>12}")


if __name__ == "__main__":
    main()
