"""Multiplicity of the Ruelle zeta singularity at s=0 for rank-one
compact locally symmetric spaces, computed by three independent routes:
a secondary characteristic form integral, Euler-characteristic
proportionality formulas, and surface-level zeta numerics."""

__version__ = "0.1.0"
