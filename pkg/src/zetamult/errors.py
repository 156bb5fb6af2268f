"""Exception hierarchy shared by all zetamult modules.

Each error class maps to a distinct CLI exit code (see cli.EXIT_CODES).
"""


class ZetamultError(Exception):
    """Base class for all package errors."""


# --- lie_core ---

class UnsupportedFamily(ZetamultError):
    """Requested family has no exact rational matrix model (octonionic)."""


class DegenerateRank(ZetamultError):
    """ad(H0) eigenvalue multiplicities disagree with the family table."""


class StructureViolation(ZetamultError):
    """A structural identity of the Lie algebra model failed; the message
    names the identity."""


# --- exterior_forms ---

class DegreeOverflow(ZetamultError):
    """Wedge or differential would exceed the top degree."""


class MixedScalar(ZetamultError):
    """Sum of scalars with incompatible pi/i exponents."""


class EigenvalueAmbiguous(ZetamultError):
    """More than one real 2-form eigenvalue candidate survived validation."""


class NotProportional(ZetamultError):
    """The extracted eigenvalue 2-form is not a rational multiple of the
    contact 2-form."""


# --- multiplicity_geometry ---

class OddDimension(ZetamultError):
    """Operation requires an even-dimensional space."""


class WrongFamily(ZetamultError):
    """Operation restricted to a specific family."""


class CalibrationMissing(ZetamultError):
    """The surface calibration constant could not be established."""


class MismatchedSigns(ZetamultError):
    """The two sign choices of the multiplicity integrand disagree."""


class NonIntegerMultiplicity(ZetamultError):
    """r * chi is not an integer; signals a normalization bug."""


class NonSquareGram(ZetamultError):
    """The frame Gram determinant is not a rational square; the volume
    comparison cannot stay in exact arithmetic."""


# --- euler_topology ---

class NonDivisibleChi(ZetamultError):
    """chi(X) is not divisible by chi of the compact dual."""


class DualityViolation(ZetamultError):
    """Betti vector violates Poincare duality."""


class WrongParity(ZetamultError):
    """Betti vector has even length (even-dimensional input)."""


# --- geodesic_spectrum ---

class NotHyperbolic(ZetamultError):
    """|trace| <= 2: element is not hyperbolic."""


class ToleranceCollision(ZetamultError):
    """Two distinct canonical classes collide in trace within tolerance."""


class BeyondHorizon(ZetamultError):
    """Query beyond the reliable enumeration range."""


class InsufficientData(ZetamultError):
    """Spectrum too shallow for the requested fit."""


# --- zeta_engine ---

class OutsideConvergence(ZetamultError):
    """Re(s) is at or below the estimated convergence abscissa."""


class PoleAtInteger(ZetamultError):
    """Functional-equation RHS has a pole at integer s for negative chi."""


class PathNearPole(ZetamultError):
    """Integration path passes too close to a tangent pole."""


class EmptySpectrum(ZetamultError):
    """Operation requires a non-empty spectrum."""
