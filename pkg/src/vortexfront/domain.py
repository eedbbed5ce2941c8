"""Domain types shared by the symbol, solver and pressure modules."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

SQRT2 = math.sqrt(2.0)

# Relative tolerance used to classify a medium as sonic / at the stability
# threshold.  Inside this band the root structure is degenerate and the
# operations that rely on it refuse to run.
REGIME_RTOL = 1e-12

# Absolute tolerance (in units of |eta|) used to snap a boundary root to the
# loci where it vanishes exactly.
ENDPOINT_ATOL = 1e-12


class RegimeError(RuntimeError):
    """An operation was requested outside the regime where it is defined."""

    def __init__(self, regime: str, message: str):
        super().__init__(message)
        self.regime = regime


@dataclass(frozen=True)
class Frequency:
    """A point (tau, eta) of the frequency set, tau = gamma + i*delta.

    gamma >= 0 is the exponential time weight (1/time), delta the time
    frequency (1/time) and eta the space frequency (1/length).  The origin
    (0, 0, 0) is excluded.
    """

    gamma: float
    delta: float
    eta: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and math.isfinite(self.delta)
                and math.isfinite(self.eta)):
            raise ValueError("frequency components must be finite")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        if self.gamma == 0 and self.delta == 0 and self.eta == 0:
            raise ValueError("(0, 0, 0) is not a frequency")

    @property
    def tau(self) -> complex:
        return complex(self.gamma, self.delta)

    @property
    def magnitude_sq(self) -> float:
        """|tau|^2 + eta^2, the squared frequency scale."""
        return self.gamma * self.gamma + self.delta * self.delta + self.eta * self.eta

    def scaled(self, k: float) -> "Frequency":
        if k <= 0:
            raise ValueError("scale factor must be positive")
        return Frequency(k * self.gamma, k * self.delta, k * self.eta)


@dataclass(frozen=True)
class Medium:
    """Constant states: sound speed c and tangential velocities on each side.

    The analysis of the front symbol assumes the symmetric normalization
    v1_plus = v > 0, v1_minus = -v; use :meth:`symmetric` for that.  General
    velocities remain accepted for plain root / symbol evaluation.
    """

    c: float
    v1_plus: float
    v1_minus: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.v1_plus)
                and math.isfinite(self.v1_minus)):
            raise ValueError("medium parameters must be finite")
        if self.c <= 0:
            raise ValueError("sound speed c must be positive")

    @classmethod
    def symmetric(cls, v: float, c: float) -> "Medium":
        return cls(c=c, v1_plus=v, v1_minus=-v)

    @property
    def w1(self) -> float:
        return 0.5 * (self.v1_plus + self.v1_minus)

    @property
    def V1(self) -> float:
        return 0.5 * (self.v1_plus - self.v1_minus)

    def require_symmetric(self) -> tuple[float, float]:
        """Return (v, c) after checking v1_plus = v > 0, v1_minus = -v."""
        if self.w1 != 0.0 or self.V1 <= 0.0:
            raise ValueError(
                "operation requires the symmetric normalization "
                "v1_plus = v > 0, v1_minus = -v (w1 = 0)")
        return self.V1, self.c


class MachClass(str, enum.Enum):
    SUBSONIC = "subsonic"
    SONIC = "sonic"
    SUPERSONIC = "supersonic"


class StabilityClass(str, enum.Enum):
    ELLIPTIC_UNSTABLE = "elliptic_unstable"
    TRANSITION = "transition"
    WEAKLY_STABLE = "weakly_stable"


class BranchCase(str, enum.Enum):
    """Which evaluation branch produced a decay root."""

    INTERIOR = "interior"            # gamma > 0, root with positive real part
    BOUNDARY_REAL = "boundary_real"  # gamma = 0, nonnegative real branch
    BOUNDARY_ZERO = "boundary_zero"  # gamma = 0, on a vanishing locus
    BOUNDARY_IMAG_NEG = "boundary_imag_neg"
    BOUNDARY_IMAG_POS = "boundary_imag_pos"


@dataclass(frozen=True)
class RootPair:
    """The pair of decay roots with branch metadata."""

    mu_plus: complex
    mu_minus: complex
    case_plus: BranchCase
    case_minus: BranchCase


@dataclass(frozen=True)
class RegimeReport:
    """Stability classification of a symmetric medium.

    y0 locates the spurious candidates of the dispersion relation (never
    symbol roots); y1 the real-axis root parameter (only below the
    threshold); y2 the neutral imaginary-axis root parameter (only above).
    """

    mach_class: MachClass
    stability_class: StabilityClass
    mach_ratio: float
    y0: float
    y1: float | None
    y2: float | None
