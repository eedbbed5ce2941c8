"""Exact evaluation of the decay roots, the front symbol and its roots.

The transformed half-space pressures decay like exp(-mu*x2) where mu solves

    mu^2 = ((tau + i*v1*eta)/c)^2 + eta^2,

with the branch fixed by Re(mu) > 0 for Re(tau) > 0 and by explicit
continuous-extension formulas on the boundary Re(tau) = 0.  The front
evolution symbol is

    Sigma = (tau + i*w1*eta)^2
            + V1^2*eta^2 * (8*((tau + i*w1*eta)/c/(mu_plus + mu_minus))^2 - 1),

a homogeneous function of degree 2 whose zero set decides stability: for
V1/c below sqrt(2) it vanishes on a real-tau ray (violent instability), for
V1/c above sqrt(2) only on the imaginary axis at tau = +-i*c*Y2*eta (weak
stability).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .domain import (ENDPOINT_ATOL, REGIME_RTOL, SQRT2, BranchCase,
                     Frequency, MachClass, Medium, RegimeError, RegimeReport,
                     RootPair, StabilityClass)

__all__ = [
    "signed_sqrt", "decay_root", "decay_root_pair", "ratio_sq", "symbol",
    "symbol_factored", "classify", "symbol_roots", "root_cofactor",
    "boundary_root_signs", "BoundarySigns", "mu_grid", "mu_boundary_grid",
    "symbol_grid",
]


def signed_sqrt(a: float, b: float) -> complex:
    """Square root of a + i*b with nonnegative imaginary part.

    Returns sgn(b)*sqrt((r+a)/2) + i*sqrt((r-a)/2) with r = |a+ib| and the
    convention sgn(0) = 1, which fixes the branch on the negative real axis.
    The smaller component is obtained from b/(2*larger) so both components
    carry full relative accuracy.
    """
    r = math.hypot(a, b)
    if r == 0.0:
        return 0j
    if a >= 0.0:
        re = math.sqrt(0.5 * (r + a))
        im = abs(b) / (2.0 * re)
    else:
        im = math.sqrt(0.5 * (r - a))
        re = abs(b) / (2.0 * im)
    if b < 0.0:
        return complex(-re, im)
    return complex(re, im)


def _root_and_case(freq: Frequency, v1: float, c: float) -> tuple[complex, BranchCase]:
    gamma, delta, eta = freq.gamma, freq.delta, freq.eta
    if gamma > 0.0:
        x = gamma / c
        y = (delta + v1 * eta) / c
        root = signed_sqrt(x * x - y * y + eta * eta, 2.0 * x * y)
        if root.real <= 0.0:
            root = -root
        return root, BranchCase.INTERIOR
    # Boundary gamma = 0: continuous extension.
    if eta == 0.0:
        mu = complex(0.0, delta / c)
        case = BranchCase.BOUNDARY_IMAG_POS if delta > 0 else BranchCase.BOUNDARY_IMAG_NEG
        return mu, case
    t = (delta + v1 * eta) / c
    if abs(abs(t) - abs(eta)) <= ENDPOINT_ATOL * abs(eta):
        return 0j, BranchCase.BOUNDARY_ZERO
    d = (eta - t) * (eta + t)  # eta^2 - t^2, factored for accuracy near the loci
    if d > 0.0:
        return complex(math.sqrt(d), 0.0), BranchCase.BOUNDARY_REAL
    if t > 0.0:
        return complex(0.0, math.sqrt(-d)), BranchCase.BOUNDARY_IMAG_POS
    return complex(0.0, -math.sqrt(-d)), BranchCase.BOUNDARY_IMAG_NEG


def decay_root(freq: Frequency, v1: float, c: float) -> complex:
    """The root mu of mu^2 = ((tau + i*v1*eta)/c)^2 + eta^2 selecting decay.

    For gamma > 0 this is the unique root with strictly positive real part;
    for gamma = 0 it is the continuous extension (real branch inside the
    propagation cone, signed imaginary branch outside, zero on the loci
    delta = -(v1 +- c)*eta, and i*delta/c when eta = 0).
    """
    if c <= 0:
        raise ValueError("sound speed c must be positive")
    return _root_and_case(freq, v1, c)[0]


def decay_root_pair(freq: Frequency, medium: Medium) -> RootPair:
    """Both decay roots of a medium, with branch metadata."""
    mu_p, case_p = _root_and_case(freq, medium.v1_plus, medium.c)
    mu_m, case_m = _root_and_case(freq, medium.v1_minus, medium.c)
    return RootPair(mu_p, mu_m, case_p, case_m)


def ratio_sq(freq: Frequency, medium: Medium) -> complex:
    """The squared ratio ((tau + i*w1*eta)/c / (mu_plus + mu_minus))^2.

    Evaluated through the equivalent difference form
    -c^2*(mu_plus - mu_minus)^2 / (16*V1^2*eta^2), which is exact wherever
    the direct quotient is defined and extends it continuously across the
    points tau + i*w1*eta = 0 where the root sum vanishes (value
    ((V1/c)^2 - 1)/(4*(V1/c)^2) there).  For eta = 0 both roots coincide
    and the ratio is exactly 1/4.
    """
    c = medium.c
    eta = freq.eta
    if eta == 0.0:
        return complex(0.25, 0.0)
    v1 = medium.V1
    mu_p = decay_root(freq, medium.v1_plus, c)
    mu_m = decay_root(freq, medium.v1_minus, c)
    if v1 == 0.0:
        # No velocity jump: the roots coincide and the quotient is direct.
        s = mu_p + mu_m
        if s == 0:
            raise ZeroDivisionError("mu_plus + mu_minus vanishes and V1 = 0")
        taup = freq.tau + 1j * medium.w1 * eta
        return ((taup / c) / s) ** 2
    diff = c * (mu_p - mu_m)
    return -(diff * diff) / (16.0 * (v1 * eta) ** 2)


def symbol(freq: Frequency, medium: Medium) -> complex:
    """The order-2 front symbol Sigma(tau, eta).

    Well defined on the whole frequency set, including the boundary points
    where the root sum vanishes (handled inside :func:`ratio_sq`).  Units
    1/time^2.
    """
    eta = freq.eta
    taup = freq.tau + 1j * medium.w1 * eta
    rho = ratio_sq(freq, medium)
    return taup * taup + (medium.V1 * eta) ** 2 * (8.0 * rho - 1.0)


def symbol_factored(freq: Frequency, medium: Medium) -> complex:
    """The product form c^2*(mu_plus*mu_minus - eta^2) of the symbol."""
    c = medium.c
    mu_p = decay_root(freq, medium.v1_plus, c)
    mu_m = decay_root(freq, medium.v1_minus, c)
    return c * c * (mu_p * mu_m - freq.eta * freq.eta)


def _dispersion_parameters(m: float) -> tuple[float, float | None, float | None]:
    """(Y0, Y1, Y2) of the biquadratic dispersion relation, m = v/c."""
    disc = math.sqrt(4.0 * m * m + 1.0)
    y0 = math.sqrt(m * m + 1.0 + disc)
    rest = disc - (m * m + 1.0)  # sign decides the regime
    if rest > 0.0:
        return y0, math.sqrt(rest), None
    if rest < 0.0:
        return y0, None, math.sqrt(-rest)
    return y0, None, None


def classify(medium: Medium) -> RegimeReport:
    """Mach and stability classification of a symmetric medium.

    Within relative tolerance 1e-12 of v = c the medium is reported sonic,
    and within the same tolerance of v/c = sqrt(2) as the degenerate
    transition case (both Y1 and Y2 absent).
    """
    v, c = medium.require_symmetric()
    m = v / c
    if abs(v - c) <= REGIME_RTOL * max(v, c):
        mach = MachClass.SONIC
    elif v < c:
        mach = MachClass.SUBSONIC
    else:
        mach = MachClass.SUPERSONIC
    if abs(m - SQRT2) <= REGIME_RTOL * SQRT2:
        stability = StabilityClass.TRANSITION
        y0 = _dispersion_parameters(m)[0]
        y1 = y2 = None
    else:
        y0, y1, y2 = _dispersion_parameters(m)
        stability = (StabilityClass.ELLIPTIC_UNSTABLE if m < SQRT2
                     else StabilityClass.WEAKLY_STABLE)
        # Guard against rounding straddling the threshold.
        if stability is StabilityClass.ELLIPTIC_UNSTABLE and y1 is None:
            y1, y2 = 0.0, None
        if stability is StabilityClass.WEAKLY_STABLE and y2 is None:
            y1, y2 = None, 0.0
    return RegimeReport(mach, stability, m, y0, y1, y2)


def symbol_roots(medium: Medium, eta: float) -> list[complex]:
    """All tau with Sigma(tau, eta) = 0 for a fixed eta != 0.

    Below the stability threshold the single root c*Y1*|eta| on the positive
    real axis; above it the conjugate pair +-i*c*Y2*eta.  The degenerate
    transition case is refused.
    """
    if eta == 0.0:
        raise ValueError("eta must be nonzero (Sigma(tau, 0) = tau^2 has no roots)")
    report = classify(medium)
    c = medium.c
    if report.stability_class is StabilityClass.TRANSITION:
        raise RegimeError(report.stability_class.value,
                          "root structure is degenerate at v/c = sqrt(2)")
    if report.stability_class is StabilityClass.ELLIPTIC_UNSTABLE:
        return [complex(c * report.y1 * abs(eta), 0.0)]
    return [1j * c * report.y2 * eta, -1j * c * report.y2 * eta]


def root_cofactor(freq: Frequency, medium: Medium, root_sign: int = 1,
                  radius: float = 0.5) -> complex:
    """The cofactor H in Sigma = (tau - root_sign*i*c*Y2*eta)*H near a root ray.

    Defined in the weakly stable regime on a neighborhood of the ray
    (root_sign*i*c*Y2*eta0, eta0); homogeneous of degree 1 and nonvanishing
    there.  Within relative distance 1e-8 of the ray the analytic value
    2*root_sign*i*c*eta*Y2*sqrt(4*(v/c)^2 + 1) is returned instead of the
    0/0 quotient.
    """
    if root_sign not in (1, -1):
        raise ValueError("root_sign must be +1 or -1")
    report = classify(medium)
    if report.stability_class is not StabilityClass.WEAKLY_STABLE:
        raise RegimeError(report.stability_class.value,
                          "the imaginary root rays exist only for v/c > sqrt(2)")
    c = medium.c
    y2 = report.y2
    root_tau = root_sign * 1j * c * y2 * freq.eta
    scale = math.sqrt(freq.magnitude_sq)
    dist = abs(freq.tau - root_tau) / scale
    if dist > radius:
        raise ValueError(
            f"frequency lies at relative distance {dist:.3g} from the root ray, "
            f"outside the factorization neighborhood (radius {radius:g})")
    if dist <= 1e-8:
        m = report.mach_ratio
        kappa = math.sqrt(4.0 * m * m + 1.0)  # = m^2 + 1 - Y2^2 > 0
        return 2.0 * root_sign * 1j * c * freq.eta * y2 * kappa
    return symbol(freq, medium) / (freq.tau - root_tau)


class BoundarySigns:
    """Record of the boundary root kinds and product sign at gamma = 0."""

    __slots__ = ("mu_plus_kind", "mu_minus_kind", "sum_nonzero", "re_product_sign")

    def __init__(self, mu_plus_kind: str, mu_minus_kind: str,
                 sum_nonzero: bool, re_product_sign: int):
        self.mu_plus_kind = mu_plus_kind
        self.mu_minus_kind = mu_minus_kind
        self.sum_nonzero = sum_nonzero
        self.re_product_sign = re_product_sign

    def __repr__(self):
        return (f"BoundarySigns(mu_plus_kind={self.mu_plus_kind!r}, "
                f"mu_minus_kind={self.mu_minus_kind!r}, "
                f"sum_nonzero={self.sum_nonzero}, "
                f"re_product_sign={self.re_product_sign})")


_KIND_OF_CASE = {
    BranchCase.BOUNDARY_REAL: "positive_real",
    BranchCase.BOUNDARY_IMAG_NEG: "imaginary",
    BranchCase.BOUNDARY_IMAG_POS: "imaginary",
}


def boundary_root_signs(freq: Frequency, medium: Medium) -> BoundarySigns:
    """Classify both roots at a boundary point gamma = 0, eta != 0.

    Reports whether each root is purely imaginary or positive real, whether
    the sum is nonzero, and the sign of Re(mu_plus*mu_minus).  Points where
    delta/(c*eta) sits on an interval endpoint (a root vanishes there) are
    refused.
    """
    medium.require_symmetric()
    if freq.gamma != 0.0:
        raise ValueError("boundary classification requires gamma = 0")
    if freq.eta == 0.0:
        raise ValueError("boundary classification requires eta != 0")
    pair = decay_root_pair(freq, medium)
    if BranchCase.BOUNDARY_ZERO in (pair.case_plus, pair.case_minus):
        raise ValueError(
            "delta/(c*eta) lies on an interval endpoint where a root vanishes; "
            "the sign table is not defined there")
    s = pair.mu_plus + pair.mu_minus
    p = (pair.mu_plus * pair.mu_minus).real
    sign = 0 if p == 0.0 else (1 if p > 0.0 else -1)
    return BoundarySigns(_KIND_OF_CASE[pair.case_plus],
                         _KIND_OF_CASE[pair.case_minus],
                         s != 0, sign)


# ---------------------------------------------------------------------------
# Vectorized evaluation over frequency grids.  Pure functions of their
# arguments; bins are independent, so concurrent evaluation is safe.

def mu_grid(tau: np.ndarray, eta: np.ndarray, v1: float, c: float) -> np.ndarray:
    """Decay root over arrays of tau (Re > 0 required) and eta."""
    tau = np.asarray(tau, dtype=complex)
    eta = np.asarray(eta, dtype=float)
    if np.any(tau.real <= 0.0):
        raise ValueError("mu_grid requires Re(tau) > 0 everywhere")
    x = tau.real / c
    y = (tau.imag + v1 * eta) / c
    a = x * x - y * y + eta * eta
    b = 2.0 * x * y
    r = np.hypot(a, b)
    pos = a >= 0.0
    re = np.empty_like(a)
    im = np.empty_like(a)
    re[pos] = np.sqrt(0.5 * (r[pos] + a[pos]))
    im[pos] = np.divide(np.abs(b[pos]), 2.0 * re[pos],
                        out=np.zeros_like(re[pos]), where=re[pos] > 0)
    neg = ~pos
    im[neg] = np.sqrt(0.5 * (r[neg] - a[neg]))
    re[neg] = np.abs(b[neg]) / (2.0 * im[neg])
    return re + 1j * np.where(b < 0.0, -im, im)


def mu_boundary_grid(delta: np.ndarray, eta: np.ndarray, v1: float,
                     c: float) -> np.ndarray:
    """Decay root continuous extension over boundary arrays (gamma = 0)."""
    delta = np.asarray(delta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    t = (delta + v1 * eta) / c
    out = np.empty(np.broadcast(delta, eta).shape, dtype=complex)
    eta_b, t_b, delta_b = np.broadcast_arrays(eta, t, delta)
    axis0 = eta_b == 0.0
    out[axis0] = 1j * delta_b[axis0] / c
    rest = ~axis0
    tb, eb = t_b[rest], eta_b[rest]
    d = (eb - tb) * (eb + tb)
    vals = np.empty(tb.shape, dtype=complex)
    zero = np.abs(np.abs(tb) - np.abs(eb)) <= ENDPOINT_ATOL * np.abs(eb)
    vals[zero] = 0.0
    real = (~zero) & (d > 0.0)
    vals[real] = np.sqrt(d[real])
    imag = (~zero) & (d <= 0.0)
    vals[imag] = 1j * np.where(tb[imag] > 0, 1.0, -1.0) * np.sqrt(-d[imag])
    out[rest] = vals
    return out


def symbol_grid(tau: np.ndarray, eta: np.ndarray, medium: Medium,
                boundary: bool = False) -> np.ndarray:
    """Symbol over frequency arrays (interior, or boundary with gamma = 0).

    Uses the same difference form as :func:`ratio_sq`, uniformly accurate
    relative to |tau|^2 + eta^2.
    """
    c = medium.c
    eta = np.asarray(eta, dtype=float)
    if boundary:
        tau = np.asarray(tau, dtype=complex)
        mu_p = mu_boundary_grid(tau.imag, eta, medium.v1_plus, c)
        mu_m = mu_boundary_grid(tau.imag, eta, medium.v1_minus, c)
    else:
        mu_p = mu_grid(tau, eta, medium.v1_plus, c)
        mu_m = mu_grid(tau, eta, medium.v1_minus, c)
    taup = np.asarray(tau, dtype=complex) + 1j * medium.w1 * eta
    diff = c * (mu_p - mu_m)
    return taup * taup - 0.5 * diff * diff - (medium.V1 * eta) ** 2
