"""Reconstruction of the transformed half-space pressures at one frequency.

The transformed pressure on each side solves the constant-coefficient ODE

    (tau + i*v1*eta)^2 P + c^2*eta^2 P - c^2 P'' = Fhat,

whose decaying solution is fixed by the boundary system: continuity of P,
the prescribed jump of P' driven by the front, and one decay condition per
side.  The solution is evaluated in the exponentially split form so that
the growing mode is cancelled analytically whenever the decay condition
holds; inconsistent user data keeps the growing term and emits a warning.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .domain import Frequency, Medium
from .quadrature import exp_weighted_integral, exp_weighted_segment, extrapolate_origin
from .solver import halfline_integral
from .symbol import decay_root, symbol

__all__ = ["BoundaryState", "PressureProfile", "solve_boundary_system",
           "reconstruct_profile", "front_equation_residual", "ode_residual"]

# Relative size of the decay-condition defect below which the growing
# exponential is dropped as pure rounding noise.
GROWTH_DEFECT_RTOL = 1e-8


@dataclass(frozen=True)
class BoundaryState:
    """Boundary values P(0) and P'(0) of the two transformed pressures."""

    p_plus0: complex
    p_minus0: complex
    dp_plus0: complex
    dp_minus0: complex


@dataclass
class PressureProfile:
    """Sampled transformed pressures, x2_nodes[0] = 0 included."""

    x2_nodes: np.ndarray
    p_plus: np.ndarray
    p_minus: np.ndarray
    growing_plus: bool
    growing_minus: bool


def solve_boundary_system(freq: Frequency, medium: Medium, f_hat: complex,
                          i_plus: complex, i_minus: complex) -> BoundaryState:
    """Solve the 4x4 boundary system for P(0), P'(0) on both sides.

    i_plus and i_minus are the forcing integrals
    integral_0^inf exp(-mu_pm*y) Fhat_pm(., +-y) dy.  The system determinant
    equals mu_plus + mu_minus, nonzero for gamma > 0.
    """
    if freq.gamma <= 0.0:
        raise ValueError("the boundary system requires gamma > 0")
    c = medium.c
    mu_p = decay_root(freq, medium.v1_plus, c)
    mu_m = decay_root(freq, medium.v1_minus, c)
    s = mu_p + mu_m
    if abs(s) <= 1e-13 * (abs(mu_p) + abs(mu_m)):
        raise ArithmeticError("boundary system is singular: mu_plus + mu_minus "
                              "vanishes (possible only as gamma -> 0 with v >= c)")
    taup = freq.tau + 1j * medium.w1 * freq.eta
    jump = -4j * freq.eta * (medium.V1 / c) * (taup / c) * f_hat
    p0 = ((i_plus + i_minus) / (c * c) - jump) / s
    dp_p = i_plus / (c * c) - mu_p * p0
    dp_m = mu_m * p0 - i_minus / (c * c)
    return BoundaryState(p0, p0, dp_p, dp_m)


def _split_convolution(full: np.ndarray, mu: complex, h: float,
                       c: float) -> np.ndarray:
    """(1/(2 c^2 mu)) integral_0^L exp(-mu*|x-y|) Fhat(y) dy at every node.

    `full` holds Fhat at 0, h, ..., L.  The kernel kink at y = x splits the
    integral; each side keeps the exponential factor exact.
    """
    n = full.shape[0] - 1
    out = np.empty(n + 1, dtype=complex)
    rev = full[::-1]
    decay = np.exp(-mu * h)
    for k in range(n + 1):
        if k >= 2:
            left = complex(exp_weighted_integral(rev[n - k:], h, mu))
        elif k == 1:
            # Single interval [0, h], kernel exp(-mu*(h - y)).
            left = decay * complex(
                exp_weighted_segment(full[0], full[1], full[2], h, -mu, "head"))
        else:
            left = 0j
        if n - k >= 2:
            right = complex(exp_weighted_integral(full[k:], h, mu))
        elif n - k == 1:
            # Single interval [L - h, L], kernel exp(-mu*(y - (L - h))).
            right = (1.0 / decay) * complex(
                exp_weighted_segment(full[n - 2], full[n - 1], full[n], h,
                                     mu, "tail"))
        else:
            right = 0j
        out[k] = left + right
    return out / (2.0 * c * c * mu)


def reconstruct_profile(freq: Frequency, medium: Medium, state: BoundaryState,
                        slice_plus: np.ndarray, slice_minus: np.ndarray,
                        dx2: float) -> PressureProfile:
    """Evaluate both transformed pressures on [0, L_x2].

    slice_plus / slice_minus hold Fhat at the stored nodes dx2..L_x2 (the
    origin value is extrapolated).  Written as
    (decaying exponential) + (exp(-mu|x-y|) convolution) + (growing defect),
    the last term nonzero only when the decay condition fails.
    """
    c = medium.c
    n = len(np.asarray(slice_plus))
    nodes = np.arange(n + 1) * dx2
    profs: dict[str, np.ndarray] = {}
    grew: dict[str, bool] = {}
    for side in ("plus", "minus"):
        v1 = medium.v1_plus if side == "plus" else medium.v1_minus
        sl = np.asarray(slice_plus if side == "plus" else slice_minus,
                        dtype=complex)
        mu = decay_root(freq, v1, c)
        p0 = state.p_plus0 if side == "plus" else state.p_minus0
        dp0 = state.dp_plus0 if side == "plus" else state.dp_minus0
        b = dp0 / mu if side == "plus" else -dp0 / mu
        t_side = complex(halfline_integral(sl, mu, dx2)) / (c * c * mu)
        defect = p0 + b - t_side
        scale = abs(p0) + abs(b) + abs(t_side)
        full = np.concatenate(([extrapolate_origin(sl)], sl))
        prof = 0.5 * (p0 - b) * np.exp(-mu * nodes) \
            + _split_convolution(full, mu, dx2, c)
        growing = scale > 0 and abs(defect) > GROWTH_DEFECT_RTOL * scale
        if growing:
            warnings.warn(
                f"boundary data on the {side} side violate the decay "
                f"condition (relative defect {abs(defect) / scale:.3e}); "
                "the growing exponential is retained", RuntimeWarning)
            prof = prof + 0.5 * defect * np.exp(mu * nodes)
        profs[side] = prof
        grew[side] = growing
    return PressureProfile(nodes, profs["plus"], profs["minus"],
                           grew["plus"], grew["minus"])


def front_equation_residual(freq: Frequency, medium: Medium,
                            state: BoundaryState, f_hat: complex,
                            m_value: complex) -> float:
    """Residual closing the loop between the front equation and the solver.

    Returns the larger of the residual of

        (tau + i*w1*eta)^2 f - V1^2*eta^2 f + (c^2/2)(dP+ + dP-)(0) = 0

    with the boundary-state derivatives, and of the equivalent spectral form
    Sigma*f + (mu_plus*mu_minus/(mu_plus + mu_minus))*M = 0.
    """
    c = medium.c
    taup = freq.tau + 1j * medium.w1 * freq.eta
    res1 = abs((taup * taup - (medium.V1 * freq.eta) ** 2) * f_hat
               + 0.5 * c * c * (state.dp_plus0 + state.dp_minus0))
    mu_p = decay_root(freq, medium.v1_plus, c)
    mu_m = decay_root(freq, medium.v1_minus, c)
    res2 = abs(symbol(freq, medium) * f_hat
               + (mu_p * mu_m / (mu_p + mu_m)) * m_value)
    return max(float(res1), float(res2))


def ode_residual(profile: PressureProfile, freq: Frequency, medium: Medium,
                 slice_plus: np.ndarray, slice_minus: np.ndarray
                 ) -> tuple[np.ndarray, np.ndarray]:
    """Centered second-difference residual of the pressure ODE, both sides.

    Returned at the interior nodes dx2..(L_x2 - dx2); O(h^2) for profiles
    built from consistent data.
    """
    h = float(profile.x2_nodes[1] - profile.x2_nodes[0])
    c = medium.c
    out = []
    for side in ("plus", "minus"):
        q = profile.p_plus if side == "plus" else profile.p_minus
        v1 = medium.v1_plus if side == "plus" else medium.v1_minus
        sl = np.asarray(slice_plus if side == "plus" else slice_minus,
                        dtype=complex)
        coef = (freq.tau + 1j * v1 * freq.eta) ** 2 + (c * freq.eta) ** 2
        second = (q[2:] - 2.0 * q[1:-1] + q[:-2]) / (h * h)
        res = coef * q[1:-1] - c * c * second - sl[:-1]
        out.append(res)
    return out[0], out[1]
