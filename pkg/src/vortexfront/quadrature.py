"""Quadrature rules for half-line integrals against decaying exponentials.

The forcing integrals have the form integral_0^L exp(-mu*y) f(y) dy with
Re(mu) > 0 possibly large.  Plain product quadrature loses accuracy once
mu*h is not small, so the rules here integrate the exponential factor
exactly against a piecewise-quadratic interpolant of f (Simpson-type
nodes): order 4 in the smoothness of f, uniformly in mu.
"""

from __future__ import annotations

import numpy as np

__all__ = ["extrapolate_origin", "simpson_closed", "exp_weighted_integral",
           "exp_weighted_segment"]

# Below this |mu*h| the closed-form moments lose digits to cancellation and
# a truncated series is used instead (14 terms reach full precision).
_SERIES_CUTOFF = 0.25
_SERIES_TERMS = 16


def extrapolate_origin(values: np.ndarray, axis: int = -1) -> np.ndarray:
    """Value at y = 0 from samples at h, 2h, ..., by a degree-4 polynomial.

    Error O(h^5) for smooth data, below the O(h^4) of the integration rules
    that consume it.
    """
    v = np.moveaxis(np.asarray(values), axis, -1)
    if v.shape[-1] < 5:
        raise ValueError("need at least five samples to extrapolate the origin")
    return (5.0 * v[..., 0] - 10.0 * v[..., 1] + 10.0 * v[..., 2]
            - 5.0 * v[..., 3] + v[..., 4])


def simpson_closed(values: np.ndarray, h: float, axis: int = -1) -> np.ndarray:
    """Composite Simpson over samples spanning [0, (n-1)*h], both ends included.

    An odd interval count is finished with the 3/8 rule on the last three
    intervals, preserving order 4.
    """
    v = np.moveaxis(np.asarray(values), axis, -1)
    n = v.shape[-1] - 1
    if n < 1:
        raise ValueError("need at least two samples")
    if n == 1:
        return 0.5 * h * (v[..., 0] + v[..., 1])
    stop = n if n % 2 == 0 else n - 3
    total = np.zeros(v.shape[:-1], dtype=v.dtype)
    if stop >= 2:
        total = (h / 3.0) * (v[..., 0] + v[..., stop]
                             + 4.0 * v[..., 1:stop:2].sum(axis=-1)
                             + 2.0 * v[..., 2:stop:2].sum(axis=-1))
    if stop < n:  # 3/8 tail
        total = total + (3.0 * h / 8.0) * (v[..., n - 3] + 3.0 * v[..., n - 2]
                                           + 3.0 * v[..., n - 1] + v[..., n])
    return total


def _moments(z: np.ndarray, span: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """m_j = integral_0^span exp(-mu*u) u^j du, j = 0, 1, 2, with z = mu*span."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < _SERIES_CUTOFF
    m0 = np.empty(z.shape, dtype=complex)
    m1 = np.empty(z.shape, dtype=complex)
    m2 = np.empty(z.shape, dtype=complex)

    zs = z[small]
    s0 = np.zeros_like(zs)
    s1 = np.zeros_like(zs)
    s2 = np.zeros_like(zs)
    term = np.ones_like(zs)
    for k in range(_SERIES_TERMS):
        s0 += term / (k + 1)
        s1 += term / (k + 2)
        s2 += term / (k + 3)
        term = term * (-zs) / (k + 1)
    m0[small] = span * s0
    m1[small] = span * span * s1
    m2[small] = span ** 3 * s2

    zl = z[~small]
    mu = zl / span
    e = np.exp(-zl)
    m0[~small] = (1.0 - e) / mu
    m1[~small] = (1.0 - e * (1.0 + zl)) / (mu * mu)
    m2[~small] = (2.0 - e * (2.0 + 2.0 * zl + zl * zl)) / (mu ** 3)
    return m0, m1, m2


def _quadratic_weights(m0, m1, m2, h: float):
    """Weights for f0, f1, f2 at nodes 0, h, 2h given segment moments."""
    w0 = m0 - 1.5 * m1 / h + 0.5 * m2 / (h * h)
    w1 = 2.0 * m1 / h - m2 / (h * h)
    w2 = -0.5 * m1 / h + 0.5 * m2 / (h * h)
    return w0, w1, w2


def exp_weighted_integral(values: np.ndarray, h: float, mu: np.ndarray,
                          axis: int = -1) -> np.ndarray:
    """integral_0^{(n-1)h} exp(-mu*y) f(y) dy from samples f at 0, h, ..., (n-1)h.

    f is interpolated by quadratics over Simpson pairs while the exponential
    is integrated exactly; an odd interval count is finished on the last
    interval with the quadratic through the last three nodes.  `mu` may be
    an array; it must broadcast against `values` with the node axis removed.
    """
    v = np.moveaxis(np.asarray(values, dtype=complex), axis, -1)
    n = v.shape[-1] - 1
    if n < 2:
        raise ValueError("need at least three samples")
    mu = np.asarray(mu, dtype=complex)

    w0, w1, w2 = _quadratic_weights(*_moments(mu * (2.0 * h), 2.0 * h), h)
    pairs = n // 2
    leftover = n - 2 * pairs
    starts = 2.0 * h * np.arange(pairs)
    kernel = np.exp(-mu[..., None] * starts)
    total = (kernel * (w0[..., None] * v[..., 0:2 * pairs - 1:2]
                       + w1[..., None] * v[..., 1:2 * pairs:2]
                       + w2[..., None] * v[..., 2:2 * pairs + 1:2])).sum(axis=-1)
    if leftover:
        # Last interval [y_{n-1}, y_n]: quadratic through the last three
        # nodes, moments of the segment [h, 2h] in local coordinates.
        t0, t1, t2 = _segment_weights(mu, h, "tail")
        base = np.exp(-mu * ((n - 2) * h))
        total = total + base * (t0 * v[..., n - 2] + t1 * v[..., n - 1]
                                + t2 * v[..., n])
    return total


def _segment_weights(mu, h: float, part: str):
    if part == "head":
        return _quadratic_weights(*_moments(mu * h, h), h)
    if part == "tail":
        a = _moments(mu * h, h)
        b = _moments(mu * (2.0 * h), 2.0 * h)
        return _quadratic_weights(b[0] - a[0], b[1] - a[1], b[2] - a[2], h)
    raise ValueError("part must be 'head' or 'tail'")


def exp_weighted_segment(f0, f1, f2, h: float, mu, part: str):
    """integral of exp(-mu*u)*q(u) over [0, h] ("head") or [h, 2h] ("tail"),

    q being the quadratic through the samples (f0, f1, f2) at u = 0, h, 2h.
    """
    w0, w1, w2 = _segment_weights(np.asarray(mu, dtype=complex), h, part)
    return w0 * f0 + w1 * f1 + w2 * f2
