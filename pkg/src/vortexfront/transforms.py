"""Weighted Fourier transforms and the weighted Sobolev norms."""

from __future__ import annotations

import numpy as np

from .grids import FieldGrid, GridSpec
from .quadrature import extrapolate_origin, simpson_closed

__all__ = ["weighted_forward", "weighted_inverse", "sobolev_norm",
           "halfspace_norm", "spectral_slices"]


def _weight(grid: GridSpec, gamma: float) -> np.ndarray:
    return np.exp(-gamma * grid.t_nodes)


def weighted_forward(samples: np.ndarray, grid: GridSpec,
                     gamma: float | None = None) -> np.ndarray:
    """Multiply by exp(-gamma*t) and Fourier transform in (t, x1).

    Accepts a (n_t, n_x1) plane or a (n_t, n_x1, n_levels) stack; the
    transform acts on the first two axes.  Normalized by dt*dx1 so the bins
    approximate the continuous transform of the weighted field.
    """
    g = grid.gamma if gamma is None else gamma
    samples = np.asarray(samples)
    if samples.shape[:2] != (grid.n_t, grid.n_x1):
        raise ValueError(f"samples shape {samples.shape} does not start with "
                         f"({grid.n_t}, {grid.n_x1})")
    w = _weight(grid, g).reshape((grid.n_t,) + (1,) * (samples.ndim - 1))
    return np.fft.fft2(samples * w, axes=(0, 1)) * (grid.dt * grid.dx1)


def weighted_inverse(spectrum: np.ndarray, grid: GridSpec,
                     gamma: float | None = None) -> np.ndarray:
    """Inverse of :func:`weighted_forward`; returns the real part."""
    g = grid.gamma if gamma is None else gamma
    spectrum = np.asarray(spectrum, dtype=complex)
    if spectrum.shape[:2] != (grid.n_t, grid.n_x1):
        raise ValueError(f"spectrum shape {spectrum.shape} does not start with "
                         f"({grid.n_t}, {grid.n_x1})")
    u = np.fft.ifft2(spectrum / (grid.dt * grid.dx1), axes=(0, 1))
    w = np.exp(g * grid.t_nodes).reshape((grid.n_t,) + (1,) * (spectrum.ndim - 1))
    return (u * w).real


def sobolev_norm(f_hat: np.ndarray, s: float, gamma: float,
                 grid: GridSpec) -> float:
    """Weighted Sobolev norm of index s from a transformed plane.

    Discrete form of (1/(2*pi)^2) * double-integral of
    (gamma^2 + delta^2 + eta^2)^s |f_hat|^2; with s = 0 this is the
    discrete Plancherel L^2 norm.
    """
    f_hat = np.asarray(f_hat)
    lam2 = grid.lambda_sq(gamma)
    density = np.abs(f_hat) ** 2 if s == 0 else lam2 ** s * np.abs(f_hat) ** 2
    return float(np.sqrt(density.sum() / (grid.L_t * grid.L_x1)))


def spectral_slices(field: FieldGrid, gamma: float | None = None
                    ) -> tuple[np.ndarray, np.ndarray]:
    """Transformed forcing slices at every stored x2 level."""
    return (weighted_forward(field.f_plus, field.grid, gamma),
            weighted_forward(field.f_minus, field.grid, gamma))


def halfspace_norm(samples: np.ndarray, grid: GridSpec, s: float,
                   gamma: float) -> float:
    """L^2-in-x2 norm of the per-slice Sobolev norms of one forcing side.

    The x2 integral runs over [0, L_x2] with the origin slice value
    extrapolated from the stored nodes.
    """
    spec = weighted_forward(samples, grid, gamma)
    lam2 = grid.lambda_sq(gamma)
    per_level = (lam2[:, :, None] ** s * np.abs(spec) ** 2
                 ).sum(axis=(0, 1)) / (grid.L_t * grid.L_x1)
    full = np.concatenate(([extrapolate_origin(per_level)], per_level))
    return float(np.sqrt(simpson_closed(full, grid.dx2)))
