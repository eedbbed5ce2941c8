"""Spectral solution of the front equation and the energy-estimate checks.

At every (delta, eta) bin with tau = gamma + i*delta, gamma >= 1, the front
transform solves

    Sigma * f_hat + (mu_plus*mu_minus/(mu_plus + mu_minus)) * M = 0,

where M collects the exponentially weighted half-space forcing integrals.
Division by Sigma is safe in the weakly stable regime because its zeros sit
on Re(tau) = 0 only.  Per-bin work is independent (no shared state), so the
arrays may be filled concurrently; the transforms are the only sequential
barriers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .domain import Frequency, Medium, RegimeError, StabilityClass
from .grids import FieldGrid, GridSpec
from .quadrature import exp_weighted_integral, extrapolate_origin
from .symbol import classify, mu_grid, symbol_grid
from .transforms import halfspace_norm, sobolev_norm, spectral_slices

__all__ = [
    "MValue", "SpectralSystem", "FrontSolution", "EstimateConstants",
    "EstimateRow", "EstimateReport", "ProbeResult", "halfline_integral",
    "forcing_functional", "build_system", "solve_front", "estimate_constants",
    "verify_estimate", "blowup_probe",
]


def halfline_integral(slice_values: np.ndarray, mu: np.ndarray,
                      dx2: float) -> np.ndarray:
    """integral_0^{L_x2} exp(-mu*y) f(y) dy from samples at the stored nodes.

    The missing origin sample is supplied by extrapolation; the exponential
    factor is integrated exactly (order 4 in the forcing smoothness).
    """
    vals = np.asarray(slice_values, dtype=complex)
    full = np.concatenate((extrapolate_origin(vals)[..., None], vals), axis=-1)
    return exp_weighted_integral(full, dx2, mu)


@dataclass(frozen=True)
class MValue:
    """A forcing-functional value with its truncation-error bound."""

    value: complex
    truncation_bound: float


@dataclass
class SpectralSystem:
    """All per-bin quantities of one weighted solve."""

    grid: GridSpec
    gamma: float
    mu_plus: np.ndarray
    mu_minus: np.ndarray
    sigma: np.ndarray
    i_plus: np.ndarray
    i_minus: np.ndarray
    m: np.ndarray
    g_hat: np.ndarray
    trunc_plus: np.ndarray
    trunc_minus: np.ndarray


def build_system(fieldgrid: FieldGrid, medium: Medium,
                 gamma: float | None = None) -> SpectralSystem:
    """Transform the forcing and assemble mu, Sigma, I+-, M and g per bin.

    The unpaired Nyquist rows of the transform are annihilated: those bins
    have no conjugate partner on the grid, so keeping them would leave the
    solved spectrum non-Hermitian.  The discrete forcing is in effect
    band-limited to the paired modes.
    """
    grid = fieldgrid.grid
    g = grid.gamma if gamma is None else gamma
    if g < 1.0:
        raise ValueError("the solver requires gamma >= 1")
    tau = g + 1j * grid.delta_axis[:, None]
    eta = grid.eta_axis[None, :]
    mu_p = mu_grid(tau, eta, medium.v1_plus, medium.c)
    mu_m = mu_grid(tau, eta, medium.v1_minus, medium.c)
    sigma = symbol_grid(tau, eta, medium)
    sp, sm = spectral_slices(fieldgrid, g)
    for arr in (sp, sm):
        arr[grid.n_t // 2, :, :] = 0.0
        arr[:, grid.n_x1 // 2, :] = 0.0
    i_p = halfline_integral(sp, mu_p, grid.dx2)
    i_m = halfline_integral(sm, mu_m, grid.dx2)
    m = i_p / mu_p - i_m / mu_m
    g_hat = -(mu_p * mu_m / (mu_p + mu_m)) * m
    trunc_p = np.exp(-mu_p.real * grid.L_x2) * np.abs(sp[:, :, -1])
    trunc_m = np.exp(-mu_m.real * grid.L_x2) * np.abs(sm[:, :, -1])
    return SpectralSystem(grid, g, mu_p, mu_m, sigma, i_p, i_m, m, g_hat,
                          trunc_p, trunc_m)


def _bin_index(axis: np.ndarray, value: float, name: str) -> int:
    spacing = abs(axis[1] - axis[0]) if axis.size > 1 else 1.0
    idx = int(np.argmin(np.abs(axis - value)))
    if abs(axis[idx] - value) > 1e-9 * max(abs(value), spacing):
        raise ValueError(f"{name} = {value:g} is not a grid frequency "
                         f"(nearest bin {axis[idx]:g})")
    return idx


def forcing_functional(fieldgrid: FieldGrid, freq: Frequency,
                       medium: Medium) -> MValue:
    """The functional M at one grid frequency, with its truncation bound.

    freq.gamma >= 1 is required so both forcing integrals converge; freq's
    (delta, eta) must coincide with a transform bin of the field's grid.
    """
    if freq.gamma < 1.0:
        raise ValueError("forcing_functional requires gamma >= 1")
    grid = fieldgrid.grid
    it = _bin_index(grid.delta_axis, freq.delta, "delta")
    ix = _bin_index(grid.eta_axis, freq.eta, "eta")
    sys = build_system(fieldgrid, medium, freq.gamma)
    assert sys.mu_plus[it, ix].real > 0 and sys.mu_minus[it, ix].real > 0
    bound = float(sys.trunc_plus[it, ix] + sys.trunc_minus[it, ix])
    return MValue(complex(sys.m[it, ix]), bound)


@dataclass
class FrontSolution:
    """Transformed and physical front samples together with their norms."""

    grid: GridSpec
    gamma: float
    s: float
    f_hat: np.ndarray
    f_phys: np.ndarray
    norms: dict[float, float]
    imag_residual: float
    system: SpectralSystem = field(repr=False)

    def norm(self, s: float) -> float:
        return sobolev_norm(self.f_hat, s, self.gamma, self.grid)


def solve_front(fieldgrid: FieldGrid, medium: Medium,
                gamma: float | None = None, s: float | None = None
                ) -> FrontSolution:
    """Solve the front equation for a forcing field by symbol division.

    Only the weakly stable regime is accepted; elliptic and transition media
    are refused with a diagnostic naming the regime.  f_hat holds the exact
    per-bin quotient (so each bin satisfies its equation to rounding); the
    physical samples come from the Hermitian part of the spectrum, i.e. the
    real part of the inverse transform, whose discarded imaginary part is
    recorded as imag_residual.  Norms are returned at indices {0, s, s+1}.
    """
    report = classify(medium)
    if report.stability_class is not StabilityClass.WEAKLY_STABLE:
        raise RegimeError(
            report.stability_class.value,
            f"solve_front requires the weakly stable regime (v/c > sqrt(2)); "
            f"medium is {report.stability_class.value} "
            f"(v/c = {report.mach_ratio:g})")
    grid = fieldgrid.grid
    g = grid.gamma if gamma is None else gamma
    s_index = grid.s if s is None else s
    sys = build_system(fieldgrid, medium, g)
    if not np.all(np.abs(sys.sigma) > 0.0):
        raise ArithmeticError("symbol vanished on a grid bin; this cannot "
                              "happen for gamma >= 1 in the weakly stable regime")
    f_hat = sys.g_hat / sys.sigma
    u = np.fft.ifft2(f_hat / (grid.dt * grid.dx1), axes=(0, 1))
    scale = float(np.max(np.abs(u.real)))
    imag_residual = float(np.max(np.abs(u.imag))) / scale if scale > 0 else 0.0
    f_phys = u.real * np.exp(g * grid.t_nodes)[:, None]
    norms = {}
    for idx in {0.0, float(s_index), float(s_index) + 1.0}:
        norms[idx] = sobolev_norm(f_hat, idx, g, grid)
    return FrontSolution(grid, g, float(s_index), f_hat, f_phys, norms,
                         imag_residual, sys)


# ---------------------------------------------------------------------------
# Estimate verification.

@dataclass(frozen=True)
class EstimateConstants:
    """Empirical symbol constants over the unit hemisphere sample.

    c_elliptic: min |Sigma|/Lambda^2 away from the root rays.
    c_cofactor: min |H|/Lambda near the root rays.
    c_pointwise: lower bound for (|Sigma|/(gamma*Lambda))^2, the constant of
    the pointwise inequality C*gamma^2*Lambda^2*|f_hat|^2 <= |g_hat|^2.
    c_bound: max |Sigma|/Lambda^2 (the degree-2 growth constant).
    """

    c_elliptic: float
    c_cofactor: float
    c_pointwise: float
    c_bound: float


def _hemisphere_points(n_polar: int = 120, n_azimuth: int = 240
                       ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    psi = (np.arange(n_polar) + 0.5) * (0.5 * np.pi / n_polar)
    theta = (np.arange(n_azimuth) + 0.5) * (2.0 * np.pi / n_azimuth)
    g = np.cos(psi)[:, None] * np.ones_like(theta)[None, :]
    d = (np.sin(psi)[:, None] * np.cos(theta)[None, :])
    e = (np.sin(psi)[:, None] * np.sin(theta)[None, :])
    return g.ravel(), d.ravel(), e.ravel()


def estimate_constants(medium: Medium,
                       extra_points: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None,
                       n_polar: int = 120, n_azimuth: int = 240,
                       ray_radius: float = 0.3) -> EstimateConstants:
    """Sample the hemisphere (plus optional points) for the estimate constants.

    extra_points, given as (gamma, delta, eta) arrays, are projected onto
    the hemisphere and included in the extrema, so constants derived from a
    solve's own bins are honest lower/upper bounds for those bins.
    """
    report = classify(medium)
    g, d, e = _hemisphere_points(n_polar, n_azimuth)
    if extra_points is not None:
        ge, de, ee = (np.asarray(a, dtype=float).ravel() for a in extra_points)
        lam = np.sqrt(ge * ge + de * de + ee * ee)
        g = np.concatenate((g, ge / lam))
        d = np.concatenate((d, de / lam))
        e = np.concatenate((e, ee / lam))
    keep = g > 0.0
    g, d, e = g[keep], d[keep], e[keep]
    tau = g + 1j * d
    sigma = symbol_grid(tau, e, medium)
    abs_sigma = np.abs(sigma)
    c_bound = float(abs_sigma.max())
    c_pointwise = float(((abs_sigma / g) ** 2).min()) * (1.0 - 1e-9)
    if report.stability_class is StabilityClass.WEAKLY_STABLE:
        c, y2 = medium.c, report.y2
        dist = np.minimum(np.abs(tau - 1j * c * y2 * e),
                          np.abs(tau + 1j * c * y2 * e))
        near = dist < ray_radius
        c_elliptic = float(abs_sigma[~near].min())
        sign = np.where(np.abs(tau - 1j * c * y2 * e)
                        <= np.abs(tau + 1j * c * y2 * e), 1.0, -1.0)
        cof = np.abs(sigma[near] / (tau[near] - sign[near] * 1j * c * y2 * e[near]))
        c_cofactor = float(cof.min()) if near.any() else math.inf
    else:
        c_elliptic = float(abs_sigma.min())
        c_cofactor = math.inf
    return EstimateConstants(c_elliptic, c_cofactor, c_pointwise, c_bound)


@dataclass(frozen=True)
class EstimateRow:
    """One gamma of the estimate sweep.

    r        = gamma^3 ||f||^2_{s+1} / (||F+||^2 + ||F-||^2)
    r_prime  = gamma^2 ||f||^2_{s+1} / ||g||^2_s
    g1_ratio = gamma   ||g1||^2_s    / ||F+||^2
    pointwise_min is the bin minimum of (|Sigma|/(gamma*Lambda))^2, to be
    compared against the hemisphere constant c_pointwise.
    """

    gamma: float
    r: float
    r_prime: float
    g1_ratio: float
    pointwise_min: float
    pointwise_ok: bool
    norm_f: float
    norm_g: float


@dataclass
class EstimateReport:
    rows: list[EstimateRow]
    constants: EstimateConstants
    ratio_sup_sq: float  # max over bins of |mu_minus/(mu_plus+mu_minus)|^2
    rhs_constant: float  # ratio_sup_sq * sqrt(2)*c/2, bounds g1_ratio
    norm_f_plus: dict[float, float]
    norm_f_minus: dict[float, float]


def verify_estimate(fieldgrid: FieldGrid, medium: Medium,
                    gammas: list[float], s: float) -> EstimateReport:
    """Sweep gamma and tabulate the a priori estimate ratios.

    The pointwise constant is estimated over the hemisphere augmented with
    every bin of the sweep; the right-hand-side constant comes from the bin
    supremum of |mu_minus/(mu_plus+mu_minus)|^2 combined with the exact
    lower bound Re(mu_plus) >= gamma/(sqrt(2)c).
    """
    if not gammas:
        raise ValueError("need at least one gamma")
    if any(g < 1.0 for g in gammas):
        raise ValueError("estimate sweep requires gamma >= 1")
    report = classify(medium)
    if report.stability_class is not StabilityClass.WEAKLY_STABLE:
        raise RegimeError(report.stability_class.value,
                          "the a priori estimate holds only in the weakly "
                          "stable regime")
    grid = fieldgrid.grid
    if float(np.max(np.abs(fieldgrid.f_plus))) == 0.0 and \
            float(np.max(np.abs(fieldgrid.f_minus))) == 0.0:
        raise ValueError("estimate ratios are undefined for a zero field")

    delta = grid.delta_axis[:, None]
    eta_b = grid.eta_axis[None, :]
    bins_g, bins_d, bins_e = [], [], []
    for g in gammas:
        bins_g.append(np.full(grid.n_t * grid.n_x1, float(g)))
        bins_d.append(np.broadcast_to(delta, (grid.n_t, grid.n_x1)).ravel())
        bins_e.append(np.broadcast_to(eta_b, (grid.n_t, grid.n_x1)).ravel())
    extra = (np.concatenate(bins_g), np.concatenate(bins_d), np.concatenate(bins_e))
    constants = estimate_constants(medium, extra_points=extra)

    rows = []
    norms_p: dict[float, float] = {}
    norms_m: dict[float, float] = {}
    ratio_sup_sq = 0.0
    for g in gammas:
        sol = solve_front(fieldgrid, medium, gamma=g, s=s)
        sys = sol.system
        lam2 = grid.lambda_sq(g)
        nf2 = sol.norms[s + 1.0] ** 2
        ng = sobolev_norm(sys.g_hat, s, g, grid)
        nfp = halfspace_norm(fieldgrid.f_plus, grid, s, g)
        nfm = halfspace_norm(fieldgrid.f_minus, grid, s, g)
        norms_p[float(g)], norms_m[float(g)] = nfp, nfm
        denom = nfp ** 2 + nfm ** 2
        r = g ** 3 * nf2 / denom
        r_prime = g ** 2 * nf2 / ng ** 2 if ng > 0 else 0.0
        g1_hat = -(sys.mu_minus / (sys.mu_plus + sys.mu_minus)) * sys.i_plus
        ng1 = sobolev_norm(g1_hat, s, g, grid)
        g1_ratio = g * ng1 ** 2 / nfp ** 2 if nfp > 0 else 0.0
        pw = (np.abs(sys.sigma) / (g * np.sqrt(lam2))) ** 2
        pw_min = float(pw.min())
        ratio_sup_sq = max(ratio_sup_sq, float(
            (np.abs(sys.mu_minus / (sys.mu_plus + sys.mu_minus)) ** 2).max()))
        rows.append(EstimateRow(
            gamma=float(g), r=float(r), r_prime=float(r_prime),
            g1_ratio=float(g1_ratio), pointwise_min=pw_min,
            pointwise_ok=bool(pw_min >= constants.c_pointwise),
            norm_f=float(math.sqrt(nf2)), norm_g=float(ng)))
    rhs_constant = ratio_sup_sq * math.sqrt(2.0) * medium.c / 2.0
    return EstimateReport(rows, constants, ratio_sup_sq, rhs_constant,
                          norms_p, norms_m)


# ---------------------------------------------------------------------------
# Ill-posedness probe.

@dataclass
class ProbeResult:
    """|1/Sigma| along the real tau axis approaching the unstable root."""

    eta: float
    root_gamma: float
    gammas: list[float]
    inv_abs_sigma: list[float]
    fitted_exponent: float


def blowup_probe(medium: Medium, eta0: float, gammas: list[float]) -> ProbeResult:
    """Probe the simple real-axis symbol zero of an elliptic-regime medium.

    Evaluates |1/Sigma(gamma + 0i, eta0)| for each gamma and fits the
    power-law exponent of the growth in gamma - c*Y1*|eta0| (expected -1,
    the zero being simple).  Refused in the weakly stable regime.
    """
    report = classify(medium)
    if report.stability_class is not StabilityClass.ELLIPTIC_UNSTABLE:
        raise RegimeError(report.stability_class.value,
                          "blowup probe applies to the elliptic (unstable) "
                          "regime v/c < sqrt(2) only")
    if eta0 == 0.0:
        raise ValueError("eta0 must be nonzero")
    if not gammas:
        raise ValueError("need at least one gamma")
    root_gamma = medium.c * report.y1 * abs(eta0)
    tau = np.asarray([complex(g, 0.0) for g in gammas])
    eta = np.full(len(gammas), float(eta0))
    sigma = symbol_grid(tau, eta, medium)
    inv = 1.0 / np.abs(sigma)
    dist = np.asarray(gammas, dtype=float) - root_gamma
    fit_mask = dist > 0.0
    if fit_mask.sum() >= 2:
        x = np.log(dist[fit_mask])
        y = np.log(inv[fit_mask])
        slope = float(np.polyfit(x, y, 1)[0])
    else:
        slope = math.nan
    return ProbeResult(float(eta0), float(root_gamma), [float(g) for g in gammas],
                       [float(v) for v in inv], slope)
