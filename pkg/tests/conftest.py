import numpy as np
import pytest

from vortexfront import FieldGrid, Frequency, GridSpec, Medium


def bump(u):
    """C-infinity bump supported on |u| < 1, value 1 at the center."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    m = np.abs(u) < 1.0
    out[m] = np.exp(1.0 - 1.0 / (1.0 - u[m] ** 2))
    return out


def bisect_real(fn, lo, hi, iters=120):
    """Plain bisection on a sign change of a real function (the root oracle)."""
    flo, fhi = fn(lo), fn(hi)
    assert flo * fhi < 0, "root is not bracketed"
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def smooth_field(n_t=64, n_x1=64, n_x2=192, L_t=1.0, L_x1=1.0, L_x2=2.0,
                 y_width=0.2, gamma=1.0, s=0.0, minus_scale=0.7):
    """Smooth compactly supported two-sided forcing fixture.

    Support in t and x1 is [0.1, 0.5] (width of half the box); the x2
    profile is a one-sided bump of the given width, concentrated near the
    boundary so the estimate sweep exercises both sides of the exponential
    crossover.
    """
    grid = GridSpec(n_t, n_x1, n_x2, L_t, L_x1, L_x2, gamma=gamma, s=s)
    t, x1, y = grid.t_nodes, grid.x1_nodes, grid.x2_nodes
    fp = (bump((t - 0.3) / 0.2)[:, None, None]
          * bump((x1 - 0.3) / 0.2)[None, :, None]
          * bump(y / y_width)[None, None, :])
    fm = (minus_scale * bump((t - 0.32) / 0.18)[:, None, None]
          * bump((x1 - 0.28) / 0.17)[None, :, None]
          * bump(y / (0.8 * y_width))[None, None, :])
    return FieldGrid(fp, fm, grid)


def exp_oracle_field(n_x2, L_x2=15.0, n_t=8, n_x1=4):
    """Separable field whose transformed slices are exactly A * exp(-y)."""
    grid = GridSpec(n_t, n_x1, n_x2, L_t=2.0, L_x1=1.0, L_x2=L_x2, gamma=1.0)
    t, y = grid.t_nodes, grid.x2_nodes
    g = 1.0 + np.cos(2.0 * np.pi * t / grid.L_t)
    fp = (g[:, None, None] * np.ones((1, grid.n_x1, 1))
          * np.exp(-y)[None, None, :])
    return FieldGrid(fp, np.zeros_like(fp), grid)


@pytest.fixture(scope="session")
def weakly_stable():
    return Medium.symmetric(2.0, 1.0)


@pytest.fixture(scope="session")
def fixture_field():
    return smooth_field()


@pytest.fixture(scope="session")
def fixture_solution(fixture_field, weakly_stable):
    from vortexfront import solve_front
    return solve_front(fixture_field, weakly_stable)


def freq(gamma, delta, eta):
    return Frequency(gamma, delta, eta)
