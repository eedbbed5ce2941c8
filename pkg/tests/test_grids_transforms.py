import math

import numpy as np
import pytest

import vortexfront as vf
from vortexfront import FieldGrid, GridSpec
from vortexfront.quadrature import (exp_weighted_integral, exp_weighted_segment,
                                    extrapolate_origin, simpson_closed)

from conftest import bump, smooth_field


def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec(12, 16, 32, 1.0, 1.0, 1.0)  # n_t not a power of two
    with pytest.raises(ValueError):
        GridSpec(16, 16, 8, 1.0, 1.0, 1.0)   # n_x2 too small
    with pytest.raises(ValueError):
        GridSpec(16, 16, 32, 1.0, 1.0, 1.0, gamma=0.5)
    g = GridSpec(16, 8, 32, 2.0, 1.0, 4.0)
    assert g.dt == 0.125 and g.dx2 == 0.125
    assert g.x2_nodes[0] == g.dx2 and g.x2_nodes[-1] == g.L_x2


def test_suggested_depth():
    L = vf.suggested_depth(1.0, 1.0)
    assert math.exp(-L / math.sqrt(2.0)) <= 1e-10 * (1 + 1e-12)
    assert vf.suggested_depth(2.0, 1.0) == pytest.approx(L / 2.0)


def test_fieldgrid_decay_invariant():
    grid = GridSpec(16, 8, 32, 1.0, 1.0, 2.0)
    ok = np.zeros((16, 8, 32))
    ok[:, :, 0] = 1.0
    FieldGrid(ok, np.zeros_like(ok), grid)  # decayed: last slab is zero
    bad = np.ones((16, 8, 32))
    with pytest.raises(ValueError, match="decayed"):
        FieldGrid(bad, np.zeros_like(bad), grid)
    with pytest.raises(ValueError, match="finite"):
        nan = ok.copy()
        nan[0, 0, 0] = math.nan
        FieldGrid(nan, np.zeros_like(ok), grid)


def test_vfgrid_round_trip(tmp_path):
    field = smooth_field(n_t=16, n_x1=8, n_x2=24)
    path = tmp_path / "f.vfgrid"
    vf.write_field(path, field)
    back = vf.read_field(path, gamma=1.0, s=0.0)
    assert back.grid == field.grid
    np.testing.assert_array_equal(back.f_plus, field.f_plus)
    np.testing.assert_array_equal(back.f_minus, field.f_minus)
    # byte-identical rewrite (determinism)
    path2 = tmp_path / "g.vfgrid"
    vf.write_field(path2, back)
    assert path.read_bytes() == path2.read_bytes()


def test_vfgrid_rejects_malformed(tmp_path):
    path = tmp_path / "bad.vfgrid"
    path.write_text("NOTAGRID 1 2 3 4 5 6 7\n")
    with pytest.raises(ValueError):
        vf.read_field(path)
    path.write_text("VFGRID 1 16 8 24 1.0 1.0 2.0\n0.0 0.0\n")
    with pytest.raises(ValueError):
        vf.read_field(path)


# ---------------------------------------------------------------------------
# weighted transforms

def test_weighted_forward_zero_and_cosine():
    grid = GridSpec(32, 16, 32, 2.0, 1.0, 2.0)
    zero = np.zeros((32, 16))
    assert np.all(vf.weighted_forward(zero, grid, 0.0) == 0.0)
    t = grid.t_nodes
    u = np.cos(2.0 * np.pi * t / grid.L_t)[:, None] * np.ones((1, 16))
    spec = vf.weighted_forward(u, grid, 0.0)
    mags = np.abs(spec)
    nz = np.argwhere(mags > 1e-10 * mags.max())
    assert sorted(map(tuple, nz)) == [(1, 0), (31, 0)]


def test_weighted_round_trip():
    rng = np.random.default_rng(41)
    grid = GridSpec(32, 16, 32, 2.0, 1.5, 2.0)
    u = rng.standard_normal((32, 16))
    for gamma in (0.0, 1.0, 3.0):
        back = vf.weighted_inverse(vf.weighted_forward(u, grid, gamma), grid, gamma)
        assert np.max(np.abs(back - u)) <= 1e-12 * np.max(np.abs(u))


def test_sobolev_norm_single_bin_and_plancherel():
    grid = GridSpec(16, 16, 32, 2.0, 1.0, 2.0)
    gamma = 2.0
    f_hat = np.zeros((16, 16), dtype=complex)
    amp = 3.0 - 1.0j
    f_hat[2, 5] = amp
    delta = grid.delta_axis[2]
    eta = grid.eta_axis[5]
    for s in (-1.0, 0.0, 1.5):
        lam2 = gamma ** 2 + delta ** 2 + eta ** 2
        expected = math.sqrt(lam2 ** s * abs(amp) ** 2 / (grid.L_t * grid.L_x1))
        assert vf.sobolev_norm(f_hat, s, gamma, grid) == pytest.approx(expected, rel=1e-13)
    assert vf.sobolev_norm(np.zeros((16, 16)), 1.0, gamma, grid) == 0.0
    # s = 0 equals the weighted time-domain L2 sum (Plancherel)
    rng = np.random.default_rng(43)
    u = rng.standard_normal((16, 16))
    spec = vf.weighted_forward(u, grid, gamma)
    n0 = vf.sobolev_norm(spec, 0.0, gamma, grid)
    w = np.exp(-gamma * grid.t_nodes)[:, None]
    direct = math.sqrt(np.sum((u * w) ** 2) * grid.dt * grid.dx1)
    assert n0 == pytest.approx(direct, rel=1e-12)


def test_sobolev_norm_monotone_in_s():
    grid = GridSpec(16, 16, 32, 2.0, 1.0, 2.0)
    rng = np.random.default_rng(47)
    f_hat = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    norms = [vf.sobolev_norm(f_hat, s, 1.0, grid) for s in (-1.0, 0.0, 1.0, 2.0)]
    assert norms == sorted(norms)  # Lambda^2 >= gamma^2 = 1 on every bin


def test_halfspace_norm_separable_oracle():
    # F = g(t, x1) * exp(-y): squared norm integrates to ||g||^2 / 2
    grid = GridSpec(16, 8, 256, 2.0, 1.0, 16.0)
    rng = np.random.default_rng(53)
    gfun = rng.standard_normal((16, 8))
    y = grid.x2_nodes
    field = gfun[:, :, None] * np.exp(-y)[None, None, :]
    gamma, s = 1.5, 0.7
    spec = vf.weighted_forward(gfun, grid, gamma)
    slice_norm = vf.sobolev_norm(spec, s, gamma, grid)
    expected = slice_norm * math.sqrt(0.5)
    got = vf.halfspace_norm(field, grid, s, gamma)
    assert got == pytest.approx(expected, rel=1e-6)


# ---------------------------------------------------------------------------
# quadrature building blocks

def test_extrapolate_origin_polynomial_exact():
    h = 0.1
    y = np.arange(1, 8) * h
    for coeffs in ([1.0], [0.0, 2.0], [1, -1, 3, 0.5, 0.25]):  # degree <= 4
        vals = np.polyval(coeffs[::-1], y)
        got = extrapolate_origin(vals)
        assert got == pytest.approx(coeffs[0], abs=1e-12)


def test_simpson_closed_cubic_exact_and_odd():
    h = 0.125
    for n in (8, 9):
        y = np.arange(n + 1) * h
        vals = y ** 3 - 2 * y ** 2 + y - 0.5
        L = n * h
        exact = L ** 4 / 4 - 2 * L ** 3 / 3 + L ** 2 / 2 - 0.5 * L
        assert simpson_closed(vals, h) == pytest.approx(exact, rel=1e-13)


def test_exp_weighted_integral_quadratic_exact():
    # the rule integrates exp(-mu y) * (quadratic) exactly, any mu
    import cmath
    h = 0.05
    n = 40
    y = np.arange(n + 1) * h
    L = n * h
    for mu in (0.5, 3.0 + 2.0j, 1e-7, 80.0):
        muc = complex(mu)
        e = cmath.exp(-muc * L)
        exact = ((1 - e) / muc
                 - 2.0 * (1 - e * (1 + muc * L)) / muc ** 2
                 + 0.25 * (2 - e * (2 + 2 * muc * L + (muc * L) ** 2)) / muc ** 3)
        vals = 1.0 - 2.0 * y + 0.25 * y * y
        got = complex(exp_weighted_integral(vals, h, np.asarray(muc)))
        if abs(muc) < 1e-4:
            # closed-form reference itself cancels badly for tiny mu
            plain = simpson_closed(vals * np.exp(-muc.real * y), h)
            assert abs(got - plain) <= 1e-10 * abs(plain)
        else:
            assert abs(got - exact) <= 5e-14 * abs(exact)


def test_exp_weighted_integral_order_four():
    import cmath
    errs = {}
    mu = 1.0 + 0.0j
    for n in (16, 32, 64, 128):
        h = 1.0 / n
        y = np.arange(n + 1) * h
        vals = np.exp(-y)
        exact = (1 - cmath.exp(-(mu + 1))) / (mu + 1)
        errs[n] = abs(complex(exp_weighted_integral(vals, h, np.asarray(mu))) - exact)
    orders = [math.log2(errs[a] / errs[b])
              for a, b in zip((16, 32, 64), (32, 64, 128))]
    assert min(orders) > 3.5


def test_exp_weighted_segment_head_tail():
    import cmath
    h = 0.2
    mu = 1.3 - 0.4j
    f = lambda u: 2.0 + u - 0.5 * u * u
    samples = (f(0.0), f(h), f(2 * h))
    head = complex(exp_weighted_segment(*samples, h, mu, "head"))
    tail = complex(exp_weighted_segment(*samples, h, mu, "tail"))
    import mpmath as mp
    ref_head = complex(mp.quad(lambda u: mp.e ** (-mp.mpc(mu) * u) * f(u), [0, h]))
    ref_tail = complex(mp.quad(lambda u: mp.e ** (-mp.mpc(mu) * u) * f(u), [h, 2 * h]))
    assert abs(head - ref_head) <= 1e-13 * abs(ref_head)
    assert abs(tail - ref_tail) <= 1e-13 * abs(ref_tail)


def test_bump_is_supported_and_smooth():
    u = np.linspace(-2, 2, 101)
    b = bump(u)
    assert np.all(b[np.abs(u) >= 1.0] == 0.0)
    assert b[50] == pytest.approx(1.0)
