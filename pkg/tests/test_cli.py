import json
import math

import numpy as np
import pytest

import vortexfront as vf
from vortexfront.cli import main

from conftest import smooth_field


@pytest.fixture(scope="module")
def field_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "field.vfgrid"
    vf.write_field(path, smooth_field(n_t=16, n_x1=8, n_x2=24))
    return str(path)


def run(capsys, args):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_weakly_stable(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, ["classify", "--v", "2", "--c", "1",
                                "--out", str(out_path)])
    assert code == 0
    assert "stability_class: weakly_stable" in out
    assert "mach_class: supersonic" in out
    assert "Y2: 0.936426384924" in out          # 12 significant digits
    payload = json.loads(out_path.read_text())
    assert payload["Y1"] is None
    assert payload["Y2"] == pytest.approx(0.936426, abs=5e-7)


def test_classify_elliptic(capsys):
    code, out, _ = run(capsys, ["classify", "--v", "1", "--c", "1"])
    assert code == 0
    assert "stability_class: elliptic_unstable" in out
    assert "Y1: 0.485868271757" in out


def test_classify_invalid_params(capsys):
    code, _, err = run(capsys, ["classify", "--v", "0", "--c", "1"])
    assert code == 2
    assert "error" in err


def test_grid_single_point_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["grid", "--v", "2", "--c", "1", "--window",
            "0:1:2,-1:1:3,0.5:1:2"]
    code, _, _ = run(capsys, args + ["--out", str(a)])
    assert code == 0
    run(capsys, args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()     # byte-identical reruns
    lines = a.read_text().splitlines()
    assert lines[0] == ("gamma,delta,eta,re_sigma,im_sigma,abs_sigma,"
                        "re_mu_plus,im_mu_plus,re_mu_minus,im_mu_minus")
    assert len(lines) == 1 + 2 * 3 * 2          # product of the counts
    # one-point window at (1, 0, 0): Sigma = tau^2 = 1
    code, out, _ = run(capsys, ["grid", "--v", "2", "--c", "1",
                                "--window", "1:1:1,0:0:1,0:0:1"])
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert float(row[5]) == 1.0                 # abs_sigma
    # row order: gamma outer, delta middle, eta inner
    vals = [line.split(",")[:3] for line in lines[1:]]
    gammas = [float(v[0]) for v in vals]
    assert gammas == sorted(gammas)


def test_grid_rejects_origin(capsys):
    code, _, err = run(capsys, ["grid", "--v", "2", "--c", "1",
                                "--window", "0:0:1,0:0:1,0:0:1"])
    assert code == 2
    assert "origin" in err


def test_roots_output(capsys):
    code, out, _ = run(capsys, ["roots", "--v", "2", "--c", "1", "--eta", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["regime"] == "weakly_stable"
    assert payload["roots_im"] == pytest.approx([0.936426384924271,
                                                 -0.936426384924271], abs=1e-12)
    assert max(payload["abs_sigma_at_roots"]) <= 1e-10
    code, out, _ = run(capsys, ["roots", "--v", "1", "--c", "1", "--eta", "-3"])
    payload = json.loads(out)
    assert payload["roots_re"] == pytest.approx([3 * 0.485868271756646], rel=1e-12)
    code, _, _ = run(capsys, ["roots", "--v", str(math.sqrt(2)), "--c", "1",
                              "--eta", "1"])
    assert code == 3                            # degenerate transition regime


def test_solve_outputs(capsys, tmp_path, field_file):
    outdir = tmp_path / "sol"
    code, out, _ = run(capsys, ["solve", "--v", "2", "--c", "1",
                                "--in", field_file, "--gamma", "1",
                                "--s", "0", "--out", str(outdir)])
    assert code == 0
    front = (outdir / "front.csv").read_text().splitlines()
    assert front[0] == "t,x1,f"
    assert len(front) == 1 + 16 * 8
    norms = json.loads((outdir / "norms.json").read_text())
    assert set(norms["norms"]) == {"0", "1"}
    assert all(math.isfinite(v) and v > 0 for v in norms["norms"].values())
    assert norms["r"] > 0 and math.isfinite(norms["r"])
    # idempotent: second run produces identical bytes
    first = (outdir / "front.csv").read_bytes()
    run(capsys, ["solve", "--v", "2", "--c", "1", "--in", field_file,
                 "--gamma", "1", "--s", "0", "--out", str(outdir)])
    assert (outdir / "front.csv").read_bytes() == first


def test_solve_zero_field(capsys, tmp_path):
    grid = vf.GridSpec(16, 8, 24, 1.0, 1.0, 2.0)
    zero = vf.FieldGrid(np.zeros((16, 8, 24)), np.zeros((16, 8, 24)), grid)
    path = tmp_path / "zero.vfgrid"
    vf.write_field(path, zero)
    outdir = tmp_path / "out"
    code, _, _ = run(capsys, ["solve", "--v", "2", "--c", "1", "--in",
                              str(path), "--out", str(outdir)])
    assert code == 0
    rows = (outdir / "front.csv").read_text().splitlines()[1:]
    assert all(float(r.split(",")[2]) == 0.0 for r in rows)


def test_solve_regime_refusal_and_io_error(capsys, tmp_path, field_file):
    code, _, err = run(capsys, ["solve", "--v", "1", "--c", "1",
                                "--in", field_file, "--out", str(tmp_path / "x")])
    assert code == 3
    assert "elliptic_unstable" in err
    code, _, _ = run(capsys, ["solve", "--v", "2", "--c", "1",
                              "--in", str(tmp_path / "missing.vfgrid"),
                              "--out", str(tmp_path / "y")])
    assert code == 4


def test_verify_table(capsys, tmp_path, field_file):
    out_path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, ["verify", "--v", "2", "--c", "1",
                                "--in", field_file, "--gammas", "1,2,4",
                                "--s", "0", "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "gamma,r,r_prime,g1_ratio,pointwise_min,pointwise_ok"
    assert len(lines) == 4
    assert all(line.endswith(",1") for line in lines[1:])  # pointwise holds
    assert "c_pointwise" in out and "rhs_constant" in out


def test_probe_output_and_refusal(capsys):
    root = 0.485868271756646
    gammas = ",".join(str(root + o) for o in (1e-1, 1e-2, 1e-3))
    code, out, _ = run(capsys, ["probe", "--v", "1", "--c", "1",
                                "--eta", "1", "--gammas", gammas])
    assert code == 0
    exp_line = [l for l in out.splitlines() if l.startswith("fitted_exponent")]
    assert abs(float(exp_line[0].split(":")[1]) + 1.0) <= 0.05
    code, _, _ = run(capsys, ["probe", "--v", "2", "--c", "1",
                              "--eta", "1", "--gammas", "1.0"])
    assert code == 3


def test_reconstruct_profile_csv(capsys, tmp_path, field_file):
    out_path = tmp_path / "profile.csv"
    code, out, _ = run(capsys, ["reconstruct", "--v", "2", "--c", "1",
                                "--in", field_file, "--gamma", "1",
                                "--delta", "6.3", "--eta", "6.3",
                                "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "x2,re_p_plus,im_p_plus,re_p_minus,im_p_minus"
    assert len(lines) == 1 + 24 + 1             # nodes include x2 = 0
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    # continuity of P at the interface: both sides share P(0)
    assert float(first[1]) == pytest.approx(float(first[3]), rel=1e-12)
