import json
import os
import subprocess
import sys

import pytest

DISC = '{"kind":"disc"}'
D2 = '{"kind":"polydisc","n":2}'


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    p = subprocess.run([sys.executable, "-m", "horolib", *args], capture_output=True, text=True, env=e)
    return p.returncode, p.stdout, p.stderr


def test_dist_golden():
    code, out, _ = run("dist", "--space", DISC, "--x", "0", "--y", "[0.5,0]")
    assert code == 0
    assert json.loads(out)["distance"] == pytest.approx(1.0986122886681098, abs=1e-15)


def test_horo_eval_golden():
    code, out, _ = run("horo-eval", "--horo", '{"type":"ball_boundary","xi":[[1,0],[0,0]]}', "--x", "[[0,0],[0.5,0]]")
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.2876820724517809, abs=1e-15)


def test_detour_product_golden():
    a = '{"product":{"J":[0,1],"rays":[[1,0],[1,0]],"alpha":[0,2]}}'
    b = '{"product":{"J":[0,1],"rays":[[1,0],[1,0]],"alpha":[1,0]}}'
    code, out, _ = run("detour", "--space", D2, "--a", a, "--b", b)
    assert code == 0
    assert json.loads(out)["detour"]["finite"] == pytest.approx(3.0, abs=1e-5)


def test_detour_ball_points_diverge():
    B = '{"kind":"ball","n":2}'
    code, out, _ = run("detour", "--space", B, "--a", '{"ray":[[1,0],[0,0]],"t_max":23}', "--b", '{"ray":[[0,0],[1,0]],"t_max":23}')
    assert code == 0 and json.loads(out)["detour"] == {"exceeds_cutoff": {"M": 20.0, "last_n": 11}}


def test_output_is_deterministic():
    args = ("construct-busemann", "--space", D2, "--J", "[0,1]", "--rays", "[[1,0],[0,1]]", "--alpha", "[0,1]")
    assert run(*args)[1] == run(*args)[1]


def test_induced_ray_csv(tmp_path):
    out_csv = tmp_path / "ray.csv"
    code, out, _ = run("induced-ray", "--space", DISC, "--seq", "[0,[0.5,0],[0.9,0]]", "--count", "5", "--out", str(out_csv))
    assert code == 0
    assert json.loads(out)["breakpoints"][0] == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "t,radius,re,im" and len(lines) == 6
    t, r = map(float, lines[-1].split(",")[:2])
    assert r == pytest.approx(t, abs=1e-12)


def test_horoball_csv_lies_on_level_set(tmp_path):
    out_csv = tmp_path / "h.csv"
    code, _, _ = run("horoball-csv", "--horo", '{"type":"disc_boundary","xi":[1,0]}', "--r", "0.5", "--count", "12", "--out", str(out_csv))
    assert code == 0
    import math

    k = math.exp(0.5)
    rows = [list(map(float, line.split(","))) for line in out_csv.read_text().splitlines()[1:]]
    assert len(rows) >= 11
    for _, re, im in rows:
        # horocycle of level r: circle centred at 1/(1+e^r) with radius e^r/(1+e^r)
        assert math.hypot(re - 1 / (1 + k), im) == pytest.approx(k / (1 + k), abs=1e-9)


def test_file_input(tmp_path):
    f = tmp_path / "space.json"
    f.write_text(DISC)
    code, out, _ = run("dist", "--space", f"@{f}", "--x", "0", "--y", "0")
    assert code == 0 and json.loads(out)["distance"] == 0


@pytest.mark.parametrize(
    "args",
    [
        ("bogus",),
        ("dist", "--space", '{"kind":"disc"', "--x", "0", "--y", "0"),
        ("dist", "--space", '{"kind":"torus"}', "--x", "0", "--y", "0"),
        ("dist", "--space", DISC, "--x", "[2,0]", "--y", "0"),
        ("verify", "--suite", "99"),
    ],
)
def test_rejections_exit_1(args):
    code, out, _ = run(*args)
    assert code == 1
    assert "error" in json.loads(out)


def test_env_tolerance():
    seq = "[[0.5,0],[0.9,0],[0.99,0],[0.999,0],[0.9999,0]]"
    args = ("horo-limit", "--space", DISC, "--seq", seq, "--z", "[0.3,0.6]", "--window", "3")
    assert json.loads(run(*args, env={"HOROLIB_TOL": "1e-1"})[1])["estimate"]["converged"]
    assert not json.loads(run(*args, env={"HOROLIB_TOL": "1e-12"})[1])["estimate"]["converged"]
    assert run(*args, env={"HOROLIB_TOL": "abc"})[0] == 1


def test_verify_pass_and_fail_codes():
    code, out, err = run("verify", "--suite", "1,10")
    assert code == 0 and json.loads(out)["passed"]
    assert "seconds" not in out and "criterion  1 [PASS]" in err
    code, out, _ = run("verify", "--suite", "4")
    assert code == 2 and not json.loads(out)["passed"]
