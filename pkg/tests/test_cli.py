import math
import subprocess
import sys

import numpy as np
import pytest

from expsampling import cli, golden


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_full_precision(capsys):
    code, out, _ = run(capsys, "table", "--jump", "4", "--w", "1,200")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "w,chi_c,chi_d,limit,abs_err_chi_c,abs_err_chi_d"
    w, c, d = lines[2].split(",")[:3]
    assert w == "200" and c == d and float(c) == pytest.approx(1.9472, abs=1e-4)
    assert len(c) > 10


def test_table_check_reports_mismatch(capsys):
    code, out, err = run(capsys, "table", "--jump", "1/e", "--check")
    # the chi_d column misses the small-w reference entries
    assert code == 1
    assert "chi_d w=2" in err and "check failed" in err
    first = out.splitlines()[1].split(",")
    assert first[1] == "1.8509"


def test_table_check_passes_on_reproducible_column(capsys):
    code, _, err = run(capsys, "table", "--jump", "1/e", "--kernels", "chi_c", "--check")
    assert code == 0 and "check passed" in err


def test_table_quiet_and_tol(capsys):
    code, _, err = run(capsys, "table", "--jump", "e", "--kernels", "chi_c", "--check",
                       "--tol", "0.01", "--quiet")
    assert code == 0 and err == ""


def test_table_out(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, stdout, _ = run(capsys, "table", "--jump", "e", "--w", "10,20", "--out", str(out))
    assert code == 0 and stdout == ""
    rows = np.loadtxt(out, delimiter=",", skiprows=1)
    np.testing.assert_allclose(rows[:, 1], 2.6, atol=1e-12)


def test_golden_embeds_sixty_values():
    assert sum(len(v[k]) for v in golden.TABLES.values() for k in ("chi_c", "chi_d")) == 60
    assert golden.TABLES["e"]["chi_d"][0] == 2.8973


@pytest.mark.parametrize("argv", [["table", "--jump", "5"], ["table", "--jump", "e", "--kernels", "bogus"],
                                  ["eval", "chi_c", "nosuch", "--t", "2", "--w", "3"],
                                  ["eval", "chi_c", "paper", "--w", "3"],
                                  ["eval", "chi_c", "paper", "--t", "-2", "--w", "3"],
                                  ["profile", "chi_c", "paper", "--w", "5", "--t-range", "0,2"],
                                  ["bound-check", "powertail:1.5", "loglip:1", "--nu", "0.75"],
                                  []])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "chi_c", "paper", "--log-t", "-1", "--w", "5")
    assert code == 0 and float(out) == pytest.approx(1.6595, abs=1e-4)
    code, out, _ = run(capsys, "eval", "bspline:2", "const:2", "--t", "3", "--w", "10")
    assert float(out) == 2.0
    code, out, _ = run(capsys, "eval", "chi_c", "paper", "--log-t", "ln(4)", "--w", "200")
    assert float(out) == pytest.approx(1.9472, abs=1e-4)


def test_eval_predict_support_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "bspline:2", "paper", "--t", "4", "--w", "7", "--mode", "predict"])
    assert exc.value.code == 2
    assert "support" in capsys.readouterr().err


def test_eval_predict_shifted(capsys):
    code, out, _ = run(capsys, "eval", "shift:2:bspline:2", "paper", "--t", "4", "--w", "7",
                       "--mode", "predict")
    _, full, _ = run(capsys, "eval", "shift:2:bspline:2", "paper", "--t", "4", "--w", "7")
    assert code == 0 and float(out) == pytest.approx(float(full), abs=1e-12)


def test_kernel_check_chi_c(capsys):
    code, out, _ = run(capsys, "kernel-check", "chi_c")
    assert code == 0
    assert "alpha: 0.6" in out
    assert "mellin lower: k=-2" in out and "k=0:+0.6000000000" in out
    assert "vanishes on [1, e): true" in out


def test_kernel_check_bspline(capsys):
    code, out, _ = run(capsys, "kernel-check", "bspline:2")
    assert code == 0
    resid = float(out.split("partition residual: ")[1].split()[0])
    assert resid < 1e-12
    assert "vanishes on [1, e): false" in out


def test_kernel_check_jackson(capsys):
    code, out, _ = run(capsys, "kernel-check", "jackson:1:1", "--grid-size", "20")
    assert code == 0
    assert "vanishes on [1, e): false" in out and "note:" in out
    assert "not certified" in out


def test_kernel_check_failure(capsys):
    code, _, err = run(capsys, "kernel-check", "powertail:1.5", "--grid-size", "10")
    assert code == 1 and "FAILED: partition of unity" in err


def test_profile(tmp_path, capsys):
    out = tmp_path / "p.csv"
    code, _, _ = run(capsys, "profile", "chi_c", "paper", "--w", "5", "--points", "500",
                     "--out", str(out))
    assert code == 0
    header = out.read_text().splitlines()[0]
    assert header == "t,f,I_w"
    t, f, iw = np.loadtxt(out, delimiter=",", skiprows=1).T
    assert len(t) == 500 and t[0] == pytest.approx(0.1) and t[-1] == pytest.approx(6.0)
    # at w = 5 the series reads log t +- 0.6, which stays inside [1/e, e) here
    away = (t > 0.8) & (t < 1.2)
    np.testing.assert_allclose(iw[away], f[away], atol=1e-12)


def test_profile_constant(capsys):
    code, out, _ = run(capsys, "profile", "chi_c", "const:1.5", "--w", "10", "--points", "7")
    rows = np.loadtxt(out.splitlines()[1:], delimiter=",")
    np.testing.assert_allclose(rows[:, 1], rows[:, 2], atol=1e-13)


def test_profile_deterministic(capsys):
    a = run(capsys, "profile", "chi_c", "paper", "--w", "10", "--points", "50")[1]
    b = run(capsys, "profile", "chi_c", "paper", "--w", "10", "--points", "50")[1]
    assert a == b


def test_bound_check(capsys):
    code, out, err = run(capsys, "bound-check", "bspline:2", "loglip:1", "--w", "2,100", "--grid", "50")
    assert code == 0 and "holds" in err
    rows = out.strip().splitlines()
    assert rows[0] == "nu,w,max_err,bound,ok" and len(rows) == 1 + 3 * 2
    assert all(r.endswith(",1") for r in rows[1:])


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "expsampling", "eval", "bspline:2", "const:2",
                          "--t", "3", "--w", "10"], capture_output=True, text=True)
    assert res.returncode == 0 and float(res.stdout) == 2.0
