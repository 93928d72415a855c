import math

import numpy as np
import pytest

from expsampling import series
from expsampling.kernels import make_bspline, make_chi_c, partition_sum, psi_minus, psi_plus
from expsampling.prediction import make_past_kernel, predict_from_past
from expsampling.series import kantorovich_series
from expsampling.signals import make_constant, make_paper_signal

B2 = make_bspline(2)


@pytest.fixture(scope="module")
def sig():
    return make_paper_signal()


def test_non_integer_example(sig):
    chi = make_past_kernel(B2, 2.0)
    assert chi.support_log == (1.0, 3.0)
    got = predict_from_past(chi, sig, 4.0, 7)
    assert got == pytest.approx(kantorovich_series(chi, sig, 4.0, 7), abs=1e-12)


def test_integer_example(sig):
    chi = make_past_kernel(B2, 1.1)
    assert chi.support_log == pytest.approx((0.1, 2.1))
    got = predict_from_past(chi, sig, math.e, 3)
    assert got == pytest.approx(kantorovich_series(chi, sig, math.e, 3), abs=1e-12)


def test_constant():
    chi = make_past_kernel(make_bspline(3), 3.0)
    assert predict_from_past(chi, make_constant(1.7), 2.5, 4.2) == pytest.approx(1.7, abs=1e-12)


@pytest.mark.parametrize("shift", [1.0, 2.0, 1.1, 2.75])
def test_partition_preserved(shift):
    chi = make_past_kernel(B2, shift)
    for lam in np.linspace(0, 1, 51):
        assert partition_sum(chi, log_u=lam) == pytest.approx(1.0, abs=1e-12)


def test_one_sided_sums_at_one():
    # at u = 1 the arguments are -k, so support in (0, inf) puts every term at k < 0
    chi = make_past_kernel(B2, 1.5)
    assert psi_plus(chi, 1.0) == pytest.approx(1.0)
    assert psi_minus(chi, 1.0) == 0.0


def test_reads_only_past(sig, monkeypatch):
    seen = []
    orig = series.local_averages

    def spy(f, ks, params):
        seen.extend(int(k) for k in np.atleast_1d(ks))
        return orig(f, ks, params)

    monkeypatch.setattr(series, "local_averages", spy)
    chi = make_past_kernel(B2, 2.0)
    w, lt = 5.5, 0.83
    predict_from_past(chi, sig, None, w, log_t=lt)
    assert seen and max(seen) + 1 <= math.floor(w * lt)


@pytest.mark.parametrize("case", ["integer", "non_integer"])
def test_random_agreement(sig, case):
    rng = np.random.default_rng(11)
    chi = make_past_kernel(B2, 1.1 if case == "integer" else 2.0)
    for _ in range(50):
        w = float(rng.uniform(1, 40))
        lt = int(rng.integers(-40, 60)) / w if case == "integer" else float(rng.uniform(-2, 2.5))
        a = predict_from_past(chi, sig, None, w, log_t=lt)
        b = kantorovich_series(chi, sig, None, w, log_t=lt)
        assert abs(a - b) < 1e-12


def test_support_errors(sig):
    with pytest.raises(ValueError, match="support"):
        predict_from_past(B2, sig, 4.0, 7)
    # support in (0, inf) but not (1, inf): fine on the lattice, rejected off it
    chi = make_past_kernel(B2, 1.1)
    predict_from_past(chi, sig, None, 3, log_t=1.0)
    with pytest.raises(ValueError, match="non_integer_case"):
        predict_from_past(chi, sig, 4.0, 7)
    with pytest.raises(ValueError):
        predict_from_past(make_chi_c(), sig, 4.0, 7)


def test_shift_must_be_positive():
    with pytest.raises(ValueError):
        make_past_kernel(B2, 0.0)
