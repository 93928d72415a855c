import doctest
import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

import expsampling.estimator
from expsampling import KantorovichSampler
from expsampling.estimator import check_kernel, check_points, check_signal
from expsampling.kernels import make_chi_c
from expsampling.prediction import make_past_kernel
from expsampling.kernels import make_bspline
from expsampling.series import kantorovich_series
from expsampling.signals import make_paper_signal


def test_doctest():
    assert doctest.testmod(expsampling.estimator).failed == 0


def test_params_roundtrip():
    est = KantorovichSampler(kernel="bspline:3", w=7.5)
    params = est.get_params()
    assert params == {"kernel": "bspline:3", "w": 7.5, "mode": "kantorovich",
                      "tail_tol": 1e-12, "quad_nodes": 32}
    other = clone(est).set_params(w=3.0)
    assert other.w == 3.0 and est.w == 7.5


def test_predict_matches_series():
    f = make_paper_signal()
    est = KantorovichSampler(w=5).fit(f)
    t = np.array([0.5, 2.0, 3.3])
    expected = [kantorovich_series(make_chi_c(), f, v, 5) for v in t]
    np.testing.assert_allclose(est.predict(t), expected, rtol=0, atol=0)
    np.testing.assert_allclose(est.predict(t.reshape(-1, 1)), expected)


def test_predict_log_exact():
    est = KantorovichSampler(w=5).fit("paper")
    assert est.predict_log([-1.0])[0] == pytest.approx(1.6595, abs=1e-3)


def test_predict_mode():
    chi = make_past_kernel(make_bspline(2), 2.0)
    full = KantorovichSampler(kernel=chi, w=7).fit("paper").predict([4.0])
    past = KantorovichSampler(kernel=chi, w=7, mode="predict").fit("paper").predict([4.0])
    assert past[0] == pytest.approx(full[0], abs=1e-12)


def test_classical_mode():
    est = KantorovichSampler(kernel="bspline:2", w=10, mode="classical").fit("const:4")
    assert est.predict([1.5])[0] == pytest.approx(4.0)


def test_errors():
    with pytest.raises(NotFittedError):
        KantorovichSampler().predict([1.0])
    with pytest.raises(ValueError):
        KantorovichSampler(mode="other").fit("paper")
    with pytest.raises(ValueError):
        KantorovichSampler(w=-1).fit("paper")
    est = KantorovichSampler().fit("paper")
    with pytest.raises(ValueError):
        est.predict([0.0])
    with pytest.raises(ValueError):
        est.predict([[1.0, 2.0]])
    with pytest.raises(ValueError):
        est.predict([math.nan])


def test_validators():
    assert check_points([1, 2]).dtype == np.float64
    assert check_points([-1.0], log_domain=True)[0] == -1.0
    assert check_signal("paper").label == "paper"
    assert check_kernel("chi_c").label == "chi_c"
    with pytest.raises(TypeError):
        check_signal(3)
    with pytest.raises(TypeError):
        check_kernel(None)
