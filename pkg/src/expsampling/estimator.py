"""scikit-learn style front end for the sampling series."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from .kernels import Kernel, get_kernel
from .prediction import predict_from_past
from .series import SeriesParams, generalized_series, kantorovich_series
from .signals import Signal, get_signal

_MODES = {
    "kantorovich": kantorovich_series,
    "classical": generalized_series,
    "predict": predict_from_past,
}


def check_points(X, *, log_domain: bool = False) -> np.ndarray:
    """Validate evaluation points: 1-D or single-column, finite, and positive unless in log-domain."""
    arr = check_array(X, ensure_2d=False, dtype=np.float64)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"expected one column of points, got shape {arr.shape}")
        arr = arr[:, 0]
    if not log_domain and np.any(arr <= 0):
        raise ValueError("evaluation points must be positive")
    return arr


def check_signal(f) -> Signal:
    if isinstance(f, Signal):
        return f
    if isinstance(f, str):
        return get_signal(f)
    raise TypeError(f"expected a Signal or signal id, got {type(f).__name__}")


def check_kernel(chi) -> Kernel:
    if isinstance(chi, Kernel):
        return chi
    if isinstance(chi, str):
        return get_kernel(chi)
    raise TypeError(f"expected a Kernel or kernel id, got {type(chi).__name__}")


class KantorovichSampler(BaseEstimator):
    """Reconstruct a signal from exponential samples.

    ``fit`` takes the signal (object or registry id); ``predict`` evaluates
    the chosen series at positive points ``t``.

    Parameters
    ----------
    kernel : str or Kernel, default="chi_c"
    w : float, default=10.0
        Sampling rate; nodes sit at ``exp(k/w)``.
    mode : {"kantorovich", "classical", "predict"}, default="kantorovich"
    tail_tol : float, default=1e-12
    quad_nodes : int, default=32

    Examples
    --------
    >>> from expsampling import KantorovichSampler
    >>> est = KantorovichSampler(kernel="bspline:2", w=10).fit("const:2")
    >>> float(est.predict([3.0])[0])
    2.0
    """

    def __init__(self, kernel="chi_c", w=10.0, mode="kantorovich", tail_tol=1e-12,
                 quad_nodes=32):
        self.kernel = kernel
        self.w = w
        self.mode = mode
        self.tail_tol = tail_tol
        self.quad_nodes = quad_nodes

    def fit(self, X, y=None):
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {sorted(_MODES)}, got {self.mode!r}")
        self.kernel_ = check_kernel(self.kernel)
        self.signal_ = check_signal(X)
        self.params_ = SeriesParams(w=float(self.w), tail_tol=float(self.tail_tol),
                                    quad_nodes=int(self.quad_nodes))
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "signal_")
        t = check_points(X)
        fn = _MODES[self.mode]
        return np.array([fn(self.kernel_, self.signal_, float(v), self.params_) for v in t])

    def predict_log(self, U) -> np.ndarray:
        """Evaluate at ``t = exp(U)``; the logarithms are used exactly."""
        check_is_fitted(self, "signal_")
        u = check_points(U, log_domain=True)
        fn = _MODES[self.mode]
        return np.array([fn(self.kernel_, self.signal_, None, self.params_, log_t=float(v))
                         for v in u])
