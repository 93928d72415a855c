"""Evaluating the series from past local averages only.

A kernel supported to the right of ``u = 1`` (log-domain ``(0, inf)``) never
weighs an interval that starts at or after ``log t`` when ``w log t`` is a
lattice point; support right of ``u = e`` gives the same for every other
``t``.  The sum can then be cut at the last past interval.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from . import series
from .jumps import GridCase, detect_grid_case
from .kernels import Kernel, shift_kernel
from .series import ParamsLike, as_params, resolve_log_t
from .signals import Signal


def make_past_kernel(base: Kernel, shift: float) -> Kernel:
    """Translate ``base`` by ``shift`` in log-domain (``chi(u) -> chi(u e^-shift)``).

    Any real shift keeps the lattice sums equal to 1, because they are
    evaluated at every real argument.
    """
    if not shift > 0:
        raise ValueError("shift must be positive")
    return shift_kernel(base, shift, label=f"past:{shift:g}:{base.label}")


def _support_ok(chi: Kernel, threshold: float) -> bool:
    lo = chi.support_log[0]
    if lo > threshold:
        return True
    return lo == threshold and float(chi.eval_log(threshold)) == 0.0


def predict_from_past(chi: Kernel, f: Signal, t: Optional[float], params: ParamsLike,
                      *, log_t: Optional[float] = None) -> float:
    """Series value at ``t`` built only from intervals that end by ``log t``.

    Integer case (``w log t`` a lattice point ``m``): terms ``k < m``, needs
    support in log-domain ``(0, inf)``.  Otherwise terms
    ``k <= floor(w log t) - 1``, needs support in ``(1, inf)``.
    """
    params = as_params(params)
    lt = resolve_log_t(f, t, log_t)
    if chi.support_log is None:
        raise ValueError("prediction needs a compactly supported kernel")
    x = params.w * lt
    case = detect_grid_case(params.w, lt)
    if case is GridCase.INTEGER:
        threshold, last = 0.0, round(x) - 1
    else:
        threshold, last = 1.0, math.floor(x) - 1
    if not _support_ok(chi, threshold):
        where = "(1, inf)" if threshold == 0.0 else "(e, inf)"
        raise ValueError(f"{case.value}: kernel support must lie in {where}, "
                         f"got log-support {chi.support_log}")
    ks, _ = series.lattice_indices(chi, x)
    ks = ks[ks <= last]
    if ks.size == 0:
        return 0.0
    weights = chi.eval_log(x - ks)
    return math.fsum(np.atleast_1d(weights * series.local_averages(f, ks, params)))
