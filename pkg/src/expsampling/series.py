"""Exponential sampling series: Kantorovich (local averages) and classical (point samples)."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .kernels import Kernel, TailWarning, lattice_indices
from .signals import Signal


@dataclass(frozen=True)
class SeriesParams:
    """Sampling rate and summation controls.

    ``quad_nodes`` is the Gauss-Legendre order used on every smooth piece of
    an averaging interval.
    """

    w: float
    tail_tol: float = 1e-12
    quad_nodes: int = 32

    def __post_init__(self):
        if not self.w > 0:
            raise ValueError("w must be positive")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")
        if self.quad_nodes < 1:
            raise ValueError("quad_nodes must be >= 1")


ParamsLike = Union[SeriesParams, float, int]


def as_params(params: ParamsLike) -> SeriesParams:
    return params if isinstance(params, SeriesParams) else SeriesParams(w=float(params))


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(n: int):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _mean_on(f: Signal, a: float, b: float, nodes, weights) -> float:
    """Mean of ``f(exp(u))`` over ``[a, b]``, split at breaks inside."""
    cuts = [a, *(q for q in f.breaks_log if a < q < b), b]
    total = 0.0
    for p, q in zip(cuts, cuts[1:]):
        mid, rad = 0.5 * (p + q), 0.5 * (q - p)
        total += rad * float(np.dot(weights, f.eval_log(mid + rad * nodes)))
    return total / (b - a)


def local_averages(f: Signal, ks, params: ParamsLike) -> np.ndarray:
    """``w * int_{k/w}^{(k+1)/w} f(exp(u)) du`` for every ``k`` in ``ks``."""
    params = as_params(params)
    w = params.w
    ks = np.asarray(ks, dtype=float)
    nodes, weights = _gauss(params.quad_nodes)
    a, b = ks / w, (ks + 1) / w
    mid, rad = 0.5 * (a + b), 0.5 * (b - a)
    vals = np.asarray(f.eval_log(mid[:, None] + rad[:, None] * nodes[None, :]), dtype=float)
    out = 0.5 * vals @ weights
    if f.breaks_log:
        brk = np.asarray(sorted(f.breaks_log))
        inside = np.searchsorted(brk, b, side="left") - np.searchsorted(brk, a, side="right")
        for i in np.flatnonzero(inside > 0):
            out[i] = _mean_on(f, a[i], b[i], nodes, weights)
    return out


def local_average(f: Signal, k: int, params: ParamsLike) -> float:
    return float(local_averages(f, [k], params)[0])


def resolve_log_t(f: Optional[Signal], t: Optional[float], log_t: Optional[float]) -> float:
    if log_t is not None:
        return float(log_t)
    if t is None or not t > 0:
        raise ValueError("t must be a positive real")
    return f.log_of(t) if f is not None else math.log(t)


def _indices(chi: Kernel, x: float, params: SeriesParams, what: str):
    ks, ok = lattice_indices(chi, x, params.tail_tol)
    if not ok:
        warnings.warn(f"{what}: kernel tail did not converge", TailWarning, stacklevel=3)
    return ks


def kantorovich_series(chi: Kernel, f: Signal, t: Optional[float], params: ParamsLike,
                       *, log_t: Optional[float] = None) -> float:
    """``sum_k chi(exp(-k) t^w) * w int_{k/w}^{(k+1)/w} f(exp(u)) du``.

    Kernel arguments are formed as ``w*log(t) - k``; pass ``log_t`` to give the
    logarithm exactly.
    """
    params = as_params(params)
    x = params.w * resolve_log_t(f, t, log_t)
    ks = _indices(chi, x, params, "kantorovich_series")
    weights = chi.eval_log(x - ks)
    keep = weights != 0
    ks, weights = ks[keep], weights[keep]
    if ks.size == 0:
        return 0.0
    return math.fsum(weights * local_averages(f, ks, params))


def generalized_series(chi: Kernel, f: Signal, t: Optional[float], params: ParamsLike,
                       *, log_t: Optional[float] = None) -> float:
    """``sum_k chi(exp(-k) t^w) f(exp(k/w))``."""
    params = as_params(params)
    x = params.w * resolve_log_t(f, t, log_t)
    ks = _indices(chi, x, params, "generalized_series")
    weights = chi.eval_log(x - ks)
    samples = np.asarray(f.eval_log(ks / params.w), dtype=float)
    return math.fsum(np.atleast_1d(weights * samples))
