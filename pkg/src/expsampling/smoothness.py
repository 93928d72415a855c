"""Logarithmic modulus of continuity and the resulting error bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .kernels import Kernel, absolute_moment, default_u_grid
from .series import kantorovich_series
from .signals import Signal

MODULUS_GRID = 4096


@dataclass(frozen=True)
class ModulusEstimate:
    delta: float
    value: float
    grid_size: int


def log_modulus(f: Signal, delta: float, domain: tuple[float, float] = (-3.0, 3.0),
                grid_size: int = MODULUS_GRID) -> ModulusEstimate:
    """Grid estimate of ``sup |f(s) - f(t)|`` over ``|log s - log t| <= delta``.

    ``domain`` is a log-domain interval; the grid is uniform there and only
    pairs within ``delta`` of each other are compared, so the result is a
    lower bound of the true modulus.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    if grid_size < 1:
        raise ValueError("empty grid")
    lo, hi = domain
    u = np.linspace(lo, hi, grid_size)
    v = np.asarray(f.eval_log(u), dtype=float)
    if grid_size == 1:
        return ModulusEstimate(delta, 0.0, grid_size)
    h = (hi - lo) / (grid_size - 1)
    reach = min(int(math.floor(delta / h * (1 + 1e-12))), grid_size - 1)
    best = 0.0
    for d in range(1, reach + 1):
        best = max(best, float(np.max(np.abs(v[d:] - v[:-d]))))
    return ModulusEstimate(delta, best, grid_size)


def series_window(chi: Kernel, log_points: Sequence[float], w: float) -> tuple[float, float]:
    """Log-interval of all local averages the series reads at ``log_points``."""
    lo, hi = min(log_points), max(log_points)
    if chi.support_log is None:
        reach = 1.0
    else:
        reach = max(abs(chi.support_log[0]), abs(chi.support_log[1])) + 1.0
    return lo - reach / w, hi + reach / w


def theorem7_bound(f: Signal, chi: Kernel, nu: float, w: float,
                   modulus: Optional[Callable[[float], float]] = None,
                   domain: Optional[tuple[float, float]] = None) -> float:
    """Right-hand side ``omega(f, w^-nu)(M_nu + 2 M_0) + 2^(nu+1) ||f|| M_nu w^-nu``.

    ``modulus`` maps ``delta`` to ``omega(f, delta)``; by default the grid
    estimate of :func:`log_modulus` over ``domain`` is used.
    """
    if not 0 < nu < 1:
        raise ValueError("nu must lie in (0, 1)")
    if w < 2:
        raise ValueError("the bound needs w >= 2")
    grid = default_u_grid()
    m_nu = absolute_moment(chi, nu, grid)
    m_0 = absolute_moment(chi, 0.0, grid)
    if not (m_nu.converged and m_0.converged) or not math.isfinite(m_nu.sup_value):
        raise ValueError(f"moment of order {nu} of {chi.label!r} is not finite")
    delta = w ** (-nu)
    if modulus is not None:
        omega = float(modulus(delta))
    else:
        omega = log_modulus(f, delta, domain or (-3.0, 3.0)).value
    return (omega * (m_nu.sup_value + 2.0 * m_0.sup_value)
            + 2.0 ** (nu + 1) * f.bound * m_nu.sup_value * delta)


@dataclass(frozen=True)
class BoundCheck:
    nu: float
    w: float
    max_error: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.max_error <= self.bound


def check_bound(f: Signal, chi: Kernel, nu: float, w: float, log_points: Sequence[float],
                modulus: Optional[Callable[[float], float]] = None) -> BoundCheck:
    """Largest ``|I_w f(t) - f(t)|`` over ``log_points`` against the bound.

    The empirical modulus is taken over the whole window the series reads.
    """
    window = series_window(chi, log_points, w)
    pad = w ** (-nu)
    bound = theorem7_bound(f, chi, nu, w, modulus=modulus,
                           domain=(window[0] - pad, window[1] + pad))
    errs = [abs(kantorovich_series(chi, f, None, w, log_t=float(u)) - float(f.eval_log(u)))
            for u in log_points]
    return BoundCheck(nu=nu, w=w, max_error=max(errs), bound=bound)
