"""Bounded test signals with declared jump structure.

Signals are evaluated through ``eval_log(u) = f(exp(u))`` so that jump
abscissae such as ``t = 1/e`` are compared against their exact logarithm.
At a jump the right-hand branch is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

LOG_ATOL = 1e-12


@dataclass(frozen=True)
class Jump:
    t_star: float
    log_t_star: float
    left_limit: float
    right_limit: float

    @property
    def height(self) -> float:
        return self.right_limit - self.left_limit


@dataclass(frozen=True)
class Signal:
    """Bounded signal on ``(0, inf)``.

    ``breaks_log`` lists every log-abscissa where the signal is not smooth
    (jumps and kinks); quadrature splits there.  ``modulus`` is the exact
    logarithmic modulus of continuity when known.
    """

    eval_log: Callable[[np.ndarray], np.ndarray]
    bound: float
    jumps: tuple[Jump, ...] = ()
    breaks_log: tuple[float, ...] = ()
    label: str = ""
    modulus: Optional[Callable[[float], float]] = field(default=None, compare=False)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t <= 0):
            raise ValueError("signals live on t > 0")
        out = np.asarray(self.eval_log(np.log(t)), dtype=float)
        return out[()] if out.ndim == 0 else out

    def jump_at(self, log_t: float) -> Optional[Jump]:
        for j in self.jumps:
            if abs(j.log_t_star - log_t) <= LOG_ATOL:
                return j
        return None

    def log_of(self, t: float) -> float:
        """``log t``, snapped to a declared jump's exact logarithm."""
        for j in self.jumps:
            if t == j.t_star or math.isclose(t, j.t_star, rel_tol=1e-15, abs_tol=0):
                return j.log_t_star
        return math.log(t)


def _piecewise(breaks: Sequence[float], branches: Sequence[Callable]) -> Callable:
    """Log-domain evaluator: ``branches[i]`` (a function of ``t``) on piece ``i``.

    Pieces are ``[breaks[i-1], breaks[i])``, so a break belongs to the piece
    on its right.
    """
    edges = np.asarray(breaks, dtype=float)

    def eval_log(u):
        u = np.asarray(u, dtype=float)
        idx = np.searchsorted(edges, u, side="right")
        out = np.empty(u.shape)
        for i, fn in enumerate(branches):
            mask = idx == i
            if np.any(mask):
                # far tails of unbounded kernels reach exp overflow; the branches stay finite
                with np.errstate(over="ignore"):
                    out[mask] = fn(np.exp(u[mask]))
        return out[()] if out.ndim == 0 else out

    return eval_log


def make_paper_signal() -> Signal:
    """Piecewise test signal with jumps at ``1/e``, ``e`` and ``4``.

    ``2/(1+e t)`` on ``(0, 1/e)``, 2 on ``[1/e, e)``, 3 on ``[e, 4)``,
    ``10/(4+t)`` from 4 on.
    """
    e = math.e
    log4 = math.log(4.0)
    branches = [
        lambda t: 2.0 / (1.0 + e * t),
        lambda t: np.full_like(t, 2.0),
        lambda t: np.full_like(t, 3.0),
        lambda t: 10.0 / (4.0 + t),
    ]
    jumps = (
        Jump(1.0 / e, -1.0, 1.0, 2.0),
        Jump(e, 1.0, 2.0, 3.0),
        Jump(4.0, log4, 3.0, 1.25),
    )
    return Signal(
        eval_log=_piecewise([-1.0, 1.0, log4], branches),
        bound=3.0,
        jumps=jumps,
        breaks_log=(-1.0, 1.0, log4),
        label="paper",
    )


def make_constant(c: float) -> Signal:
    c = float(c)

    def eval_log(u):
        out = np.full(np.shape(u), c)
        return out[()] if out.ndim == 0 else out

    return Signal(eval_log=eval_log, bound=abs(c), label=f"const:{c:g}",
                  modulus=lambda delta: 0.0)


def make_jump_centered(f: Signal, t: Optional[float] = None, *,
                       log_t: Optional[float] = None) -> Signal:
    """Subtract the one-sided limit on each side of ``t``; zero at ``t`` itself.

    At a continuity point both limits are ``f(t)``.
    """
    if log_t is None:
        if t is None or t <= 0:
            raise ValueError("t must be a positive real")
        log_t = f.log_of(t)
    log_t = float(log_t)
    jump = f.jump_at(log_t)
    if jump is not None:
        left, right = jump.left_limit, jump.right_limit
    else:
        left = right = float(f.eval_log(log_t))

    def eval_log(u):
        u = np.asarray(u, dtype=float)
        out = np.asarray(f.eval_log(u), dtype=float) - np.where(u < log_t, left, right)
        out = np.where(u == log_t, 0.0, out)
        return out[()] if out.ndim == 0 else out

    def shifted(j: Jump) -> Jump:
        c = left if j.log_t_star < log_t else right
        return Jump(j.t_star, j.log_t_star, j.left_limit - c, j.right_limit - c)

    others = tuple(shifted(j) for j in f.jumps if j is not jump)
    return Signal(
        eval_log=eval_log,
        bound=2.0 * f.bound,
        jumps=others,
        breaks_log=tuple(sorted({*f.breaks_log, log_t})),
        label=f"h[{f.label}@{log_t:g}]",
    )


def make_synthetic(kind: str, **params) -> Signal:
    """Synthetic signals with exact jump metadata.

    ``step``
        ``left`` below ``exp(log_t_star)``, ``right`` from there on.
    ``ramp_with_jump``
        ``clip(slope*(u - log_t_star), -1, 1) + jump*[u >= log_t_star]`` in
        log-domain ``u``; ``point_value`` overrides the value at the jump
        (a removable discontinuity when ``jump = 0``).
    ``log_lipschitz``
        ``L*clip(u, lo, hi)``; modulus ``L*min(delta, hi - lo)``.
    """
    if kind == "step":
        lt = float(params.get("log_t_star", 1.0))
        left = float(params.get("left", 0.0))
        right = float(params.get("right", 1.0))

        def eval_log(u):
            u = np.asarray(u, dtype=float)
            out = np.where(u < lt, left, right)
            return out[()] if out.ndim == 0 else out

        return Signal(eval_log=eval_log, bound=max(abs(left), abs(right)),
                      jumps=(Jump(math.exp(lt), lt, left, right),), breaks_log=(lt,),
                      label=f"step:{lt:g}:{left:g}:{right:g}")

    if kind == "ramp_with_jump":
        lt = float(params.get("log_t_star", 1.0))
        jump = float(params.get("jump", 1.0))
        slope = float(params.get("slope", 1.0))
        point = params.get("point_value")
        if slope <= 0:
            raise ValueError("slope must be positive")

        def eval_log(u):
            u = np.asarray(u, dtype=float)
            out = np.clip(slope * (u - lt), -1.0, 1.0) + jump * (u >= lt)
            if point is not None:
                out = np.where(u == lt, float(point), out)
            return out[()] if out.ndim == 0 else out

        bound = 1.0 + abs(jump) + (abs(float(point)) if point is not None else 0.0)
        return Signal(eval_log=eval_log, bound=bound,
                      jumps=(Jump(math.exp(lt), lt, 0.0, jump),),
                      breaks_log=(lt - 1.0 / slope, lt, lt + 1.0 / slope),
                      label=f"ramp:{lt:g}:{jump:g}:{slope:g}")

    if kind == "log_lipschitz":
        L = float(params.get("L", 1.0))
        lo = float(params.get("lo", -1.0))
        hi = float(params.get("hi", 1.0))
        if L < 0 or not lo < hi:
            raise ValueError("need L >= 0 and lo < hi")

        def eval_log(u):
            out = L * np.clip(np.asarray(u, dtype=float), lo, hi)
            return out[()] if out.ndim == 0 else out

        return Signal(eval_log=eval_log, bound=L * max(abs(lo), abs(hi)),
                      breaks_log=(lo, hi), label=f"loglip:{L:g}",
                      modulus=lambda delta: L * min(delta, hi - lo))

    raise ValueError(f"unknown synthetic signal kind {kind!r}")


def linear_combination(a: float, f: Signal, b: float, g: Signal) -> Signal:
    """``a*f + b*g`` with merged jump metadata."""
    def eval_log(u):
        return a * np.asarray(f.eval_log(u)) + b * np.asarray(g.eval_log(u))

    def limits(s: Signal, lt: float):
        j = s.jump_at(lt)
        if j is not None:
            return j.left_limit, j.right_limit
        v = float(s.eval_log(lt))
        return v, v

    positions = sorted({j.log_t_star for j in (*f.jumps, *g.jumps)})
    jumps = []
    for lt in positions:
        fl, fr = limits(f, lt)
        gl, gr = limits(g, lt)
        jumps.append(Jump(math.exp(lt), lt, a * fl + b * gl, a * fr + b * gr))
    return Signal(eval_log=eval_log, bound=abs(a) * f.bound + abs(b) * g.bound,
                  jumps=tuple(jumps), breaks_log=tuple(sorted({*f.breaks_log, *g.breaks_log})),
                  label=f"{a:g}*{f.label}+{b:g}*{g.label}")


def parse_log(text: str) -> float:
    """Parse a log-abscissa: a rational like ``-1`` or ``1/2``, or ``ln(X)``."""
    text = text.strip()
    if text.startswith("ln(") and text.endswith(")"):
        return math.log(float(Fraction(text[3:-1])))
    return float(Fraction(text))


def get_signal(spec: str) -> Signal:
    """Build a signal from a string id.

    ``paper``, ``const:C``, ``step:LOG_T:LEFT:RIGHT``, ``ramp:LOG_T:JUMP:SLOPE``,
    ``loglip:L``.
    """
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    try:
        if spec == "paper":
            return make_paper_signal()
        if head == "const":
            return make_constant(float(rest))
        if head == "step":
            lt, left, right = parts
            return make_synthetic("step", log_t_star=parse_log(lt), left=float(left),
                                  right=float(right))
        if head == "ramp":
            lt, jump, slope = parts
            return make_synthetic("ramp_with_jump", log_t_star=parse_log(lt),
                                  jump=float(jump), slope=float(slope))
        if head == "loglip":
            return make_synthetic("log_lipschitz", L=float(rest))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad signal id {spec!r}: {exc}") from exc
    raise ValueError(f"unknown signal id {spec!r}")
