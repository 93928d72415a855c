"""Behaviour of the Kantorovich series at jump discontinuities.

Covers the representation through the jump-centred signal ``h_t``, the
limit predicted by ``psi_minus``, rate sweeps at a jump and the
non-convergence probe for kernels that do not vanish on ``[1, e)``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .kernels import Kernel, psi_minus, psi_minus_profile, vanishes_on_unit
from .series import ParamsLike, as_params, kantorovich_series
from .signals import Jump, Signal, make_jump_centered

LATTICE_ATOL = 1e-12
CONSTANCY_TOL = 1e-10


class GridCase(str, enum.Enum):
    INTEGER = "integer_case"
    NON_INTEGER = "non_integer_case"
    UNRESTRICTED = "unrestricted"


def detect_grid_case(w: float, log_t: float) -> GridCase:
    """Whether ``w*log(t)`` is a lattice point."""
    x = w * log_t
    return GridCase.INTEGER if abs(x - round(x)) < LATTICE_ATOL else GridCase.NON_INTEGER


def _require_jump(f: Signal, log_t: float) -> Jump:
    jump = f.jump_at(log_t)
    if jump is None:
        raise ValueError(f"log t = {log_t:g} is not a declared jump of {f.label!r}")
    return jump


def _log_t(f: Signal, t, log_t) -> float:
    if log_t is not None:
        return float(log_t)
    if t is None or not t > 0:
        raise ValueError("t must be a positive real")
    return f.log_of(t)


@dataclass(frozen=True)
class RepresentationParts:
    """Terms of the split ``I_w f(t) = I_w h_t(t) + f(t-0) + jump terms``.

    ``psi_term`` is ``psi_minus(t^w) * jump``; ``chi_frac_term`` is
    ``chi(exp(frac)) * jump`` (``chi(1)`` on the integer branch) and
    ``frac_weight_term`` is ``-chi(exp(frac)) * frac * jump`` (zero on the
    integer branch).
    """

    branch: GridCase
    h_term: float
    base: float
    psi_term: float
    chi_frac_term: float
    frac_weight_term: float
    direct: float

    @property
    def reconstructed(self) -> float:
        return math.fsum((self.h_term, self.base, self.psi_term, self.chi_frac_term,
                          self.frac_weight_term))


def representation_decompose(chi: Kernel, f: Signal, t: Optional[float], params: ParamsLike,
                             *, log_t: Optional[float] = None) -> RepresentationParts:
    params = as_params(params)
    lt = _log_t(f, t, log_t)
    jump = _require_jump(f, lt)
    x = params.w * lt
    branch = detect_grid_case(params.w, lt)
    h = make_jump_centered(f, log_t=lt)
    height = jump.height
    psi = psi_minus(chi, log_u=x) if height else 0.0
    if branch is GridCase.INTEGER:
        chi_frac = float(chi.eval_log(0.0))
        frac = 0.0
    else:
        frac = x - math.floor(x)
        chi_frac = float(chi.eval_log(frac))
    return RepresentationParts(
        branch=branch,
        h_term=kantorovich_series(chi, h, None, params, log_t=lt),
        base=jump.left_limit,
        psi_term=psi * height,
        chi_frac_term=chi_frac * height,
        frac_weight_term=-chi_frac * frac * height,
        direct=kantorovich_series(chi, f, None, params, log_t=lt),
    )


@dataclass(frozen=True)
class JumpPrediction:
    alpha: float
    predicted_limit: float
    branch: GridCase
    chi_one: float


def kernel_alpha(chi: Kernel, branch: GridCase) -> float:
    """``psi_minus`` value that governs the limit on the given branch.

    Raises when the branch's hypothesis on the kernel is not met.
    """
    if branch is GridCase.INTEGER:
        return psi_minus(chi, log_u=0.0)
    if branch is GridCase.NON_INTEGER:
        lam = (np.arange(1000) + 0.5) / 1000
        if not np.all(np.abs(chi.eval_log(lam)) <= 1e-14):
            raise ValueError("non-integer branch needs chi = 0 on (1, e)")
        prof = psi_minus_profile(chi, include_one=False)
    else:
        if not vanishes_on_unit(chi):
            raise ValueError("unrestricted branch needs chi = 0 on [1, e)")
        prof = psi_minus_profile(chi, include_one=True)
    if prof.max() - prof.min() >= CONSTANCY_TOL:
        raise ValueError("psi_minus is not constant on the fundamental interval "
                         f"(spread {prof.max() - prof.min():.3g})")
    return psi_minus(chi, log_u=0.5)


def predict_limit(chi: Kernel, f: Signal, t: Optional[float] = None,
                  branch: Optional[GridCase] = None, *,
                  log_t: Optional[float] = None) -> JumpPrediction:
    """Limit of ``I_w f(t)`` at a jump as ``w`` grows (along ``branch``).

    Without an explicit branch, ``unrestricted`` is used when the kernel
    vanishes on ``[1, e)`` and the integer-lattice branch otherwise.
    """
    lt = _log_t(f, t, log_t)
    jump = _require_jump(f, lt)
    if branch is None:
        branch = GridCase.UNRESTRICTED if vanishes_on_unit(chi) else GridCase.INTEGER
    branch = GridCase(branch)
    alpha = kernel_alpha(chi, branch)
    chi_one = float(chi.eval_log(0.0))
    left, right = jump.left_limit, jump.right_limit
    if branch is GridCase.INTEGER:
        limit = (chi_one + alpha) * right + (1.0 - alpha - chi_one) * left
    else:
        limit = alpha * right + (1.0 - alpha) * left
    return JumpPrediction(alpha=alpha, predicted_limit=limit, branch=branch, chi_one=chi_one)


@dataclass
class SweepTable:
    """Series values at one jump for several rates and kernels."""

    w: list[float]
    labels: list[str]
    values: dict[str, list[float]]
    limit: float

    def errors(self, label: str) -> list[float]:
        return [abs(v - self.limit) for v in self.values[label]]

    def rows(self):
        for i, w in enumerate(self.w):
            vals = [self.values[k][i] for k in self.labels]
            yield w, vals, [abs(v - self.limit) for v in vals]

    def to_csv(self, decimals: Optional[int] = 4) -> str:
        """CSV text; ``decimals=None`` prints 17 significant digits."""
        def fmt(v: float) -> str:
            return f"{v:.{decimals}f}" if decimals is not None else f"{v:.17g}"

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["w", *self.labels, "limit", *(f"abs_err_{k}" for k in self.labels)])
        for w, vals, errs in self.rows():
            writer.writerow([f"{w:g}", *map(fmt, vals), fmt(self.limit), *map(fmt, errs)])
        return buf.getvalue()


def convergence_sweep(chis: Sequence[Kernel], f: Signal, t: Optional[float],
                      w_list: Sequence[float], *, log_t: Optional[float] = None,
                      limit_kernel: Optional[Kernel] = None) -> SweepTable:
    """Evaluate every kernel at the jump for each rate in ``w_list``.

    The reference limit is predicted from ``limit_kernel`` (default: the
    first kernel).
    """
    if not w_list:
        raise ValueError("w_list must not be empty")
    if not chis:
        raise ValueError("need at least one kernel")
    lt = _log_t(f, t, log_t)
    limit = predict_limit(limit_kernel or chis[0], f, log_t=lt).predicted_limit
    labels = [c.label for c in chis]
    values = {c.label: [kantorovich_series(c, f, None, w, log_t=lt) for w in w_list]
              for c in chis}
    return SweepTable(w=[float(w) for w in w_list], labels=labels, values=values, limit=limit)


@dataclass(frozen=True)
class OscillationReport:
    fractions: tuple[float, ...]
    limits: tuple[float, ...]
    spreads: tuple[float, ...]
    sequences: dict = field(compare=False, repr=False)

    @property
    def gap(self) -> float:
        return max(self.limits) - min(self.limits)

    @property
    def oscillates(self) -> bool:
        return self.gap > 1e-3


def oscillation_probe(chi: Kernel, f: Signal, t: Optional[float],
                      frac_targets: Sequence[float], *, log_t: Optional[float] = None,
                      j_range: tuple[int, int] = (20, 200), tail: int = 5) -> OscillationReport:
    """Follow rates ``w_j = (j + phi)/log t`` so that ``w_j log t`` has fractional part ``phi``.

    Each subsequence limit is the mean of its last ``tail`` terms.
    """
    lt = _log_t(f, t, log_t)
    if lt == 0:
        raise ValueError("t = 1 gives no control over the fractional part")
    for phi in frac_targets:
        if not 0 < phi < 1:
            raise ValueError("fractional targets must lie in (0, 1)")
    js = np.arange(j_range[0], j_range[1] + 1)
    sign = 1.0 if lt > 0 else -1.0
    limits, spreads, seqs = [], [], {}
    for phi in frac_targets:
        # for log t < 0, w log t = -(j + 1 - phi) keeps the fractional part at phi
        offs = js + phi if lt > 0 else js + 1.0 - phi
        ws = sign * offs / lt
        vals = np.array([kantorovich_series(chi, f, None, w, log_t=lt) for w in ws])
        seqs[phi] = (ws, vals)
        last = vals[-tail:]
        limits.append(float(last.mean()))
        spreads.append(float(last.max() - last.min()))
    return OscillationReport(fractions=tuple(frac_targets), limits=tuple(limits),
                             spreads=tuple(spreads), sequences=seqs)
