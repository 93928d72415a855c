"""Sampling kernels on the positive half-line.

Every kernel is handled in log coordinates: ``eval_log(lam)`` returns
``chi(exp(lam))``.  Sampling arguments of the form ``exp(-k) * t**w`` then
become the real numbers ``w*log(t) - k``, which keeps large rates finite and
makes node hits (``w*log(t)`` integral) exact.
"""

from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate

#: Absolute tolerance for deciding that a log-domain argument sits on a lattice point.
LOG_ATOL = 1e-12
TAIL_TOL = 1e-12
TAIL_BLOCK = 16
TAIL_CAP = 100_000
MOMENT_GRID_SIZE = 2048
FSUM_MAX = 4096

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)


class TailWarning(RuntimeWarning):
    """A truncated lattice sum over an unbounded kernel did not meet the tail test."""


@dataclass(frozen=True)
class Kernel:
    """Kernel ``chi`` on ``(0, inf)``, stored through its log-domain profile.

    Parameters
    ----------
    density : callable
        Vectorised ``lam -> chi(exp(lam))`` without point masses.
    support_log : (float, float) or None
        Closed log-domain interval outside which the kernel vanishes;
        ``None`` means unbounded support.
    continuous : bool
    alpha : float, optional
        Jump parameter, when the kernel was built to have a constant
        ``psi_minus`` on the fundamental interval.
    label : str
    knots : tuple of float
        Log-domain points where the profile is not smooth (quadrature splits).
    point_masses : tuple of (float, float)
        Isolated values ``(lam, value)`` added on top of ``density``.
    """

    density: Callable[[np.ndarray], np.ndarray]
    support_log: Optional[tuple[float, float]]
    continuous: bool = True
    alpha: Optional[float] = None
    label: str = ""
    knots: tuple[float, ...] = ()
    point_masses: tuple[tuple[float, float], ...] = field(default=())

    @property
    def bounded(self) -> bool:
        return self.support_log is not None

    def eval_log(self, lam):
        lam = np.asarray(lam, dtype=float)
        out = np.asarray(self.density(lam), dtype=float) * np.ones_like(lam)
        if self.support_log is not None:
            lo, hi = self.support_log
            out = np.where((lam >= lo) & (lam <= hi), out, 0.0)
        for where, value in self.point_masses:
            out = out + np.where(np.abs(lam - where) <= LOG_ATOL, value, 0.0)
        return out[()] if out.ndim == 0 else out

    def smooth_log(self, lam):
        """Profile without point masses (what integrals see)."""
        lam = np.asarray(lam, dtype=float)
        out = np.asarray(self.density(lam), dtype=float) * np.ones_like(lam)
        if self.support_log is not None:
            lo, hi = self.support_log
            out = np.where((lam >= lo) & (lam <= hi), out, 0.0)
        return out

    def __call__(self, u):
        return self.eval_log(np.log(u))


# ---------------------------------------------------------------------------
# lattice sums


def lattice_indices(kernel: Kernel, x: float, tol: float = TAIL_TOL,
                    term: Optional[Callable[[np.ndarray], np.ndarray]] = None):
    """Indices ``k`` (ascending) whose argument ``x - k`` matters.

    For bounded support the range is exact.  Otherwise the window
    ``|k - x| <= K`` is doubled until the outermost block of
    ``TAIL_BLOCK`` terms on each side contributes less than ``tol``;
    ``term`` defaults to ``|chi|``.

    Returns
    -------
    ks : ndarray of int
    converged : bool
    """
    if kernel.bounded:
        lo, hi = kernel.support_log
        k0 = math.ceil(x - hi - LOG_ATOL)
        k1 = math.floor(x - lo + LOG_ATOL)
        return np.arange(k0, k1 + 1), True

    if term is None:
        def term(lam):
            return np.abs(kernel.eval_log(lam))
    centre = math.floor(x)
    half = 64
    block = np.arange(TAIL_BLOCK)
    while True:
        # only the two outermost blocks decide whether the window is wide enough
        left = float(np.sum(term(x - (centre - half + block))))
        right = float(np.sum(term(x - (centre + half - block))))
        done = left < tol and right < tol
        if done or half >= TAIL_CAP:
            return np.arange(centre - half, centre + half + 1), done
        half = min(2 * half, TAIL_CAP)


def _lattice_sum(kernel, x, tol=TAIL_TOL, term=None, k_filter=None):
    ks, ok = lattice_indices(kernel, x, tol, term)
    if k_filter is not None:
        ks = ks[k_filter(ks)]
    vals = np.atleast_1d(term(x - ks) if term is not None else kernel.eval_log(x - ks))
    if vals.size > FSUM_MAX:
        # pairwise rounding (~eps log n) is far below the tail tolerance of such sums
        return float(np.sum(vals)), ok
    return math.fsum(vals), ok


def _warn_tail(what: str) -> None:
    warnings.warn(f"{what}: tail truncated at |k| <= {TAIL_CAP} without "
                  "meeting the tail tolerance", TailWarning, stacklevel=3)


def _resolve_log(u, log_u):
    if log_u is not None:
        return float(log_u)
    if u is None or u <= 0:
        raise ValueError("u must be a positive real")
    return math.log(u)


def partition_sum(kernel: Kernel, u=None, *, log_u=None, tol=TAIL_TOL) -> float:
    """``sum_k chi(exp(-k) u)``; equals 1 for a valid kernel."""
    lam = _resolve_log(u, log_u)
    s, ok = _lattice_sum(kernel, lam, tol)
    if not ok:
        _warn_tail("partition sum")
    return s


def _split_index(lam: float):
    """Integer ``m`` if ``lam`` is a lattice point, else ``None``."""
    m = round(lam)
    return m if abs(lam - m) <= LOG_ATOL else None


def psi_minus(kernel: Kernel, u=None, *, log_u=None, tol=TAIL_TOL) -> float:
    """``sum_{k > log u} chi(u exp(-k))``."""
    lam = _resolve_log(u, log_u)
    m = _split_index(lam)
    first = m + 1 if m is not None else math.floor(lam) + 1
    s, ok = _lattice_sum(kernel, lam, tol, k_filter=lambda ks: ks >= first)
    if not ok:
        _warn_tail("psi_minus")
    return s


def psi_plus(kernel: Kernel, u=None, *, log_u=None, tol=TAIL_TOL) -> float:
    """``sum_{k < log u} chi(u exp(-k))``."""
    lam = _resolve_log(u, log_u)
    m = _split_index(lam)
    last = m - 1 if m is not None else math.floor(lam)
    s, ok = _lattice_sum(kernel, lam, tol, k_filter=lambda ks: ks <= last)
    if not ok:
        _warn_tail("psi_plus")
    return s


# ---------------------------------------------------------------------------
# moments


@dataclass(frozen=True)
class MomentReport:
    nu: float
    sup_value: float
    grid: np.ndarray
    per_u: np.ndarray
    converged: bool


def default_u_grid(n: int = MOMENT_GRID_SIZE) -> np.ndarray:
    """Uniform log-grid over one fundamental interval ``[1, e)``."""
    return np.exp(np.arange(n) / n)


def absolute_moment(kernel: Kernel, nu: float, u_grid: Optional[Sequence[float]] = None,
                    tol: float = TAIL_TOL) -> MomentReport:
    """Absolute moment ``M_nu(chi, u)`` on a grid and its supremum.

    Non-convergent tails make ``sup_value`` infinite and clear
    ``converged``; grid points from the first divergent one on report inf.
    """
    if nu < 0:
        raise ValueError("nu must be >= 0")
    grid = default_u_grid() if u_grid is None else np.asarray(u_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty u grid")
    if np.any(grid <= 0):
        raise ValueError("u grid must be positive")

    def term(lam):
        return np.abs(kernel.eval_log(lam)) * np.abs(lam) ** nu

    # one divergent point already makes the supremum infinite
    per_u = np.full(grid.size, math.inf)
    converged = True
    for i, lam in enumerate(np.log(grid)):
        per_u[i], converged = _lattice_sum(kernel, float(lam), tol, term=term)
        if not converged:
            per_u[i] = math.inf
            break
    sup = float(per_u.max()) if converged else math.inf
    return MomentReport(nu=nu, sup_value=sup, grid=grid, per_u=per_u, converged=converged)


# ---------------------------------------------------------------------------
# Mellin coefficients

_HALVES = {"lower": (-math.inf, 0.0), "upper": (0.0, math.inf), "full": (-math.inf, math.inf)}


def _gl_integral(g, a: float, b: float) -> complex:
    mid, rad = 0.5 * (a + b), 0.5 * (b - a)
    return rad * np.sum(_GL_WEIGHTS * g(mid + rad * _GL_NODES))


def _fourier_half_line(g, omega: float, sign: int) -> complex:
    """``int_0^inf g(sign*s) exp(i*omega*sign*s) ds``."""
    h = (lambda s: g(sign * s))
    opts = dict(limit=2000, epsabs=1e-13)
    if omega == 0:
        return complex(integrate.quad(h, 0, np.inf, **opts)[0])
    re = integrate.quad(h, 0, np.inf, weight="cos", wvar=omega, limlst=200)[0]
    im = integrate.quad(h, 0, np.inf, weight="sin", wvar=omega, limlst=200)[0]
    return complex(re, sign * im)


def mellin_coefficient(kernel: Kernel, k: int, half: str = "full") -> complex:
    """``int chi(u) u^{2 k pi i} du/u`` over ``(0,1)``, ``(1,inf)`` or ``(0,inf)``.

    Substituting ``u = exp(lam)`` turns this into a Fourier integral of the
    log-domain profile.  Point masses carry no weight.
    """
    if half not in _HALVES:
        raise ValueError(f"half must be one of {sorted(_HALVES)}")
    lo, hi = _HALVES[half]
    omega = 2.0 * math.pi * k

    def g(lam):
        return kernel.smooth_log(lam) * np.exp(1j * omega * lam)

    if kernel.bounded:
        a, b = kernel.support_log
        a, b = max(a, lo), min(b, hi)
        if a >= b:
            return 0j
        cuts = sorted({a, b, *(q for q in kernel.knots if a < q < b)})
        return complex(sum(_gl_integral(g, p, q) for p, q in zip(cuts, cuts[1:])))

    def real_profile(lam):
        return kernel.smooth_log(np.asarray(lam, dtype=float))

    total = 0j
    if lo < 0:
        total += _fourier_half_line(real_profile, omega, -1)
    if hi > 0:
        total += _fourier_half_line(real_profile, omega, +1)
    return total


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class KernelReport:
    label: str
    partition_residual: float
    partition_converged: bool
    m0: float
    nu: float
    m_nu: float
    max_abs_fundamental: float
    vanishes_on_unit: bool
    psi_minus_min: float
    psi_minus_max: float
    moments_converged: bool = True

    @property
    def psi_minus_constant(self) -> bool:
        return self.psi_minus_max - self.psi_minus_min < 1e-10

    @property
    def alpha(self) -> Optional[float]:
        """Common value of ``psi_minus`` on ``[1, e)`` when constant."""
        return self.psi_minus_min if self.psi_minus_constant else None


def vanishes_on_unit(kernel: Kernel, n: int = 1000) -> bool:
    """True when ``chi(u) = 0`` for ``u`` in ``[1, e)`` (log-domain ``[0, 1)``)."""
    lam = np.arange(n) / n
    return bool(np.all(np.abs(kernel.eval_log(lam)) <= 1e-14))


def psi_minus_profile(kernel: Kernel, n: int = 512, include_one: bool = True) -> np.ndarray:
    """``psi_minus`` along ``[1, e)`` (or ``(1, e)`` without ``u = 1``)."""
    lam = np.arange(n) / n if include_one else (np.arange(n) + 0.5) / n
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TailWarning)
        return np.array([psi_minus(kernel, log_u=float(v)) for v in lam])


def validate_kernel(kernel: Kernel, u_grid: Optional[Sequence[float]] = None,
                    nu: float = 0.5) -> KernelReport:
    """Check the kernel conditions numerically (report only, never raises)."""
    grid = default_u_grid(1000) if u_grid is None else np.asarray(u_grid, dtype=float)
    residual = 0.0
    converged = True
    for lam in np.log(grid):
        s, ok = _lattice_sum(kernel, float(lam))
        residual = max(residual, abs(s - 1.0))
        converged &= ok
    m0 = absolute_moment(kernel, 0.0, grid)
    mnu = absolute_moment(kernel, nu, grid)
    fund = np.linspace(-1.0, 1.0, 2001)
    psi = psi_minus_profile(kernel)
    return KernelReport(
        label=kernel.label,
        partition_residual=residual,
        partition_converged=converged,
        m0=m0.sup_value if m0.converged else math.inf,
        nu=nu,
        m_nu=mnu.sup_value,
        max_abs_fundamental=float(np.max(np.abs(kernel.eval_log(fund)))),
        vanishes_on_unit=vanishes_on_unit(kernel),
        psi_minus_min=float(psi.min()),
        psi_minus_max=float(psi.max()),
        moments_converged=m0.converged and mnu.converged,
    )


# ---------------------------------------------------------------------------
# constructors


def make_bspline(n: int) -> Kernel:
    """Mellin B-spline of order ``n``, supported on ``[-n/2, n/2]`` in log-domain.

    Uses the truncated-power form with exponent ``n - 1``; for ``n = 2`` this is
    ``1 - |log x|`` on ``(1/e, e)``.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("B-spline order must be a positive integer")
    n = int(n)
    coef = [(-1) ** j * math.comb(n, j) / math.factorial(n - 1) for j in range(n + 1)]

    def density(lam):
        lam = np.asarray(lam, dtype=float)
        out = np.zeros_like(lam)
        for j, c in enumerate(coef):
            s = n / 2 + lam - j
            if n == 1:
                out = out + c * (s >= 0)
            else:
                out = out + c * np.where(s > 0, s, 0.0) ** (n - 1)
        return out

    half = n / 2
    return Kernel(
        density=density,
        support_log=(-half, half),
        continuous=n >= 2,
        label=f"bspline:{n}",
        knots=tuple(-half + j for j in range(n + 1)),
    )


_JACKSON_CACHE: dict[int, float] = {}
_JACKSON_LOCK = threading.Lock()


def _sinc_power_integral(beta: int) -> float:
    """``int_R sinc(x)^(2 beta) dx`` with the normalised sinc.

    Gauss-Legendre on the unit cells between zeros, cut where the envelope
    ``(pi x)^(-2 beta)`` drops below 1e-14 (at most 1e5 cells), plus the
    mean-envelope tail beyond the cut.
    """
    p = 2 * beta
    cells = int(min(math.ceil(1e-14 ** (-1.0 / p) / math.pi), TAIL_CAP))
    nodes, weights = np.polynomial.legendre.leggauss(32)
    x = (np.arange(cells)[:, None] + 0.5) + 0.5 * nodes[None, :]
    body = 0.5 * float(np.sum(weights * np.sinc(x) ** p))
    mean_sin = math.comb(p, beta) / 4.0 ** beta
    tail = mean_sin * math.pi ** (-p) * cells ** (1 - p) / (p - 1)
    return 2.0 * (body + tail)


def jackson_normaliser(gamma: float, beta: int) -> float:
    """``d_{gamma,beta}`` making the Jackson kernel integrate to 1 against du/u."""
    with _JACKSON_LOCK:
        if beta not in _JACKSON_CACHE:
            _JACKSON_CACHE[beta] = _sinc_power_integral(beta)
        base = _JACKSON_CACHE[beta]
    return 1.0 / (2.0 * gamma * beta * math.pi * base)


def make_jackson(gamma: float, beta: int) -> Kernel:
    """Mellin-Jackson kernel ``d * sinc^(2 beta)(log u / (2 gamma beta pi))`` (c = 0)."""
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    if not isinstance(beta, (int, np.integer)) or beta < 1:
        raise ValueError("beta must be a positive integer")
    beta = int(beta)
    d = jackson_normaliser(gamma, beta)
    scale = 2.0 * gamma * beta * math.pi

    def density(lam):
        return d * np.sinc(np.asarray(lam, dtype=float) / scale) ** (2 * beta)

    return Kernel(density=density, support_log=None, continuous=True,
                  label=f"jackson:{gamma:g}:{beta}")


def shift_kernel(base: Kernel, shift: float, label: Optional[str] = None) -> Kernel:
    """``lam -> base.eval_log(lam - shift)``."""
    sup = None
    if base.support_log is not None:
        sup = (base.support_log[0] + shift, base.support_log[1] + shift)
    return Kernel(
        density=lambda lam: base.smooth_log(np.asarray(lam, dtype=float) - shift),
        support_log=sup,
        continuous=base.continuous,
        alpha=None,
        label=label or f"shift:{shift:g}:{base.label}",
        knots=tuple(q + shift for q in base.knots),
        point_masses=tuple((p + shift, v) for p, v in base.point_masses),
    )


def make_composite(chi_a: Kernel, a: float, chi_b: Kernel, b: float, alpha: float,
                   label: Optional[str] = None) -> Kernel:
    """``(1-alpha) chi_a(u e^{-a-1}) + alpha chi_b(u e^{b})``.

    Both parts must be supported in ``[-a, a]`` and ``[-b, b]`` (log-domain);
    the result then vanishes on ``[1, e)``.
    """
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    for chi, r, name in ((chi_a, a, "chi_a"), (chi_b, b, "chi_b")):
        if chi.support_log is None:
            raise ValueError(f"{name} must have bounded support")
        lo, hi = chi.support_log
        if lo < -r - LOG_ATOL or hi > r + LOG_ATOL:
            raise ValueError(f"{name} support {chi.support_log} not inside [-{r:g}, {r:g}]")
    left = shift_kernel(chi_a, a + 1.0)
    right = shift_kernel(chi_b, -b)

    def density(lam):
        return (1.0 - alpha) * left.eval_log(lam) + alpha * right.eval_log(lam)

    support = (min(left.support_log[0], right.support_log[0]),
               max(left.support_log[1], right.support_log[1]))
    knots = {*left.knots, *right.knots, *left.support_log, *right.support_log}
    return Kernel(
        density=density,
        support_log=support,
        continuous=chi_a.continuous and chi_b.continuous,
        alpha=float(alpha),
        label=label or f"composite:{chi_a.label},{a:g},{chi_b.label},{b:g},{alpha:g}",
        knots=tuple(sorted(knots)),
    )


THETA_MASSES = ((1.0, 1.0), (-1.0, 1.0), (2.0, -1.0), (-2.0, -1.0))


def make_theta_perturbed(base: Kernel, label: Optional[str] = None) -> Kernel:
    """Add +1 at ``u = e, 1/e`` and -1 at ``u = e^2, e^-2``.

    The masses cancel in every lattice sum through a power of ``e`` and never
    touch ``[1, e)``; the kernel is no longer continuous.
    """
    sup = base.support_log
    if sup is not None:
        sup = (min(sup[0], -2.0), max(sup[1], 2.0))
    return Kernel(
        density=base.smooth_log,
        support_log=sup,
        continuous=False,
        alpha=base.alpha,
        label=label or f"theta:{base.label}",
        knots=base.knots,
        point_masses=base.point_masses + THETA_MASSES,
    )


def make_power_tail(p: float, c: float = 1.0, m: float = 1.0) -> Kernel:
    """Probe kernel with ``chi(u) = c/|log u|^p`` for ``|log u| > m`` and ``c/m^p`` inside.

    Not normalised; only used to exercise the moment tail test.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")

    def density(lam):
        r = np.maximum(np.abs(np.asarray(lam, dtype=float)), m)
        return c / r ** p

    return Kernel(density=density, support_log=None, label=f"powertail:{p:g}")


def make_chi_c() -> Kernel:
    b2 = make_bspline(2)
    return make_composite(b2, 1.0, b2, 1.0, 0.6, label="chi_c")


def make_chi_d() -> Kernel:
    return make_theta_perturbed(make_chi_c(), label="chi_d")


# ---------------------------------------------------------------------------
# registry


def get_kernel(spec: str) -> Kernel:
    """Build a kernel from a string id.

    ``bspline:N``, ``jackson:GAMMA:BETA``, ``chi_c``, ``chi_d``,
    ``shift:S:ID``, ``theta:ID``, ``powertail:P`` and
    ``composite:ID_A,A,ID_B,B,ALPHA``.
    """
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    try:
        if spec == "chi_c":
            return make_chi_c()
        if spec == "chi_d":
            return make_chi_d()
        if head == "bspline":
            return make_bspline(int(rest))
        if head == "jackson":
            g, b = rest.split(":")
            return make_jackson(float(g), int(b))
        if head == "shift":
            s, _, base = rest.partition(":")
            return shift_kernel(get_kernel(base), float(s))
        if head == "theta":
            return make_theta_perturbed(get_kernel(rest))
        if head == "powertail":
            return make_power_tail(float(rest))
        if head == "composite":
            ida, a, idb, b, alpha = rest.split(",")
            return make_composite(get_kernel(ida), float(a), get_kernel(idb), float(b),
                                  float(alpha))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad kernel id {spec!r}: {exc}") from exc
    raise ValueError(f"unknown kernel id {spec!r}")
