"""Positive measures whose moments are the Bell numbers B_{r,1}(n+p).

For r = 1 the measure is a comb of point masses on the nonnegative integers.
For r >= 2 it has the density

    W_{r,1}(x) = 1/(e θ) · Σ_k (x/θ)^{c_k} e^{-x/θ} / (k! Γ(1 + c_k)),

with θ = r - 1 and c_k = (k + 1)/θ.  Each summand is a gamma density whose
n-th moment is θ^n Γ(n + 1 + c_k)/Γ(1 + c_k), so summing reproduces the
Dobiński-type series of B_{r,1}(n+1) term by term.  The p-shifted measures
are V^{(p)}(x) = x^{p-1} W_{r,1}(x).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from .errors import ConvergenceError, InvalidParameters, TailBoundError, UnsupportedError
from .series import DEFAULT, SeriesConfig, sum_series
from .special_functions import PFQParams, bessel_i_scaled, pfq

if TYPE_CHECKING:
    from .coherent_states import CoherentFamily

__all__ = [
    "Kind",
    "WeightSpec",
    "QuadratureConfig",
    "weight_closed",
    "weight_series",
    "weight",
    "dirac_comb_moment",
    "comb_strengths",
    "moment",
    "weight_tilde",
]


class Kind(enum.Enum):
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class WeightSpec:
    r: int
    p: int = 1

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise InvalidParameters(f"r must be an integer >= 1, got {self.r!r}")
        if not isinstance(self.p, int) or self.p < 0:
            raise InvalidParameters(f"p must be an integer >= 0, got {self.p!r}")

    @property
    def kind(self) -> Kind:
        return Kind.DISCRETE if self.r == 1 else Kind.CONTINUOUS


@dataclass(frozen=True)
class QuadratureConfig:
    """Composite Gauss-Legendre on ``[0, x_max]``.

    ``x_max=None`` selects ``40 (r-1) + 20 m`` for the moment of order m.
    """

    x_max: float | None = None
    panels: int = 64
    points_per_panel: int = 20
    tail_bound_tol: float = 1e-12

    def __post_init__(self):
        if self.panels < 1 or self.points_per_panel < 2:
            raise InvalidParameters("need panels >= 1 and points_per_panel >= 2")
        if self.panels * self.points_per_panel < 64:
            raise InvalidParameters("panels * points_per_panel must be >= 64")
        if self.x_max is not None and not self.x_max > 0:
            raise InvalidParameters("x_max must be positive")

    def cutoff(self, r: int, order: int) -> float:
        if self.x_max is not None:
            return float(self.x_max)
        return 40.0 * (r - 1) + 20.0 * max(order, 0)


# -- closed forms -----------------------------------------------------------

_G23 = math.gamma(2.0 / 3.0)


def weight_closed(r: int, x: float, cfg: SeriesConfig = DEFAULT) -> float:
    """Closed forms of W_{r,1}(x) for r = 2, 3, 4 (Bessel / 0F2 / 0F3)."""
    if not x > 0:
        raise InvalidParameters(f"weight_closed needs x > 0, got {x}")
    if r == 2:
        y = 2.0 * math.sqrt(x)
        # e^{-x-1} sqrt(x) I_1(2 sqrt(x)), with e^{-y} folded into the Bessel series
        return math.exp(y - x - 1.0) * math.sqrt(x) * bessel_i_scaled(1.0, y, cfg)
    if r == 3:
        h = math.sqrt(x / 2.0)
        arg = x / 8.0
        f_a = pfq(PFQParams((), (0.5, 1.5), arg), cfg)
        f_b = pfq(PFQParams((), (1.5, 2.0), arg), cfg)
        return 0.5 * h * math.exp(-x / 2.0 - 1.0) * (2.0 / math.sqrt(math.pi) * f_a + h * f_b)
    if r == 4:
        arg = x / 81.0
        f_a = pfq(PFQParams((), (1 / 3, 2 / 3, 4 / 3), arg), cfg)
        f_b = pfq(PFQParams((), (2 / 3, 4 / 3, 5 / 3), arg), cfg)
        f_c = pfq(PFQParams((), (4 / 3, 5 / 3, 2.0), arg), cfg)
        bracket = (
            3.0 ** (13 / 6) * _G23**2 * x ** (1 / 3) * f_a
            + 3.0 ** (4 / 3) * math.pi * x ** (2 / 3) * f_b
            + math.pi * _G23 * x * f_c
        )
        return math.exp(-x / 3.0 - 1.0) * bracket / (18.0 * math.pi * _G23)
    raise UnsupportedError(f"closed form available only for r in (2, 3, 4), got r={r}")


# -- general series ---------------------------------------------------------


@lru_cache(maxsize=64)
def _log_coeffs(r: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    theta = r - 1
    k = np.arange(count)
    c = (k + 1) / theta
    lg = np.array([math.lgamma(kk + 1) + math.lgamma(1.0 + cc) for kk, cc in zip(k, c)])
    lg += 1.0 + math.log(theta)
    return c, lg


def weight_series(r: int, x, cfg: SeriesConfig = DEFAULT):
    """W_{r,1}(x) for any r >= 2 from its termwise-positive series.

    Accepts a scalar or an array of positive abscissae.
    """
    if not isinstance(r, int) or r < 2:
        raise InvalidParameters(f"weight_series needs integer r >= 2, got {r!r}")
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise InvalidParameters("weight_series needs x > 0")
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    theta = r - 1
    lx = np.log(xa / theta)
    shift = -xa / theta

    c, lg = _log_coeffs(r, cfg.max_terms)
    total = np.zeros_like(xa)
    comp = np.zeros_like(xa)
    small = np.zeros(xa.shape, dtype=int)
    prev = np.zeros_like(xa)
    done = np.zeros(xa.shape, dtype=bool)
    for k in range(cfg.max_terms):
        term = np.exp(c[k] * lx + shift - lg[k])
        t = total + term
        comp += np.where(np.abs(total) >= term, (total - t) + term, (term - t) + total)
        total = t
        s = total + comp
        is_small = (s > 0) & (term <= cfg.rel_tol * s)
        small = np.where(is_small, small + 1, 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(prev > 0, term / prev, 0.0)
            tail = np.where(q < 1.0, term * q / (1.0 - q), np.inf)
        done |= (small >= cfg.consecutive_small) & (tail <= cfg.rel_tol * s)
        prev = term
        if done.all():
            out = total + comp
            return float(out[0]) if scalar else out
    raise ConvergenceError(f"weight_series(r={r}): no convergence within {cfg.max_terms} terms")


def weight(spec: WeightSpec, x, cfg: SeriesConfig = DEFAULT):
    """Density V^{(p)}(x) = x^{p-1} W_{r,1}(x) of a continuous measure."""
    if spec.kind is Kind.DISCRETE:
        raise InvalidParameters("r = 1 is a point-mass comb; use comb_strengths")
    w = weight_series(spec.r, x, cfg)
    return w * np.asarray(x, dtype=float) ** (spec.p - 1) if spec.p != 1 else w


# -- r = 1 comb -------------------------------------------------------------


def comb_strengths(k_max: int, p: int = 1) -> list[tuple[int, float]]:
    """Point masses ``(k, k^p / (e k!))`` of the r = 1 measure for k <= k_max.

    For p >= 1 the k = 0 atom vanishes and the masses equal
    ``k^(p-1) / (e (k-1)!)``; for p = 0 an atom of mass 1/e sits at the origin.
    """
    out = []
    for k in range(k_max + 1):
        if k == 0:
            if p == 0:
                out.append((0, math.exp(-1.0)))
            continue
        out.append((k, math.exp(p * math.log(k) - math.lgamma(k + 1) - 1.0)))
    return out


def _comb_terms(order: int):
    # (1/e) sum_{k>=0} k^order / k!, with 0^0 = 1
    yield math.exp(-1.0) if order == 0 else 0.0
    k = 1
    while True:
        yield math.exp(order * math.log(k) - math.lgamma(k + 1) - 1.0)
        k += 1


def dirac_comb_moment(n: int, cfg: SeriesConfig = DEFAULT) -> float:
    """n-th moment of the comb ``(1/e) Σ_{k>=1} δ(x-k)/(k-1)!``, equal to B_{1,1}(n+1)."""
    if not isinstance(n, int) or n < 0:
        raise InvalidParameters(f"n must be an integer >= 0, got {n!r}")
    return sum_series(_comb_terms(n + 1), cfg, what=f"dirac_comb_moment(n={n})").value


# -- quadrature -------------------------------------------------------------


@lru_cache(maxsize=16)
def _gauss_legendre(points: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(points)


def _panel_nodes(a: float, b: float, points: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = _gauss_legendre(points)
    half = 0.5 * (b - a)
    return a + half * (t + 1.0), half * w


def moment(spec: WeightSpec, n: int, qcfg: QuadratureConfig = QuadratureConfig(),
           cfg: SeriesConfig = DEFAULT) -> float:
    """``∫ x^n V^{(p)}(x) dx``, expected to equal B_{r,1}(n + p).

    Discrete measures are summed exactly.  Continuous ones use composite
    Gauss-Legendre; on the first panel the substitution ``x = t^(r-1)``
    turns the fractional powers ``x^{c_k}`` into integer powers of t, so the
    integrand is smooth even for p = 0.
    """
    if not isinstance(n, int) or n < 0:
        raise InvalidParameters(f"n must be an integer >= 0, got {n!r}")
    order = n + spec.p
    if spec.kind is Kind.DISCRETE:
        return sum_series(_comb_terms(order), cfg, what=f"comb moment {order}").value

    r = spec.r
    theta = r - 1
    m = order - 1
    x_max = qcfg.cutoff(r, m)
    width = x_max / qcfg.panels

    def integrand(x):
        return x**m * weight_series(r, x, cfg)

    # first panel [0, width] in the variable t = x^(1/theta)
    t_nodes, t_w = _panel_nodes(0.0, width ** (1.0 / theta), qcfg.points_per_panel)
    x_first = t_nodes**theta
    jac = theta * t_nodes ** (theta - 1)
    parts = [float(np.dot(t_w, integrand(x_first) * jac))]
    xs, ws = [], []
    for i in range(1, qcfg.panels):
        xn, wn = _panel_nodes(i * width, (i + 1) * width, qcfg.points_per_panel)
        xs.append(xn)
        ws.append(wn)
    xs = np.concatenate(xs) if xs else np.empty(0)
    ws = np.concatenate(ws) if ws else np.empty(0)
    if xs.size:
        vals = integrand(xs) * ws
        # fixed panel order keeps the reduction reproducible
        parts.extend(float(v) for v in vals.reshape(qcfg.panels - 1, -1).sum(axis=1))
    total = math.fsum(parts)

    # tail beyond x_max: integrand must be decaying there at least like
    # e^{-x/(2θ)}, in which case the tail is below 2θ f(x_max)
    f_end = float(integrand(np.array([x_max]))[0])
    f_past = float(integrand(np.array([x_max * 1.05]))[0])
    rate = -math.log(f_past / f_end) / (0.05 * x_max) if f_end > 0 and f_past > 0 else math.inf
    if rate < 1.0 / (2.0 * theta):
        raise TailBoundError(f"integrand not yet decaying at x_max={x_max} (rate {rate:.3g})")
    tail = 2.0 * theta * f_end
    if tail > qcfg.tail_bound_tol * abs(total):
        raise TailBoundError(
            f"tail estimate {tail:.3g} exceeds {qcfg.tail_bound_tol:g} x integral at x_max={x_max}"
        )
    return total


def weight_tilde(spec: WeightSpec, x: float, family: "CoherentFamily",
                 cfg: SeriesConfig = DEFAULT) -> float:
    """Resolution-of-unity density ``W~(x) = V^{(p)}(x) N(x) / π``."""
    if spec.kind is Kind.DISCRETE:
        raise InvalidParameters("r = 1 has no density; the resolution of unity is a comb")
    if family.r != spec.r or family.p != spec.p:
        raise InvalidParameters(
            f"family (r={family.r}, p={family.p}) does not match weight (r={spec.r}, p={spec.p})"
        )
    norm = family.normalization(x, 0, cfg)
    if not math.isfinite(norm):
        raise ConvergenceError(f"normalization overflow at x={x}")
    return float(weight(spec, x, cfg)) * norm / math.pi
