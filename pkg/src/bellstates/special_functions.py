"""Numerical kernels: log-gamma, generalized hypergeometric series, modified Bessel I."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, InvalidParameters
from .series import DEFAULT, SeriesConfig, sum_series

__all__ = ["PFQParams", "log_gamma", "pfq", "bessel_i", "bessel_i_scaled"]


def log_gamma(x: float) -> float:
    """Natural log of Γ(x) for x > 0."""
    if not x > 0:
        raise InvalidParameters(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _is_nonpositive_integer(b: float) -> bool:
    return b <= 0 and float(b).is_integer()


@dataclass(frozen=True)
class PFQParams:
    upper: tuple[float, ...] = ()
    lower: tuple[float, ...] = ()
    argument: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise InvalidParameters(f"pole in denominator parameter {b}")

    @property
    def order(self) -> tuple[int, int]:
        return len(self.upper), len(self.lower)


def _pfq_terms(params: PFQParams):
    x = params.argument
    term = 1.0
    k = 0
    while True:
        yield term
        num = 1.0
        for a in params.upper:
            num *= a + k
        den = float(k + 1)
        for b in params.lower:
            den *= b + k
        term *= num * x / den
        k += 1


def pfq(params: PFQParams, cfg: SeriesConfig = DEFAULT) -> float:
    """``pFq(upper; lower; x)`` by its ascending series, for x >= 0 and p <= q + 1.

    Terms are generated by the ratio recurrence, one multiply/divide per
    parameter per term.
    """
    p, q = params.order
    if p > q + 1:
        raise InvalidParameters(f"{p}F{q} series diverges; need p <= q + 1")
    x = params.argument
    if x < 0:
        raise InvalidParameters(f"pfq argument must be >= 0, got {x}")
    if p == q + 1 and x >= 1:
        raise InvalidParameters(f"{p}F{q} series needs x < 1, got {x}")
    if x == 0:
        return 1.0
    return sum_series(_pfq_terms(params), cfg, what=f"{p}F{q}").value


def _bessel_terms(nu: float, y: float, log_scale: float):
    # (y/2)^(2k+nu) / (k! Γ(k+nu+1)), first term taken through logs
    if y == 0.0:
        yield math.exp(log_scale) if nu == 0 else 0.0
        return
    half = 0.5 * y
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0) + log_scale)
    q = half * half
    k = 0
    while True:
        yield term
        k += 1
        term *= q / (k * (k + nu))


def bessel_i(nu: float, y: float, cfg: SeriesConfig = DEFAULT) -> float:
    """Modified Bessel function of the first kind I_nu(y), nu >= 0, y >= 0."""
    if nu < 0 or y < 0:
        raise InvalidParameters("bessel_i needs nu >= 0 and y >= 0")
    return sum_series(_bessel_terms(nu, y, 0.0), cfg, what="bessel_i").value


def bessel_i_scaled(nu: float, y: float, cfg: SeriesConfig = DEFAULT) -> float:
    """``exp(-y) I_nu(y)``, with the exponential folded into the first term."""
    if nu < 0 or y < 0:
        raise InvalidParameters("bessel_i_scaled needs nu >= 0 and y >= 0")
    if y > 700:
        raise ConvergenceError(f"bessel_i_scaled: y={y} beyond overflow guard 700")
    return sum_series(_bessel_terms(nu, y, -y), cfg, what="bessel_i_scaled").value
