"""Floating-point Bell numbers B_{r,1}(n), rho sequences and box values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .boson_algebra import bell_sequence
from .errors import InvalidParameters, UnsupportedError
from .series import DEFAULT, SeriesConfig, sum_series
from .special_functions import PFQParams, log_gamma, pfq

__all__ = [
    "B_ZERO",
    "RhoSequence",
    "dobinski_terms",
    "bell_dobinski",
    "bell_hypergeom",
    "rho",
    "box",
]

#: B_{r,1}(0) for every r >= 2, i.e. (e - 1)/e.
B_ZERO = -math.expm1(-1.0)


def _check_int(name: str, value: int, low: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < low:
        raise InvalidParameters(f"{name} must be an integer >= {low}, got {value!r}")


def dobinski_terms(r: int, n: int) -> Iterator[float]:
    """Summands of the Dobiński-type series for B_{r,1}(n), prefactors included.

    For r = 1 these are ``k^n / (e k!)``; for r >= 2 they are
    ``(r-1)^(n-1) Γ(n+c_k) / (e k! Γ(1+c_k))`` with ``c_k = (k+1)/(r-1)``,
    evaluated through log-gamma differences.  Every summand is nonnegative.
    """
    _check_int("r", r, 1)
    _check_int("n", n, 0)
    k = 0
    if r == 1:
        while True:
            if k == 0:
                yield math.exp(-1.0) if n == 0 else 0.0
            else:
                yield math.exp(n * math.log(k) - math.lgamma(k + 1) - 1.0)
            k += 1
    theta = r - 1
    log_pref = (n - 1) * math.log(theta) - 1.0
    while True:
        c = (k + 1) / theta
        yield math.exp(log_pref + log_gamma(n + c) - log_gamma(1.0 + c) - math.lgamma(k + 1))
        k += 1


def bell_dobinski(r: int, n: int, cfg: SeriesConfig = DEFAULT) -> float:
    """B_{r,1}(n) from its Dobiński-type series; n = 0 gives (e-1)/e for r >= 2."""
    return sum_series(dobinski_terms(r, n), cfg, what=f"dobinski(r={r}, n={n})").value


def bell_hypergeom(r: int, n: int, cfg: SeriesConfig = DEFAULT) -> float:
    """B_{2,1}(n) and B_{3,1}(n) through their 1F1 / 1F2 closed forms."""
    _check_int("n", n, 1)
    if r == 2:
        return math.factorial(n) / math.e * pfq(PFQParams((n + 1,), (2,), 1.0), cfg)
    if r == 3:
        left = 2.0 * math.exp(math.lgamma(n + 0.5)) / math.sqrt(math.pi)
        left *= pfq(PFQParams((n + 0.5,), (0.5, 1.5), 0.25), cfg)
        right = math.factorial(n) * pfq(PFQParams((n + 1,), (1.5, 2.0), 0.25), cfg)
        return 2.0 ** (n - 1) / math.e * (left + right)
    raise UnsupportedError(f"no hypergeometric closed form wired for r={r}; only r in (2, 3)")


def rho(r: int, p: int, n: int) -> int:
    """Exact ``rho_p(n) = B_{r,1}(n + p)`` for n + p >= 1."""
    _check_int("r", r, 1)
    _check_int("p", p, 0)
    _check_int("n", n, 0)
    if n + p < 1:
        raise InvalidParameters("rho needs n + p >= 1; B_{r,1}(0) is not an exact integer")
    return bell_sequence(r, n + p)[n + p - 1]


def box(r: int, n: int) -> float:
    """``[n]_r = B_{r,1}(n+1) / B_{r,1}(n)`` for n >= 1."""
    _check_int("r", r, 1)
    _check_int("n", n, 1)
    seq = bell_sequence(r, n + 1)
    return seq[n] / seq[n - 1]


@dataclass(frozen=True)
class RhoSequence:
    """``rho_p(n) = B_{r,1}(n+p)`` for n = 0..length-1.

    ``exact[n]`` is the integer value, or ``None`` at n = 0 when p = 0 and
    r >= 2, where the entry is the non-integral (e-1)/e (``rho0`` may override
    that entry; see :class:`bellstates.coherent_states.CoherentFamily`).
    """

    r: int
    p: int
    length: int
    rho0: float | None = None

    def __post_init__(self):
        _check_int("r", self.r, 1)
        _check_int("p", self.p, 0)
        _check_int("length", self.length, 1)

    @property
    def exact(self) -> tuple[int | None, ...]:
        seq = bell_sequence(self.r, self.length + self.p)
        if self.p >= 1:
            return seq[self.p - 1 : self.p - 1 + self.length]
        head: int | None = 1 if self.r == 1 else None
        return (head,) + seq[: self.length - 1]

    def first(self) -> float:
        if self.rho0 is not None:
            return float(self.rho0)
        head = self.exact[0]
        return float(head) if head is not None else B_ZERO

    def boxes(self) -> tuple[float, ...]:
        """``[n] = rho(n)/rho(n-1)`` for n = 1..length-1; entry 0 is 0 since A|0> = 0."""
        ex = self.exact
        out = [0.0]
        for n in range(1, self.length):
            den = self.first() if n == 1 else ex[n - 1]
            out.append(ex[n] / den)
        return tuple(out)

    def values(self) -> tuple[float, ...]:
        """Floating values; overflow to ``inf`` beyond double range."""
        ex = self.exact
        out = [self.first()]
        for v in ex[1:]:
            try:
                out.append(float(v))
            except OverflowError:
                out.append(math.inf)
        return tuple(out)
