"""Truncation policy and compensated accumulation for infinite series."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ConvergenceError, InvalidParameters

TOL_ENV = "BELLSTATES_TOL"


@dataclass(frozen=True)
class SeriesConfig:
    """How far every infinite series in the package is summed.

    A series is truncated once ``consecutive_small`` successive terms each fall
    below ``rel_tol`` times the running partial sum.
    """

    rel_tol: float = 1e-13
    max_terms: int = 10000
    consecutive_small: int = 3

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-6):
            raise InvalidParameters(f"rel_tol must lie in (0, 1e-6], got {self.rel_tol}")
        if self.max_terms < 10:
            raise InvalidParameters(f"max_terms must be >= 10, got {self.max_terms}")
        if self.consecutive_small < 1:
            raise InvalidParameters("consecutive_small must be >= 1")

    @classmethod
    def from_env(cls, rel_tol: float | None = None) -> "SeriesConfig":
        """Config honouring an explicit tolerance, then ``BELLSTATES_TOL``."""
        if rel_tol is None:
            raw = os.environ.get(TOL_ENV)
            if raw:
                try:
                    rel_tol = float(raw)
                except ValueError:
                    raise InvalidParameters(f"{TOL_ENV}={raw!r} is not a number") from None
        return cls() if rel_tol is None else cls(rel_tol=rel_tol)


DEFAULT = SeriesConfig()


class SeriesSum(NamedTuple):
    value: float
    terms: int
    tail_estimate: float


class Neumaier:
    """Running compensated sum (Neumaier's variant of Kahan summation)."""

    __slots__ = ("total", "comp")

    def __init__(self):
        self.total = 0.0
        self.comp = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.comp += (self.total - t) + x
        else:
            self.comp += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.comp


def sum_series(terms: Iterable[float], cfg: SeriesConfig = DEFAULT, what: str = "series") -> SeriesSum:
    """Sum ``terms`` until the truncation rule of ``cfg`` fires.

    The tail estimate assumes the terms decay at least geometrically once the
    stopping rule fires, which holds for every factorially damped series
    summed here.
    """
    acc = Neumaier()
    small = 0
    prev = None
    count = 0
    for t in terms:
        if count >= cfg.max_terms:
            raise ConvergenceError(f"{what}: no convergence within {cfg.max_terms} terms")
        i = count
        count += 1
        if not math.isfinite(t):
            raise ConvergenceError(f"{what}: non-finite term at index {i}")
        acc.add(t)
        s = acc.value
        if s != 0.0 and abs(t) <= cfg.rel_tol * abs(s):
            small += 1
        else:
            small = 0
        if small >= cfg.consecutive_small:
            tail = 0.0
            if prev is not None and prev != 0.0:
                q = abs(t / prev)
                tail = abs(t) * q / (1.0 - q) if q < 1.0 else math.inf
            if tail <= cfg.rel_tol * abs(s):
                return SeriesSum(s, i + 1, tail)
        prev = t
    # finite iterable exhausted: nothing left to truncate
    return SeriesSum(acc.value, count, 0.0)
