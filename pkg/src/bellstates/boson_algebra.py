"""Exact normal ordering of single-mode boson words.

Everything here works on Python integers, so the generalized Stirling and
Bell numbers come out exact at any size.  A normally ordered monomial
``(a†)^i a^j`` is keyed by the pair ``(i, j)``.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import comb, factorial, perm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import InvalidParameters, ResourceGuardError

__all__ = [
    "Letter",
    "CREATE",
    "ANNIHILATE",
    "Limits",
    "DEFAULT_LIMITS",
    "OperatorPolynomial",
    "BellTable",
    "word_for",
    "normal_order",
    "stirling_exact",
    "bell_exact",
    "build_table",
    "bell_sequence",
]


class Letter(enum.Enum):
    CREATE = "+"
    ANNIHILATE = "-"

    def __repr__(self):
        return "a†" if self is Letter.CREATE else "a"


CREATE = Letter.CREATE
ANNIHILATE = Letter.ANNIHILATE


@dataclass(frozen=True)
class Limits:
    """Desk-scale resource guard for the symbolic engine."""

    max_word_length: int = 200
    max_n: int = 12
    max_r: int = 6


DEFAULT_LIMITS = Limits()


def _monomial_product(i: int, j: int, k: int, l: int) -> Iterable[tuple[tuple[int, int], int]]:
    # (a†)^i a^j (a†)^k a^l = sum_m C(j,m) C(k,m) m! (a†)^(i+k-m) a^(j+l-m)
    for m in range(min(j, k) + 1):
        yield (i + k - m, j + l - m), comb(j, m) * perm(k, m)


@dataclass(frozen=True)
class OperatorPolynomial:
    """Normally ordered polynomial ``sum c_ij (a†)^i a^j`` with integer coefficients."""

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v for k, v in sorted(self.terms.items()) if v != 0}
        object.__setattr__(self, "terms", MappingProxyType(clean))

    @classmethod
    def identity(cls) -> "OperatorPolynomial":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> "OperatorPolynomial":
        return cls({(i, j): coeff})

    def __mul__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        if not isinstance(other, OperatorPolynomial):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                for key, mult in _monomial_product(i, j, k, l):
                    out[key] = out.get(key, 0) + c * d * mult
        return OperatorPolynomial(out)

    def __eq__(self, other):
        if not isinstance(other, OperatorPolynomial):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        body = " + ".join(f"{c}·(a†)^{i} a^{j}" for (i, j), c in self.terms.items())
        return f"OperatorPolynomial({body or '0'})"

    def coefficient(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    def total(self) -> int:
        """Sum of all coefficients."""
        return sum(self.terms.values())

    def fock_action(self, m: int) -> dict[int, Fraction]:
        """Squared matrix elements ``⟨q|P|m⟩²`` as exact fractions, keyed by ``q``.

        ``⟨q|(a†)^i a^j|m⟩ = sqrt(m! q!) / (m-j)!`` with ``q = m-j+i``; all
        coefficients are positive, so squares determine the amplitudes.
        """
        amp: dict[int, Fraction] = {}
        for (i, j), c in self.terms.items():
            if j > m:
                continue
            q = m - j + i
            amp[q] = amp.get(q, Fraction(0)) + Fraction(c, factorial(m - j))
        return {q: v * v * factorial(m) * factorial(q) for q, v in amp.items()}


@dataclass(frozen=True)
class BellTable:
    """Generalized Stirling numbers ``S_{r,s}(n,k)`` and their row sums."""

    r: int
    s: int
    n_max: int
    rows: tuple[Mapping[int, int], ...]  # rows[n-1][k] = S_{r,s}(n,k)

    def stirling(self, n: int, k: int) -> int:
        if not 1 <= n <= self.n_max:
            raise InvalidParameters(f"n={n} outside table range 1..{self.n_max}")
        return self.rows[n - 1].get(k, 0)

    def bell(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise InvalidParameters(f"n={n} outside table range 1..{self.n_max}")
        return sum(self.rows[n - 1].values())

    @property
    def bell_numbers(self) -> tuple[int, ...]:
        return tuple(sum(row.values()) for row in self.rows)


def word_for(r: int, s: int, n: int) -> tuple[Letter, ...]:
    """The word ``[(a†)^r a^s]^n`` as a letter sequence."""
    return ((CREATE,) * r + (ANNIHILATE,) * s) * n


def normal_order(word: Sequence[Letter], limits: Limits = DEFAULT_LIMITS) -> OperatorPolynomial:
    """Normally ordered form of a product of ``a`` and ``a†`` letters.

    The word is consumed left to right; appending ``a†`` to a normally ordered
    monomial uses ``a^j a† = a† a^j + j a^(j-1)``, which is the leftmost
    ``a a† -> a† a + 1`` rewrite applied ``j`` times at once.
    """
    if len(word) > limits.max_word_length:
        raise ResourceGuardError(
            f"word length {len(word)} exceeds limit {limits.max_word_length}"
        )
    poly: dict[tuple[int, int], int] = {(0, 0): 1}
    for letter in word:
        nxt: dict[tuple[int, int], int] = {}
        if letter is ANNIHILATE:
            for (i, j), c in poly.items():
                nxt[(i, j + 1)] = nxt.get((i, j + 1), 0) + c
        elif letter is CREATE:
            for (i, j), c in poly.items():
                nxt[(i + 1, j)] = nxt.get((i + 1, j), 0) + c
                if j:
                    nxt[(i, j - 1)] = nxt.get((i, j - 1), 0) + c * j
        else:
            raise InvalidParameters(f"not a boson letter: {letter!r}")
        poly = nxt
    return OperatorPolynomial(poly)


def _check_rs(r: int, s: int, n: int) -> None:
    if not (isinstance(r, int) and isinstance(s, int) and isinstance(n, int)):
        raise InvalidParameters("r, s, n must be integers")
    if s < 1 or r < s or n < 1:
        raise InvalidParameters(f"need r >= s >= 1 and n >= 1, got r={r}, s={s}, n={n}")


def _guard(r: int, n: int, limits: Limits) -> None:
    if n > limits.max_n or r > limits.max_r:
        raise ResourceGuardError(
            f"(r={r}, n={n}) exceeds desk-scale limits r<={limits.max_r}, n<={limits.max_n}"
        )


@lru_cache(maxsize=None)
def _powers(r: int, s: int, n: int) -> tuple[OperatorPolynomial, ...]:
    # normal forms of [(a†)^r a^s]^m for m = 1..n, each built from the previous
    factor = OperatorPolynomial.monomial(r, s)
    out = [factor]
    for _ in range(n - 1):
        out.append(out[-1] * factor)
    return tuple(out)


def _power(r: int, s: int, n: int) -> OperatorPolynomial:
    return _powers(r, s, n)[n - 1]


def stirling_exact(r: int, s: int, n: int, k: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """Generalized Stirling number ``S_{r,s}(n,k)``; zero outside ``s <= k <= ns``."""
    _check_rs(r, s, n)
    _guard(r, n, limits)
    if not s <= k <= n * s:
        return 0
    return _power(r, s, n).coefficient(n * (r - s) + k, k)


def bell_exact(r: int, s: int, n: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """Generalized Bell number ``B_{r,s}(n) = sum_k S_{r,s}(n,k)``."""
    _check_rs(r, s, n)
    _guard(r, n, limits)
    return _power(r, s, n).total()


def build_table(r: int, s: int, n_max: int, limits: Limits = DEFAULT_LIMITS) -> BellTable:
    _check_rs(r, s, n_max)
    _guard(r, n_max, limits)
    rows = []
    for m, poly in enumerate(_powers(r, s, n_max), start=1):
        shift = m * (r - s)
        row = {}
        for (i, j), c in poly.terms.items():
            assert i - j == shift and s <= j <= m * s
            row[j] = c
        rows.append(MappingProxyType(row))
    return BellTable(r, s, n_max, tuple(rows))


# Scalable path for the coherent-state families, which need B_{r,1}(n) up to
# a few hundred.  Same algebra as _powers, restricted to one row vector.

_seq_lock = threading.Lock()
_seq_state: dict[tuple[int, int], tuple[list[int], list[int]]] = {}


def bell_sequence(r: int, n_max: int, s: int = 1) -> tuple[int, ...]:
    """Exact ``(B_{r,s}(1), ..., B_{r,s}(n_max))`` without the desk-scale guard.

    Rows of ``S_{r,s}(n, .)`` are advanced by one factor at a time using
    ``a^k (a†)^r = sum_l C(k,l) r!/(r-l)! (a†)^(r-l) a^(k-l)``.
    """
    _check_rs(r, s, max(n_max, 1))
    key = (r, s)
    with _seq_lock:
        row, sums = _seq_state.get(key, (None, []))
        if row is None:
            row = [0] * (s + 1)
            row[s] = 1
            sums = [1]
        while len(sums) < n_max:
            new = [0] * (len(row) + s)
            for k, c in enumerate(row):
                if not c:
                    continue
                for l in range(min(k, r) + 1):
                    new[k - l + s] += c * comb(k, l) * perm(r, l)
            row = new
            sums.append(sum(row))
        _seq_state[key] = (row, sums)
        return tuple(sums[:n_max])
