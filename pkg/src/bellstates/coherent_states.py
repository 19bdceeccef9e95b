"""Coherent-state families built on rho_p(n) = B_{r,1}(n+p) and their observables.

A family fixes the Fock amplitudes ``z^n / sqrt(rho(n))``.  Every observable
here is a ratio of power series in ``x = |z|^2`` whose terms are generated by
the box recurrence ``x^n/rho(n) = x^(n-1)/rho(n-1) * x/[n]``, so the huge
integers rho(n) never enter floating point directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import ConvergenceError, InvalidParameters
from .sequences import RhoSequence
from .series import DEFAULT, Neumaier, SeriesConfig, sum_series

__all__ = [
    "VARIANCE_DIVISOR",
    "RHO0_CONVENTIONS",
    "CoherentFamily",
    "StateVector",
    "DeformedOscillator",
    "normalization",
    "mandel_q",
    "mean_number",
    "expectation_a_power",
    "squeezing",
    "snr",
    "metric_factor",
    "state_vector",
    "eigenvalue_residual",
    "box_commutator_check",
]

#: Quadratures are Q = a + a†, P = (a - a†)/i; the squeezing measures are
#: variance / VARIANCE_DIVISOR, so conventional coherent states sit at 1/2.
VARIANCE_DIVISOR = 2.0

#: How rho_0(0) is fixed for the p = 0 families with r >= 2:
#: "moment" uses B_{r,1}(0) = (e-1)/e, the zeroth moment of V^(0);
#: "operator" uses 1, the n = 0 power of the normally ordered word.
RHO0_CONVENTIONS = ("moment", "operator")

_CHUNK = 64


@lru_cache(maxsize=128)
def _box_table(r: int, p: int, rho0: str, size: int) -> tuple[tuple[float, ...], float]:
    if r == 0:
        return tuple(float(n) for n in range(size)), 1.0
    override = 1.0 if (p == 0 and r >= 2 and rho0 == "operator") else None
    seq = RhoSequence(r, p, size, rho0=override)
    return seq.boxes(), seq.first()


@dataclass(frozen=True)
class CoherentFamily:
    """The states ``|z> ∝ sum_n z^n / sqrt(rho_p(n)) |n>``.

    ``r = 0`` is reserved for the conventional family rho(n) = n!; build it
    with :meth:`conventional`.
    """

    r: int
    p: int = 1
    n_fock_max: int = 1024
    rho0: str = "moment"

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 0:
            raise InvalidParameters(f"r must be an integer >= 1, got {self.r!r}")
        if not isinstance(self.p, int) or self.p < 0:
            raise InvalidParameters(f"p must be an integer >= 0, got {self.p!r}")
        if self.n_fock_max < 8:
            raise InvalidParameters("n_fock_max must be >= 8")
        if self.rho0 not in RHO0_CONVENTIONS:
            raise InvalidParameters(f"rho0 must be one of {RHO0_CONVENTIONS}, got {self.rho0!r}")

    @classmethod
    def combinatorial(cls, r: int, p: int = 1, **kw) -> "CoherentFamily":
        if not isinstance(r, int) or r < 1:
            raise InvalidParameters(f"r must be an integer >= 1, got {r!r}")
        return cls(r, p, **kw)

    @classmethod
    def conventional(cls, **kw) -> "CoherentFamily":
        return cls(0, 0, **kw)

    @property
    def is_conventional(self) -> bool:
        return self.r == 0

    @property
    def label(self) -> str:
        return "conventional" if self.is_conventional else f"r={self.r},p={self.p}"

    def rho_first(self) -> float:
        """rho(0) as a float."""
        return _box_table(self.r, self.p, self.rho0, _CHUNK)[1]

    def boxes(self, size: int) -> tuple[float, ...]:
        """``[n] = rho(n)/rho(n-1)`` for n < size (entry 0 is 0)."""
        if size > self.n_fock_max + 1:
            raise ConvergenceError(
                f"{self.label}: truncation needs more than n_fock_max={self.n_fock_max} Fock levels"
            )
        chunk = _CHUNK
        while chunk < size:
            chunk *= 2
        return _box_table(self.r, self.p, self.rho0, min(chunk, self.n_fock_max + 1))[0]

    def box_iter(self) -> Iterator[tuple[int, float]]:
        """Yield ``(n, [n])`` for n = 1, 2, ... up to n_fock_max."""
        n = 1
        size = _CHUNK
        while True:
            table = self.boxes(min(size, self.n_fock_max + 1))
            while n < len(table):
                yield n, table[n]
                n += 1
            if len(table) >= self.n_fock_max + 1:
                raise ConvergenceError(
                    f"{self.label}: series not converged within n_fock_max={self.n_fock_max}"
                )
            size *= 2

    def normalization(self, x: float, derivative_order: int = 0, cfg: SeriesConfig = DEFAULT) -> float:
        return normalization(self, x, derivative_order, cfg)


@dataclass(frozen=True)
class DeformedOscillator:
    """Box values of the deformed annihilator ``A|n> = sqrt([n]) |n-1>``."""

    family: CoherentFamily
    size: int = 32

    @property
    def box(self) -> tuple[float, ...]:
        return self.family.boxes(self.size)[: self.size]

    def factorial(self, n: int) -> float:
        """``[1][2]...[n] = rho(n)/rho(0)``."""
        return math.prod(self.box[1 : n + 1])


def _check_x(x: float) -> float:
    x = float(x)
    if not (x >= 0 and math.isfinite(x)):
        raise InvalidParameters(f"x must be finite and >= 0, got {x}")
    return x


def _derivative_terms(family: CoherentFamily, x: float, d: int) -> Iterator[float]:
    # n!/(n-d)! * x^(n-d) / rho(n) for n >= d
    g = 1.0 / family.rho_first()
    falling = float(math.factorial(d))
    for n, b in family.box_iter():
        if n <= d:
            g /= b
            continue
        if n == d + 1:
            yield falling * g
        g *= x / b
        falling = falling * n / (n - d)
        yield falling * g


def normalization(family: CoherentFamily, x: float, derivative_order: int = 0,
                  cfg: SeriesConfig = DEFAULT) -> float:
    """N(x) = sum_n x^n / rho(n), or its first or second derivative, termwise."""
    x = _check_x(x)
    if derivative_order not in (0, 1, 2):
        raise InvalidParameters("derivative_order must be 0, 1 or 2")
    what = f"N^({derivative_order}) for {family.label} at x={x}"
    return sum_series(_derivative_terms(family, x, derivative_order), cfg, what=what).value


def _n012(family, x, cfg):
    return tuple(normalization(family, x, d, cfg) for d in (0, 1, 2))


def mandel_q(family: CoherentFamily, x: float, cfg: SeriesConfig = DEFAULT) -> float:
    """Q(x) = x (N''/N' - N'/N); negative is sub-Poissonian, positive super-Poissonian."""
    x = _check_x(x)
    if x == 0:
        return 0.0
    n0, n1, n2 = _n012(family, x, cfg)
    return x * (n2 / n1 - n1 / n0)


def mean_number(family: CoherentFamily, x: float, cfg: SeriesConfig = DEFAULT) -> float:
    """<a†a> = x N'(x)/N(x)."""
    x = _check_x(x)
    return x * normalization(family, x, 1, cfg) / normalization(family, x, 0, cfg)


def metric_factor(family: CoherentFamily, x: float, cfg: SeriesConfig = DEFAULT) -> float:
    """omega(x) = (x N'/N)' = (N' + x N'')/N - x (N'/N)^2."""
    x = _check_x(x)
    n0, n1, n2 = _n012(family, x, cfg)
    return (n1 + x * n2) / n0 - x * (n1 / n0) ** 2


def _a_power_terms(family: CoherentFamily, x: float, m: int) -> Iterator[float]:
    # x^n/rho(n) * sqrt(prod_{j=n+1}^{n+m} j/[j])
    a = 1.0 / family.rho_first()
    ahead = family.box_iter()
    window = [j / b for j, b in (next(ahead) for _ in range(m))]
    for _, b in family.box_iter():
        yield a * math.sqrt(math.prod(window))
        a *= x / b
        j, bj = next(ahead)
        window = window[1:] + [j / bj]


def expectation_a_power(family: CoherentFamily, z: complex, m: int,
                        cfg: SeriesConfig = DEFAULT) -> complex:
    """<z| a^m |z>; the adjoint moment <z|(a†)^m|z> is its complex conjugate."""
    if not isinstance(m, int) or m < 0:
        raise InvalidParameters(f"m must be an integer >= 0, got {m!r}")
    z = complex(z)
    if m == 0:
        return 1.0 + 0.0j
    x = abs(z) ** 2
    what = f"<a^{m}> for {family.label} at z={z}"
    s = sum_series(_a_power_terms(family, x, m), cfg, what=what).value
    return z**m * s / normalization(family, x, 0, cfg)


def _quadrature_variances(family, z, cfg):
    z = complex(z)
    x = abs(z) ** 2
    a1 = expectation_a_power(family, z, 1, cfg)
    a2 = expectation_a_power(family, z, 2, cfg)
    nbar = mean_number(family, x, cfg)
    mean_q = 2.0 * a1.real
    mean_p = 2.0 * a1.imag
    var_q = 2.0 * a2.real + 2.0 * nbar + 1.0 - mean_q**2
    var_p = -2.0 * a2.real + 2.0 * nbar + 1.0 - mean_p**2
    return mean_q, var_q, var_p


def squeezing(family: CoherentFamily, z: complex, cfg: SeriesConfig = DEFAULT) -> tuple[float, float]:
    """``(S_Q, S_P)``: quadrature variances divided by :data:`VARIANCE_DIVISOR`."""
    _, var_q, var_p = _quadrature_variances(family, z, cfg)
    return var_q / VARIANCE_DIVISOR, var_p / VARIANCE_DIVISOR


def snr(family: CoherentFamily, z: complex, cfg: SeriesConfig = DEFAULT) -> tuple[float, float]:
    """Signal-to-noise ``sigma = <Q>^2 / (ΔQ)^2`` and ``sigma - 4|z|^2``."""
    mean_q, var_q, _ = _quadrature_variances(family, z, cfg)
    if not var_q > 0:
        raise ConvergenceError(f"non-positive coordinate variance {var_q} at z={z}")
    sigma = mean_q**2 / var_q
    return sigma, sigma - 4.0 * abs(complex(z)) ** 2


@dataclass(frozen=True)
class StateVector:
    """Normalized Fock amplitudes of ``|z>`` truncated at ``len(amplitudes) - 1``."""

    z: complex
    amplitudes: np.ndarray = field(repr=False)
    norm: float
    tail_bound: float

    @property
    def truncation(self) -> int:
        return len(self.amplitudes) - 1


def state_vector(family: CoherentFamily, z: complex, tail_tol: float = 1e-28) -> StateVector:
    """Amplitudes ``z^n / sqrt(rho(n) N)`` up to the first n where the dropped
    probability is estimated below ``tail_tol``.
    """
    z = complex(z)
    x = abs(z) ** 2
    amps = [1.0 / math.sqrt(family.rho_first()) + 0j]
    probs = Neumaier()
    probs.add(abs(amps[0]) ** 2)
    prev_p = abs(amps[0]) ** 2
    tail = math.inf
    if x == 0:
        tail = 0.0
    else:
        for n, b in family.box_iter():
            amps.append(amps[-1] * z / math.sqrt(b))
            p_n = abs(amps[-1]) ** 2
            probs.add(p_n)
            q = p_n / prev_p if prev_p else 1.0
            prev_p = p_n
            if q < 0.5 and p_n <= tail_tol * probs.value:
                tail = p_n * q / (1.0 - q)
                break
    norm = probs.value
    vec = np.array(amps, dtype=complex) / math.sqrt(norm)
    return StateVector(z, vec, norm, tail / norm)


def eigenvalue_residual(family: CoherentFamily, z: complex) -> float:
    """``|| A|z> - z|z> ||`` on the truncated Fock space."""
    sv = state_vector(family, z)
    psi = sv.amplitudes
    m = sv.truncation
    if m == 0:
        return 0.0
    boxes = np.asarray(family.boxes(m + 1)[1 : m + 1])
    a_psi = np.sqrt(boxes) * psi[1:]
    diff = np.concatenate([a_psi, [0.0]]) - sv.z * psi
    return float(np.linalg.norm(diff))


def box_commutator_check(family: CoherentFamily, n: int) -> float:
    """``<n|[A, A†]|n> - ([n+1] - [n])`` from explicit truncated matrices."""
    if not isinstance(n, int) or n < 0:
        raise InvalidParameters(f"n must be an integer >= 0, got {n!r}")
    if n >= family.n_fock_max:
        raise InvalidParameters(f"n must be below n_fock_max={family.n_fock_max}")
    size = n + 2
    boxes = family.boxes(size)[:size]
    amat = np.diag(np.sqrt(boxes[1:size]), k=1)
    comm = amat @ amat.T - amat.T @ amat
    return float(comm[n, n] - (boxes[n + 1] - boxes[n]))
