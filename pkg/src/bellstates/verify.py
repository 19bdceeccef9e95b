"""Oracle suite behind ``bellstates verify``.

Each check pits two independent routes against each other (exact integers vs.
Dobiński series vs. hypergeometric closed forms vs. quadrature) or asserts a
reduction to the conventional coherent states.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import coherent_states as cs
from .boson_algebra import bell_exact, bell_sequence
from .errors import BellStatesError
from .sequences import B_ZERO, bell_dobinski, bell_hypergeom
from .series import DEFAULT, SeriesConfig
from .weights import WeightSpec, dirac_comb_moment, moment, weight_closed, weight_series

PRINTED_SEQUENCES = {
    1: (1, 2, 5, 15, 52, 203),
    2: (1, 3, 13, 73, 501, 4051),
    3: (1, 4, 25, 211, 2236, 28471),
    4: (1, 5, 41, 465, 6721, 117941),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _rel(a: float, b: float) -> float:
    return abs(a / b - 1.0)


def check_sequences(cfg):
    bad = [r for r, seq in PRINTED_SEQUENCES.items()
           if tuple(bell_exact(r, 1, n) for n in range(1, 7)) != seq]
    return not bad, f"mismatching r: {bad}" if bad else "all four sequences exact"


def check_dobinski(cfg, n_max=8):
    worst = max(_rel(bell_dobinski(r, n, cfg), bell_exact(r, 1, n))
                for r in (1, 2, 3, 4) for n in range(1, n_max + 1))
    zero = max(abs(bell_dobinski(r, 0, cfg) - B_ZERO) for r in (2, 3, 4))
    return worst <= 1e-10 and zero <= 1e-12, f"max rel err {worst:.2e}, B(0) err {zero:.2e}"


def check_hypergeom(cfg):
    worst = max(_rel(bell_hypergeom(r, n, cfg), bell_exact(r, 1, n))
                for r in (2, 3) for n in range(1, 9))
    return worst <= 1e-10, f"max rel err {worst:.2e}"


def check_weight_forms(cfg):
    worst = max(_rel(weight_series(r, x, cfg), weight_closed(r, x, cfg))
                for r in (2, 3, 4) for x in (0.01, 0.1, 1, 5, 10, 25))
    return worst <= 1e-10, f"max rel diff {worst:.2e}"


def check_moments(cfg, rs=(2, 3, 4), n_max=8):
    worst = 0.0
    for r in rs:
        seq = bell_sequence(r, n_max + 1)
        for n in range(n_max + 1):
            worst = max(worst, _rel(moment(WeightSpec(r, 1), n, cfg=cfg), seq[n]))
    return worst <= 1e-6, f"max rel err {worst:.2e}"


def check_comb(cfg):
    seq = bell_sequence(1, 9)
    worst = max(_rel(dirac_comb_moment(n, cfg), seq[n]) for n in range(9))
    return worst <= 1e-10, f"max rel err {worst:.2e}"


def check_normalized(cfg):
    worst = max(abs(moment(WeightSpec(r, 1), 0, cfg=cfg) - 1.0) for r in (2, 3, 4))
    return worst <= 1e-8, f"max |∫W - 1| {worst:.2e}"


def check_conventional(cfg):
    fam = cs.CoherentFamily.conventional()
    q = max(abs(cs.mandel_q(fam, x, cfg)) for x in (0.5, 5, 15, 35))
    om = max(abs(cs.metric_factor(fam, x, cfg) - 1.0) for x in (0, 5, 35))
    sq = max(abs(v - 0.5) for z in (0.5, 2, 1 + 1j, 6) for v in cs.squeezing(fam, z, cfg))
    sb = max(abs(cs.snr(fam, z, cfg)[1]) for z in (1, 3, 6))
    ok = q < 1e-10 and om < 1e-10 and sq < 1e-10 and sb < 1e-8
    return ok, f"|Q| {q:.1e}, |ω-1| {om:.1e}, |s-1/2| {sq:.1e}, |σ̄| {sb:.1e}"


def check_mandel_p1(cfg):
    fams = {r: cs.CoherentFamily.combinatorial(r, 1) for r in (1, 2, 3, 4)}
    positive = all(cs.mandel_q(f, x, cfg) > 0 for f in fams.values() for x in (1, 5, 15, 30))
    at15 = [cs.mandel_q(fams[r], 15.0, cfg) for r in (1, 2, 3, 4)]
    ordered = all(a > b for a, b in zip(at15, at15[1:]))
    return positive and ordered, f"positive={positive}, Q(15)={[round(v, 4) for v in at15]}"


def check_squeezing(cfg):
    ok = True
    for r in (1, 2, 3):
        fam = cs.CoherentFamily.combinatorial(r, 1)
        for z in (1, 2, 4):
            s_q, s_p = cs.squeezing(fam, z, cfg)
            ok &= s_p < 0.5 < s_q
        for a in (1, 3):
            ok &= abs(cs.squeezing(fam, 1j * a, cfg)[0] - cs.squeezing(fam, a, cfg)[1]) <= 1e-10
    return ok, "s_p < 1/2 < s_q and S_Q(iα) = S_P(α)"


def check_snr(cfg):
    bad = [(r, z) for r in (1, 2, 3, 4) for z in (1, 2, 4)
           if not cs.snr(cs.CoherentFamily.combinatorial(r, 1), z, cfg)[1] < 0]
    return not bad, f"σ̄ >= 0 at (r, z) = {bad}" if bad else "σ̄ < 0 everywhere"


def sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def check_mandel_p0(cfg, grid=None):
    grid = grid or [0.25 * i for i in range(1, 141)]
    q1 = [cs.mandel_q(cs.CoherentFamily.combinatorial(1, 0), x, cfg) for x in grid]
    ok = all(v > 0 for v in q1)
    notes = []
    for r in (2, 3, 4):
        q = [cs.mandel_q(cs.CoherentFamily.combinatorial(r, 0), x, cfg) for x in grid]
        good = q[0] < 0 and q[-1] > 0 and sign_changes(q) == 1
        ok &= good
        notes.append(f"r={r}: Q({grid[0]})={q[0]:+.2e}, Q({grid[-1]})={q[-1]:+.2e}, changes={sign_changes(q)}")
    return ok, "; ".join(notes)


def check_eigen(cfg):
    worst = max(cs.eigenvalue_residual(cs.CoherentFamily.combinatorial(r, p), z)
                for r in (1, 2, 3, 4) for p in (0, 1) for z in (0.5, 1 + 1j, 3))
    return worst <= 1e-10, f"max residual {worst:.2e}"


def check_box_commutator(cfg):
    worst = max(abs(cs.box_commutator_check(cs.CoherentFamily.combinatorial(r, p), n))
                for r in (1, 2, 3, 4) for p in (0, 1) for n in range(6))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


def check_high_r_weights(cfg):
    import numpy as np

    xs = np.array([0.01, 0.1, 1, 5, 10, 25, 60])
    pos = all(bool(np.all(weight_series(r, xs, cfg) > 0)) for r in (5, 6))
    ok, detail = check_moments(cfg, rs=(5, 6), n_max=10)
    return pos and ok, f"positive={pos}, {detail}"


def check_moments_n10(cfg):
    return check_moments(cfg, n_max=10)


QUICK: list[tuple[str, Callable]] = [
    ("exact_sequences", check_sequences),
    ("dobinski_vs_exact", check_dobinski),
    ("hypergeom_vs_exact", check_hypergeom),
    ("weight_series_vs_closed", check_weight_forms),
    ("moment_identity", check_moments),
    ("dirac_comb_moments", check_comb),
    ("weights_normalized", check_normalized),
    ("conventional_reduction", check_conventional),
    ("mandel_p1_super_poissonian", check_mandel_p1),
    ("squeezing_p1", check_squeezing),
    ("snr_noisier_than_standard", check_snr),
    ("mandel_p0_crossover", check_mandel_p0),
    ("eigenvalue_residual", check_eigen),
    ("box_commutator", check_box_commutator),
]

FULL = QUICK + [
    ("weights_r5_r6_series", check_high_r_weights),
    ("moment_identity_n10", check_moments_n10),
]


def run(level: str = "quick", cfg: SeriesConfig = DEFAULT) -> list[CheckResult]:
    checks = {"quick": QUICK, "full": FULL}[level]
    results = []
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            passed, detail = fn(cfg)
        except BellStatesError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - t0))
    return results
