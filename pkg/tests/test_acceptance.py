"""Acceptance criteria, one test and one report line each."""

import subprocess
import sys
import time

import numpy as np

from bellstates import coherent_states as cs
from bellstates.boson_algebra import bell_exact, bell_sequence
from bellstates.sequences import B_ZERO, bell_dobinski, bell_hypergeom
from bellstates.verify import sign_changes
from bellstates.weights import WeightSpec, dirac_comb_moment, moment, weight_closed, weight_series

PRINTED = {
    1: [1, 2, 5, 15, 52, 203],
    2: [1, 3, 13, 73, 501, 4051],
    3: [1, 4, 25, 211, 2236, 28471],
    4: [1, 5, 41, 465, 6721, 117941],
}


def fam(r, p=1):
    return cs.CoherentFamily.combinatorial(r, p)


def rel(a, b):
    return abs(a / b - 1)


def test_01_exact_sequences(report):
    t0 = time.perf_counter()
    out = {}
    for r in PRINTED:
        proc = subprocess.run([sys.executable, "-m", "bellstates", "bell", "--r", str(r), "--n-max", "6"],
                              capture_output=True, text=True, check=True)
        out[r] = [int(line.split(",")[1]) for line in proc.stdout.splitlines()[1:]]
    elapsed = time.perf_counter() - t0
    ok = out == PRINTED and elapsed < 5
    report(1, ok, f"4 sequences exact={out == PRINTED}, {elapsed:.2f}s < 5s")


def test_02_dobinski(report):
    worst = max(rel(bell_dobinski(r, n), bell_exact(r, 1, n)) for r in (1, 2, 3, 4) for n in range(1, 9))
    zero = max(abs(bell_dobinski(r, 0) - B_ZERO) for r in (2, 3, 4))
    report(2, worst <= 1e-10 and zero <= 1e-12, f"max rel err {worst:.1e} (tol 1e-10), B(0) err {zero:.1e} (tol 1e-12)")


def test_03_closed_form_bell(report):
    worst = max(rel(bell_hypergeom(r, n), bell_exact(r, 1, n)) for r in (2, 3) for n in range(1, 9))
    report(3, worst <= 1e-10, f"max rel err {worst:.1e} (tol 1e-10)")


def test_04_weight_representations(report):
    worst = max(rel(weight_series(r, x), weight_closed(r, x))
                for r in (2, 3, 4) for x in (0.01, 0.1, 1, 5, 10, 25))
    report(4, worst <= 1e-10, f"max rel diff {worst:.1e} (tol 1e-10)")


def test_05_moment_identities(report):
    t0 = time.perf_counter()
    worst = 0.0
    for r in (2, 3, 4):
        seq = bell_sequence(r, 9)
        worst = max(worst, max(rel(moment(WeightSpec(r, 1), n), seq[n]) for n in range(9)))
    seq1 = bell_sequence(1, 9)
    comb = max(rel(dirac_comb_moment(n), seq1[n]) for n in range(9))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and comb <= 1e-10 and elapsed < 30
    report(5, ok, f"quadrature rel err {worst:.1e} (tol 1e-6), comb {comb:.1e} (tol 1e-10), {elapsed:.2f}s < 30s")


def test_06_normalized_measures(report):
    worst = max(abs(moment(WeightSpec(r, 1), 0) - 1) for r in (2, 3, 4))
    report(6, worst <= 1e-8, f"max |integral - 1| {worst:.1e} (tol 1e-8)")


def test_07_conventional_reduction(report):
    c = cs.CoherentFamily.conventional()
    q = max(abs(cs.mandel_q(c, float(x))) for x in np.linspace(0, 35, 141))
    s = max(abs(v - 0.5) for z in (0.1, 1, 2.5, 1 + 2j, 4j, 6) for v in cs.squeezing(c, z))
    w = max(abs(cs.metric_factor(c, float(x)) - 1) for x in np.linspace(0, 35, 36))
    sb = max(abs(cs.snr(c, float(z))[1]) for z in np.linspace(0, 6, 25))
    ok = q < 1e-10 and s <= 1e-10 and w <= 1e-10 and sb <= 1e-8
    report(7, ok, f"|Q| {q:.1e}, |s-1/2| {s:.1e}, |w-1| {w:.1e}, |sigma_bar| {sb:.1e}")


def test_08_mandel_p1(report):
    positive = all(cs.mandel_q(fam(r), x) > 0 for r in (1, 2, 3, 4) for x in (1, 5, 15, 30))
    at15 = [cs.mandel_q(fam(r), 15.0) for r in (1, 2, 3, 4)]
    ordered = all(a > b for a, b in zip(at15, at15[1:]))
    report(8, positive and ordered, f"positive={positive}, Q(15)={[round(v, 4) for v in at15]}")


def test_09_squeezing(report):
    sides = all(s_p < 0.5 < s_q for r in (1, 2, 3) for z in (1, 2, 4)
                for s_q, s_p in [cs.squeezing(fam(r), z)])
    sym = max(abs(cs.squeezing(fam(r), 1j * a)[0] - cs.squeezing(fam(r), a)[1])
              for r in (1, 2, 3) for a in (1, 3))
    report(9, sides and sym <= 1e-10, f"s_p < 1/2 < s_q: {sides}, symmetry dev {sym:.1e} (tol 1e-10)")


def test_10_snr(report):
    vals = {(r, z): cs.snr(fam(r), z)[1] for r in (1, 2, 3, 4) for z in (1, 2, 4)}
    bad = {k: round(v, 3) for k, v in vals.items() if not v < 0}
    report(10, not bad, "sigma_bar < 0 everywhere" if not bad else f"sigma_bar >= 0 at (r, z): {bad}")


def test_11_mandel_p0_crossover(report):
    grid = np.linspace(0, 35, 141)[1:]
    q1 = [cs.mandel_q(fam(1, 0), float(x)) for x in grid]
    ok = all(v > 0 for v in q1)
    notes = [f"r=1 positive={ok}"]
    for r in (2, 3, 4):
        q = [cs.mandel_q(fam(r, 0), float(x)) for x in grid]
        good = q[0] < 0 and q[-1] > 0 and sign_changes(q) == 1
        ok &= good
        notes.append(f"r={r}: Q(small)={q[0]:+.2e}, Q(35)={q[-1]:+.2e}, changes={sign_changes(q)}")
    report(11, ok, "; ".join(notes))


def test_12_eigenvalue(report):
    worst = max(cs.eigenvalue_residual(fam(r, p), z)
                for r in (1, 2, 3, 4) for p in (0, 1) for z in (0.5, 1 + 1j, 3))
    report(12, worst <= 1e-10, f"max residual {worst:.1e} (tol 1e-10)")


def test_13_figure_regression(report, tmp_path):
    same = []
    for k in range(1, 8):
        blobs = []
        for run in range(2):
            path = tmp_path / f"fig{k}_{run}.csv"
            subprocess.run([sys.executable, "-m", "bellstates", "figure", str(k), "--out", str(path)], check=True)
            blobs.append(path.read_bytes())
        same.append(blobs[0] == blobs[1] and len(blobs[0]) > 0)
    report(13, all(same), f"byte-identical per figure: {dict(zip(range(1, 8), same))}")
