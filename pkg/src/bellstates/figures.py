"""Tabulated curves for the seven figures, one CSV-ready table per figure."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import coherent_states as cs
from .errors import ConvergenceError, InvalidParameters
from .series import DEFAULT, SeriesConfig
from .weights import weight_series

X_AXIS = (0.0, 35.0, 71)
Z_AXIS = (0.0, 6.0, 61)

# figure id -> (abscissa name, default grid, default r list, p)
LAYOUT = {
    1: ("x", X_AXIS, (1, 2, 3, 4), 1),
    2: ("x", X_AXIS, (1, 2, 3, 4), 1),
    3: ("re_z", Z_AXIS, (1, 2, 3), 1),
    4: ("re_z", Z_AXIS, (1, 2, 3, 4), 1),
    5: ("x", X_AXIS, (1, 2, 3, 4), 1),
    6: ("x", X_AXIS, (1, 2, 3, 4), 0),
    7: ("x", X_AXIS, (1, 2, 3), 0),
}


@dataclass(frozen=True)
class FigureRequest:
    figure_id: int
    grid: tuple[float, float, int] | None = None
    r_list: tuple[int, ...] | None = None
    rho0: str = "moment"

    def __post_init__(self):
        if self.figure_id not in LAYOUT:
            raise InvalidParameters(f"figure id must be 1..7, got {self.figure_id}")
        start, stop, points = self.resolved_grid
        if points < 2 or not stop > start or start < 0:
            raise InvalidParameters(f"bad grid {self.resolved_grid}")

    @property
    def axis(self) -> str:
        return LAYOUT[self.figure_id][0]

    @property
    def p(self) -> int:
        return LAYOUT[self.figure_id][3]

    @property
    def resolved_grid(self) -> tuple[float, float, int]:
        return self.grid or LAYOUT[self.figure_id][1]

    @property
    def resolved_r(self) -> tuple[int, ...]:
        return tuple(self.r_list or LAYOUT[self.figure_id][2])


@dataclass
class FigureTable:
    columns: list[str]
    rows: list[list[float]] = field(default_factory=list)


def _family(r, req):
    return cs.CoherentFamily.combinatorial(r, req.p, rho0=req.rho0)


def _point(where: str, value: float, fn):
    try:
        out = fn()
    except ConvergenceError as exc:
        raise ConvergenceError(f"{exc} [at {where}={value:g}]") from exc
    return out


def build(req: FigureRequest, cfg: SeriesConfig = DEFAULT) -> FigureTable:
    start, stop, points = req.resolved_grid
    grid = np.linspace(start, stop, int(points))
    rs = req.resolved_r
    fid = req.figure_id
    axis = req.axis

    if fid == 1:
        cont = [r for r in rs if r >= 2]
        cols = [axis] + [f"W_r{r}" for r in cont] + (["comb_r1"] if 1 in rs else [])
        table = FigureTable(cols)
        for x in grid:
            row = [float(x)]
            for r in cont:
                row.append(0.0 if x == 0 else _point(axis, x, lambda: weight_series(r, float(x), cfg)))
            if 1 in rs:
                k = round(x)
                strength = math.exp(-math.lgamma(k) - 1.0) if k >= 1 and abs(x - k) < 1e-12 else 0.0
                row.append(strength)
            table.rows.append(row)
        return table

    fams = {r: _family(r, req) for r in rs}
    if fid in (2, 6):
        table = FigureTable([axis] + [f"Q_r{r}" for r in rs])
        for x in grid:
            table.rows.append([float(x)] + [_point(axis, x, lambda: cs.mandel_q(fams[r], x, cfg)) for r in rs])
    elif fid == 5:
        table = FigureTable([axis, "omega_c"] + [f"omega_r{r}" for r in rs])
        for x in grid:
            table.rows.append([float(x), 1.0] + [_point(axis, x, lambda: cs.metric_factor(fams[r], x, cfg)) for r in rs])
    elif fid in (3, 7):
        table = FigureTable([axis] + [f"S_Q_r{r}" for r in rs] + [f"S_P_r{r}" for r in rs])
        for v in grid:
            z = float(v) if fid == 3 else math.sqrt(v)
            pairs = [_point(axis, v, lambda: cs.squeezing(fams[r], z, cfg)) for r in rs]
            table.rows.append([float(v)] + [s[0] for s in pairs] + [s[1] for s in pairs])
    else:  # fid == 4
        table = FigureTable([axis] + [f"sigma_bar_r{r}" for r in rs])
        for v in grid:
            table.rows.append([float(v)] + [_point(axis, v, lambda: cs.snr(fams[r], float(v), cfg)[1]) for r in rs])
    return table
