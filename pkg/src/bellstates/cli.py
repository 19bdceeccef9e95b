"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 resource guard or bad arguments,
3 I/O error, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import coherent_states as cs
from . import figures, verify
from .boson_algebra import build_table
from .errors import ConvergenceError, InvalidParameters, ResourceGuardError, UnsupportedError
from .sequences import bell_dobinski, bell_hypergeom
from .series import SeriesConfig
from .weights import QuadratureConfig, WeightSpec, moment, weight, weight_closed

EXIT_OK, EXIT_VERIFY, EXIT_GUARD, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3, 4


def fmt(v: float) -> str:
    if not math.isfinite(v):
        raise ConvergenceError(f"non-finite value {v!r} in output")
    out = format(v, ".15g")
    return "0" if out == "-0" else out


def write_csv(stream, columns, rows) -> None:
    w = csv.writer(stream, lineterminator="\r\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([v if isinstance(v, (int, str)) else fmt(v) for v in row])


def emit_json(obj) -> None:
    print(json.dumps(obj))


# -- subcommands --------------------------------------------------------------


def cmd_bell(args, cfg):
    table = build_table(args.r, args.s, args.n_max)
    seq = table.bell_numbers
    if args.format == "json":
        emit_json({"r": args.r, "s": args.s, "bell": list(seq)})
    else:
        write_csv(sys.stdout, ["n", "bell"], [[n, b] for n, b in enumerate(seq, start=1)])
    return EXIT_OK


def cmd_stirling(args, cfg):
    table = build_table(args.r, args.s, args.n)
    row = table.rows[args.n - 1]
    if args.format == "json":
        emit_json({"r": args.r, "s": args.s, "n": args.n, "stirling": {str(k): v for k, v in row.items()}})
    else:
        write_csv(sys.stdout, ["k", "stirling"], [[k, v] for k, v in row.items()])
    return EXIT_OK


def cmd_dobinski(args, cfg):
    if args.method == "hypergeom":
        value = bell_hypergeom(args.r, args.n, cfg)
    else:
        value = bell_dobinski(args.r, args.n, cfg)
    emit_json({"r": args.r, "n": args.n, "method": args.method, "value": float(fmt(value))})
    return EXIT_OK


def cmd_weight(args, cfg):
    spec = WeightSpec(args.r, args.p)
    rows = []
    for x in args.x:
        if args.form == "closed":
            if args.p != 1:
                raise UnsupportedError("closed forms describe W_{r,1} only (p = 1)")
            rows.append([x, weight_closed(args.r, x, cfg)])
        else:
            rows.append([x, float(weight(spec, x, cfg))])
    write_csv(sys.stdout, ["x", f"V_r{args.r}_p{args.p}"], rows)
    return EXIT_OK


def cmd_moments(args, cfg):
    from .boson_algebra import bell_sequence
    from .sequences import B_ZERO

    spec = WeightSpec(args.r, args.p)
    seq = bell_sequence(args.r, args.n_max + args.p + 1)
    rows = []
    for n in range(args.n_max + 1):
        m = moment(spec, n, QuadratureConfig(), cfg)
        k = n + args.p
        target = seq[k - 1] if k >= 1 else (1.0 if args.r == 1 else B_ZERO)
        rows.append([n, m, target, abs(m / target - 1.0)])
    write_csv(sys.stdout, ["n", "moment", "bell", "rel_err"], rows)
    return EXIT_OK


OBSERVABLES = ("mandel", "squeeze", "snr", "metric", "residual")


def cmd_state(args, cfg):
    if args.reference:
        fam = cs.CoherentFamily.conventional()
    else:
        if args.r is None:
            raise InvalidParameters("--r is required unless --reference is given")
        fam = cs.CoherentFamily.combinatorial(args.r, args.p, rho0=args.rho0)
    z = complex(args.z_re, args.z_im)
    x = abs(z) ** 2
    wanted = [o.strip() for o in args.observables.split(",") if o.strip()]
    unknown = set(wanted) - set(OBSERVABLES)
    if unknown:
        raise InvalidParameters(f"unknown observables {sorted(unknown)}")
    out = {"family": fam.label, "z_re": z.real, "z_im": z.imag, "x": x}
    if "mandel" in wanted:
        out["mandel"] = cs.mandel_q(fam, x, cfg)
    if "squeeze" in wanted:
        out["s_q"], out["s_p"] = cs.squeezing(fam, z, cfg)
    if "snr" in wanted:
        out["sigma"], out["sigma_bar"] = cs.snr(fam, z, cfg)
    if "metric" in wanted:
        out["metric"] = cs.metric_factor(fam, x, cfg)
    if "residual" in wanted:
        out["residual"] = cs.eigenvalue_residual(fam, z)
    sv = cs.state_vector(fam, z)
    out["fock_truncation"] = sv.truncation
    out["tail_bound"] = sv.tail_bound
    for k, v in out.items():
        if isinstance(v, float):
            out[k] = float(fmt(v))
    emit_json(out)
    return EXIT_OK


def cmd_figure(args, cfg):
    grid = None
    if args.start is not None or args.stop is not None or args.points is not None:
        d = figures.LAYOUT[args.figure_id][1]
        grid = (
            d[0] if args.start is None else args.start,
            d[1] if args.stop is None else args.stop,
            d[2] if args.points is None else args.points,
        )
    r_list = tuple(int(v) for v in args.r_list.split(",")) if args.r_list else None
    req = figures.FigureRequest(args.figure_id, grid, r_list, rho0=args.rho0)
    table = figures.build(req, cfg)
    buf = io.StringIO()
    write_csv(buf, table.columns, table.rows)
    if args.out in (None, "-"):
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args, cfg):
    results = verify.run(args.level, cfg)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  {res.name:<30} {res.seconds:6.2f}s  {res.detail}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed: {', '.join(failed)}")
        return EXIT_VERIFY
    print(f"all {len(results)} checks passed")
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellstates",
        description="Generalized Bell numbers, their weight functions and coherent states.",
    )
    parser.add_argument("--tol", type=float, default=None,
                        help="relative series tolerance (default 1e-13, or $BELLSTATES_TOL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bell", help="exact generalized Bell numbers B_{r,s}(1..n_max)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("stirling", help="exact generalized Stirling numbers S_{r,s}(n, k)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("dobinski", help="B_{r,1}(n) in floating point")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("series", "hypergeom"), default="series")
    p.set_defaults(func=cmd_dobinski)

    p = sub.add_parser("weight", help="weight function V^(p)_{r,1}(x)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--x", type=float, nargs="+", required=True)
    p.add_argument("--form", choices=("series", "closed"), default="series")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("moments", help="quadrature moments of V^(p)_{r,1} against B_{r,1}(n+p)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("state", help="observables of one coherent state, as JSON")
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--z-re", type=float, default=0.0)
    p.add_argument("--z-im", type=float, default=0.0)
    p.add_argument("--observables", default=",".join(OBSERVABLES))
    p.add_argument("--reference", action="store_true", help="use the conventional family rho(n) = n!")
    p.add_argument("--rho0", choices=cs.RHO0_CONVENTIONS, default="moment")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("figure", help="CSV data for figure 1..7")
    p.add_argument("figure_id", type=int, choices=range(1, 8), metavar="FIGURE")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--r-list", help="comma-separated r values")
    p.add_argument("--rho0", choices=cs.RHO0_CONVENTIONS, default="moment")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run the oracle suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SeriesConfig.from_env(args.tol)
        return args.func(args, cfg)
    except ResourceGuardError as exc:
        print(f"error: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InvalidParameters, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ConvergenceError as exc:
        print(f"error: no convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
