"""Command-line front end: ``ladderfib seq | rate | vbe | verify | sweep``.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from ladderfib import __version__
from ladderfib.core import LadderError, LadderSpec, dimers_for_density, validate_spec
from ladderfib.rates import density_grid, doped_rate_profile, rate_result
from ladderfib.sequences import RecursionForm, build_table, doped_count_compact, undoped_sequence
from ladderfib.verify import exit_status, run_verification, tampered
from ladderfib.vbe import admissible_cuts, ebits, vbe_curve, vbe_doped, vbe_undoped

SEQ_HEADER = ("legs", "N", "k", "count")
RATE_HEADER = ("legs", "n_h", "alpha")
UNDOPED_RATE_HEADER = ("legs", "N", "closed_form", "empirical", "per_rung")
VBE_HEADER = ("legs", "N", "n_h", "L", "S_over_ln2", "S_ebits")
VERIFY_HEADER = ("case", "expected", "actual", "status")

FIGURE7_DENSITIES = (0.0, 0.1, 0.2, 0.3, 0.4)
LEGS = (2, 3, 4)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def fmt(value) -> str:
    """Counts stay exact; every float is printed with 12 digits after the point."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (float, Fraction)) or hasattr(value, "__float__"):
        return format(float(value), ".12f")
    return str(value)


def _json_value(value):
    if isinstance(value, int) and not isinstance(value, bool):
        # big counts exceed float range; keep them as exact decimal strings
        return value if abs(value) < 2**53 else str(value)
    if isinstance(value, str) or value is None:
        return value
    return float(fmt(value))


class Report:
    """Rows plus optional trailer, rendered to csv or json."""

    def __init__(self, schema: str, header, rows, trailer=None):
        self.schema = schema
        self.header = tuple(header)
        self.rows = [tuple(r) for r in rows]
        self.trailer = trailer  # (header, row) or None

    def render(self, kind: str) -> str:
        if kind == "json":
            doc = {
                "schema": self.schema,
                "rows": [{h: _json_value(v) for h, v in zip(self.header, r)} for r in self.rows],
            }
            if self.trailer:
                head, row = self.trailer
                doc["trailer"] = {h: _json_value(v) for h, v in zip(head, row)}
            return json.dumps(doc, indent=2) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows([fmt(v) for v in r] for r in self.rows)
        if self.trailer:
            head, row = self.trailer
            w.writerow(head)
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {output}: {exc}") from exc


def _jobs(args) -> int:
    raw = args.jobs if args.jobs is not None else os.environ.get("LADDERFIB_JOBS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"--jobs / LADDERFIB_JOBS must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("--jobs must be >= 1")
    return n


def _map(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def _density(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not math.isfinite(x) or not 0 <= x <= 1:
        raise argparse.ArgumentTypeError(f"hole density must lie in [0, 1], got {value}")
    return x


# ---------------------------------------------------------------------------
# commands


def cmd_seq(args) -> Report:
    legs, rungs = args.legs, args.rungs
    doped = args.dimers is not None or args.hole_density is not None
    validate_spec(LadderSpec(legs, rungs, doped))
    form = RecursionForm(args.form)
    if not doped:
        z = undoped_sequence(legs, rungs, form)
        rows = [(legs, n, legs * n // 2, z[n]) for n in range(1, rungs + 1) if legs != 3 or n % 2 == 0]
        return Report("seq", SEQ_HEADER, rows)
    k = args.dimers if args.dimers is not None else dimers_for_density(legs, rungs, args.hole_density)
    if not 0 <= k <= legs * rungs // 2:
        raise UsageError(f"{k} dimers do not fit on a {legs}x{rungs} ladder")
    if form is RecursionForm.COMPACT:
        if legs != 2:
            raise UsageError("the compact doped recursion exists for two legs only")
        count = doped_count_compact(rungs, k)
    else:
        count = build_table(LadderSpec(legs, rungs, True), rungs)(rungs, k)
    return Report("seq", SEQ_HEADER, [(legs, rungs, k, count)])


def _profile_chunk(task):
    legs, rungs, grid = task
    return doped_rate_profile(legs, rungs, grid).points


def cmd_rate(args) -> Report:
    legs, rungs = args.legs, args.rungs
    validate_spec(LadderSpec(legs, rungs, doped=args.doped_mode))
    if not args.doped_mode:
        r = rate_result(legs, rungs)
        return Report(
            "rate", UNDOPED_RATE_HEADER, [(legs, rungs, r.closed_form, r.empirical, r.per_rung_normalized)]
        )
    grid = density_grid(args.density_from, args.density_to, args.density_step)
    if not grid:
        raise UsageError("empty density grid")
    jobs = _jobs(args)
    size = max(1, math.ceil(len(grid) / jobs))
    chunks = [(legs, rungs, grid[i : i + size]) for i in range(0, len(grid), size)]
    points = [p for part in _map(_profile_chunk, chunks, jobs) for p in part]
    rows = [(legs, n_h, a) for n_h, a in points]
    n_hc, a_max = max(points, key=lambda p: p[1])
    return Report("rate", RATE_HEADER, rows, trailer=(("peak", "n_hc", "alpha_max"), ("peak", n_hc, a_max)))


def cmd_vbe(args) -> Report:
    legs, rungs = args.legs, args.rungs
    n_h = args.hole_density if args.hole_density is not None else 0.0
    doped = True if args.doped else None
    is_doped = doped or n_h != 0.0
    validate_spec(LadderSpec(legs, rungs, is_doped))
    if args.cut is not None:
        if is_doped:
            k = dimers_for_density(legs, rungs, n_h)
            s = vbe_doped(legs, rungs, k, args.cut)
        else:
            s = vbe_undoped(legs, rungs, args.cut)
        return Report("vbe", VBE_HEADER, [(legs, rungs, n_h, args.cut, s, ebits(s))])
    curve = vbe_curve(legs, rungs, n_h, doped)
    rows = [(legs, rungs, n_h, c, s, ebits(s)) for c, s in curve.points]
    return Report("vbe", VBE_HEADER, rows, trailer=(("S_sat", "L_sat"), (curve.s_sat, curve.l_sat)))


def cmd_verify(args) -> tuple[Report, int]:
    kwargs = {"max_rungs": args.max_rungs, "legs": args.legs}
    if args.tamper:
        kwargs["doped_counts"] = tampered
    checks = run_verification(**kwargs)
    rows = [(c.case, c.expected, c.actual, c.status) for c in checks]
    return Report("verify", VERIFY_HEADER, rows), exit_status(checks)


def saturation_point(legs: int, rungs: int, hole_density: float) -> tuple[int, Fraction]:
    """(cut, S_sat) at the admissible cut nearest N/2; ``n_h = 0`` uses the undoped sequences."""
    doped = hole_density != 0.0
    cuts = admissible_cuts(legs, rungs, doped=doped)
    best = min(abs(2 * c - rungs) for c in cuts)
    near = [c for c in cuts if abs(2 * c - rungs) == best]
    curve = vbe_curve(legs, rungs, hole_density, cuts=near)
    # the larger of two equidistant cuts, ties to the lower cut
    return max(curve.points, key=lambda p: (p[1], -p[0]))


def _figure5_series(task):
    legs, rungs = task
    return [(legs, n_h, a) for n_h, a in doped_rate_profile(legs, rungs).points]


def _saturation_series(task):
    legs, rungs, grid = task
    out = []
    for n_h in grid:
        cut, s = saturation_point(legs, rungs, n_h)
        out.append((legs, rungs, n_h, cut, s, ebits(s)))
    return out


def figure_report(figure: int, rungs: int, jobs: int = 1) -> Report:
    if figure == 5:
        series = _map(_figure5_series, [(l, rungs) for l in LEGS], jobs)
        return Report("rate", RATE_HEADER, [r for s in series for r in s])
    grid = FIGURE7_DENSITIES if figure == 7 else density_grid(0.0, 1.0, 0.01)
    series = _map(_saturation_series, [(l, rungs, grid) for l in LEGS], jobs)
    rows = [r for s in series for r in s]
    if figure == 7:
        # grouped by density, legs ascending within each group
        rows.sort(key=lambda r: (r[2], r[0]))
    return Report("vbe", VBE_HEADER, rows)


def cmd_sweep(args) -> Path:
    validate_spec(LadderSpec(2, args.rungs, True))
    if args.rungs < 10:
        raise UsageError("sweeps need --rungs >= 10")
    out_dir = Path(args.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create {out_dir}: {exc}") from exc
    target = out_dir / f"figure{args.figure}.csv"
    text = figure_report(args.figure, args.rungs, _jobs(args)).render("csv")
    try:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {target}: {exc}") from exc
    return target


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ladderfib", description="Covering counts, divergence rates and VBE entropy of spin ladders.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, jobs=False):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write here instead of stdout")
        if jobs:
            p.add_argument("--jobs", type=int, default=None, help="worker processes (default $LADDERFIB_JOBS or 1)")

    p = sub.add_parser("seq", help="covering counts Z_N or Z_{N,k}")
    p.add_argument("--legs", type=int, required=True)
    p.add_argument("--rungs", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--dimers", type=int)
    g.add_argument("--hole-density", type=_density)
    p.add_argument("--form", choices=[f.value for f in RecursionForm], default="summed")
    common(p)

    p = sub.add_parser("rate", help="divergence rates, undoped or over a hole-density grid")
    p.add_argument("--legs", type=int, required=True)
    p.add_argument("--rungs", type=int, default=100)
    p.add_argument("--density-from", type=_density)
    p.add_argument("--density-to", type=_density)
    p.add_argument("--density-step", type=float)
    common(p, jobs=True)

    p = sub.add_parser("vbe", help="valence bond entanglement entropy")
    p.add_argument("--legs", type=int, required=True)
    p.add_argument("--rungs", type=int, required=True)
    p.add_argument("--hole-density", type=_density)
    p.add_argument("--doped", action="store_true", help="use the doped expressions even at n_h = 0")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--cut", type=int)
    g.add_argument("--curve", action="store_true", help="all admissible cuts (default)")
    common(p)

    p = sub.add_parser("verify", help="cross-check recursions against exhaustive enumeration")
    p.add_argument("--max-rungs", type=int)
    p.add_argument("--legs", type=int, choices=LEGS)
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    common(p)

    p = sub.add_parser("sweep", help="write the CSV behind one figure")
    p.add_argument("--figure", type=int, choices=(5, 7, 8), required=True)
    p.add_argument("--rungs", type=int, default=100)
    p.add_argument("--output-dir", default=".")
    p.add_argument("--jobs", type=int, default=None)
    return parser


def _prepare_rate(args):
    flags = (args.density_from, args.density_to, args.density_step)
    args.doped_mode = any(f is not None for f in flags)
    if args.doped_mode:
        args.density_from = 0.0 if args.density_from is None else args.density_from
        args.density_to = 1.0 if args.density_to is None else args.density_to
        args.density_step = 0.005 if args.density_step is None else args.density_step
        if args.density_step <= 0:
            raise UsageError("--density-step must be positive")
        if args.density_to < args.density_from:
            raise UsageError("--density-to must not be below --density-from")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            path = cmd_sweep(args)
            print(path)
            return 0
        if args.command == "verify":
            report, code = cmd_verify(args)
            _emit(report.render(args.format), args.output)
            return code
        if args.command == "rate":
            _prepare_rate(args)
            report = cmd_rate(args)
        elif args.command == "seq":
            report = cmd_seq(args)
        else:
            report = cmd_vbe(args)
        _emit(report.render(args.format), args.output)
        return 0
    except (LadderError, UsageError) as exc:
        print(f"ladderfib {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
