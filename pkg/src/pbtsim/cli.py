"""Command-line front end: single evaluations, parameter sweeps, figure data,
and the oracle cross-check suite.  All tabular output is CSV with a fixed
header and 12-significant-digit values so runs diff cleanly.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .choi import check_choi, choi_from_reduced
from .kraus import apply_protocol, choi_to_kraus, protocol_kraus
from .oracle import MAX_ORACLE_PORTS, oracle_choi
from .resources import (AdChoi, Alternate, Bell, FromFile, ResourceFamily,
                        make_family, reduced_port_state)

USAGE_EXIT = 1
VALIDATION_EXIT = 2


class _Parser(argparse.ArgumentParser):
    # exit code 1 for usage problems; 2 is reserved for numerical validation
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE_EXIT)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def parse_resource(spec: str) -> ResourceFamily:
    """bell | ad:<p> | alternate:<a> | path to a PBTRES file."""
    low = spec.lower()
    if low == "bell":
        return Bell()
    if low.startswith("ad:"):
        return AdChoi(float(spec.split(":", 1)[1]))
    if low.startswith("alternate:") or low.startswith("alt:"):
        return Alternate(float(spec.split(":", 1)[1]))
    if Path(spec).exists():
        return FromFile(spec)
    raise ValueError(
        f"unknown resource {spec!r}: expected bell, ad:<p>, alternate:<a>, or a file path"
    )


def parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:step, got {spec!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {spec!r}: need step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.minimum(start + step * np.arange(count), stop)


def _print_matrix(m: np.ndarray) -> None:
    for row in m:
        print("  ".join(f"{z.real:+.12g}{z.imag:+.12g}j" for z in row))


def _write_csv(path: Path, header: list[str], rows: list[list[float]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def sweep_rows(n: int, p0: float, family: str, grid: np.ndarray,
               seed: int, restarts: int) -> list[list[float]]:
    """param, trace_norm, diamond_lower, diamond_upper, diamond_numeric rows."""
    target = analysis.ad_choi(p0, "plus")
    rows = []
    for param in grid:
        if family == "choi":
            out = analysis.pbt_ad_choi(n, float(param))
        elif family == "alternate":
            out = analysis.alternate_choi(n, float(param))
        else:
            raise ValueError(f"unknown sweep family {family!r}")
        lower, upper = analysis.diamond_bounds(out, target)
        numeric = analysis.diamond_numeric(out, target, seed=seed, restarts=restarts)
        rows.append([float(param), lower, lower, upper, numeric])
    return rows


_SWEEP_HEADER = ["param", "trace_norm", "diamond_lower", "diamond_upper", "diamond_numeric"]


def cmd_xi(args) -> int:
    print(_fmt(analysis.xi(args.ports)))
    return 0


def _resolve_choi(args) -> np.ndarray:
    family = parse_resource(args.resource)
    reduced = make_family(family, args.ports)
    return choi_from_reduced(reduced)


def cmd_choi(args) -> int:
    c = _resolve_choi(args)
    try:
        check_choi(c)
    except ValueError as exc:
        print(f"invalid output Choi matrix: {exc}", file=sys.stderr)
        return VALIDATION_EXIT
    _print_matrix(c)
    return 0


def cmd_kraus(args) -> int:
    ks = choi_to_kraus(_resolve_choi(args))
    print(f"# {len(ks.ops)} Kraus operators (rows: output, cols: input)")
    for i, op in enumerate(ks.ops, start=1):
        print(f"K{i}:")
        _print_matrix(op)
    return 0


def cmd_protocol_kraus(args) -> int:
    pk = protocol_kraus(args.ports)
    print(f"# {len(pk.ops)} reduced protocol Kraus operators, 4 x {2 ** (args.ports + 1)}")
    print(f"# kernel sector: {len(pk.k2)}, bulk: {len(pk.k1)}")
    for i, op in enumerate(pk.ops, start=1):
        print(f"K{i}:")
        _print_matrix(op)
    return 0


def cmd_ad_sweep(args) -> int:
    if args.grid is not None:
        grid = parse_grid(args.grid)
    elif args.family == "choi":
        grid = parse_grid("0:1:0.01")
    else:
        grid = parse_grid("0.5:1:0.01")
    rows = sweep_rows(args.ports, args.p0, args.family, grid, args.seed, args.restarts)
    for row in rows:
        if not (row[1] - 1e-6 <= row[4] <= row[3] + 1e-6):
            print(f"diamond estimate escaped its bounds at param={row[0]}", file=sys.stderr)
            return VALIDATION_EXIT
    if args.out:
        _write_csv(Path(args.out), _SWEEP_HEADER, rows)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(_SWEEP_HEADER)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return 0


def _figure_sweep_files(out: Path, n: int, p0_values, family: str, lo: float, hi: float,
                        step: float, seed: int, restarts: int, stem: str) -> list[Path]:
    paths = []
    for p0 in p0_values:
        grid = parse_grid(f"{lo}:{hi}:{step}")
        rows = sweep_rows(n, p0, family, grid, seed, restarts)
        path = out / f"{stem}_p0_{p0:g}.csv"
        _write_csv(path, _SWEEP_HEADER, rows)
        paths.append(path)
    return paths


def _figure_comparison(out: Path, n: int, step: float, seed: int, restarts: int) -> list[Path]:
    """Two-panel resource comparison: known-point and near-optimal choices."""
    x = analysis.xi(n)
    header = [
        "p0", "p1", "choi_trace_norm", "choi_diamond_lower", "choi_diamond_upper",
        "choi_diamond_numeric", "a", "alt_trace_norm", "alt_diamond_lower",
        "alt_diamond_upper", "alt_diamond_numeric",
    ]

    def known_point_a(p0: float) -> float | None:
        found = analysis.alternate_known_point(n, p0)
        return None if found is None else found[0]

    panels = []
    for stem, p0_start, choose_p1, choose_a in (
        ("left", x, lambda p0: (p0 - x) / (1 - x), known_point_a),
        ("right", x / 2, lambda p0: (2 * p0 - x) / (2 - x),
         lambda p0: analysis.alternate_trace_min_a(n, p0)),
    ):
        rows = []
        p0 = p0_start
        while p0 < 1.0 - 1e-9:
            p1 = choose_p1(p0)
            if 0 <= p1 <= 1:
                a = choose_a(p0)
                if a is not None:
                    target = analysis.ad_choi(p0, "plus")
                    c_choi = analysis.pbt_ad_choi(n, p1)
                    c_alt = analysis.alternate_choi(n, a)
                    lo_c, up_c = analysis.diamond_bounds(c_choi, target)
                    lo_a, up_a = analysis.diamond_bounds(c_alt, target)
                    rows.append([
                        p0, p1, lo_c, lo_c, up_c,
                        analysis.diamond_numeric(c_choi, target, seed=seed, restarts=restarts),
                        a, lo_a, lo_a, up_a,
                        analysis.diamond_numeric(c_alt, target, seed=seed, restarts=restarts),
                    ])
            p0 += step
        path = out / f"fig4_{stem}.csv"
        _write_csv(path, header, rows)
        panels.append(path)
    return panels


def cmd_figure(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    step = args.step
    seed, restarts = args.seed, args.restarts
    if args.id == 1:
        paths = _figure_sweep_files(out, 4, (0.36, 0.7), "choi", 0.0, 0.99, step, seed, restarts, "fig1")
    elif args.id == 2:
        paths = _figure_sweep_files(out, 4, (0.85, 0.95), "choi", 0.0, 0.99, step, seed, restarts, "fig2")
    elif args.id == 3:
        paths = _figure_sweep_files(out, 4, (0.36, 0.7), "alternate", 0.5, 0.99, step, seed, restarts, "fig3")
    elif args.id == 4:
        paths = _figure_comparison(out, 6, step, seed, restarts)
    else:
        print(f"unknown figure id {args.id}", file=sys.stderr)
        return USAGE_EXIT
    for p in paths:
        print(p)
    return 0


VERIFY_FAMILIES = [
    ("bell", Bell()),
    ("ad:0", AdChoi(0.0)), ("ad:0.3", AdChoi(0.3)), ("ad:0.7", AdChoi(0.7)), ("ad:1", AdChoi(1.0)),
    ("alternate:0.1", Alternate(0.1)), ("alternate:0.5", Alternate(0.5)),
    ("alternate:0.9", Alternate(0.9)),
]


def run_verification(max_ports: int) -> tuple[float, list[tuple[str, float]]]:
    """Closed form vs dense oracle vs protocol Kraus, per port count and family."""
    results = []
    worst = 0.0
    for n in range(2, max_ports + 1):
        pk = protocol_kraus(n)
        for name, family in VERIFY_FAMILIES:
            reduced = make_family(family, n)
            closed = choi_from_reduced(reduced)
            dev = float(np.max(np.abs(closed - oracle_choi(reduced))))
            dev = max(dev, float(np.max(np.abs(
                closed - apply_protocol(pk, reduced_port_state(family, n))))))
            results.append((f"n={n} {name}", dev))
            worst = max(worst, dev)
    return worst, results


def cmd_verify(args) -> int:
    if not 2 <= args.max_ports <= MAX_ORACLE_PORTS:
        print(f"--max-ports must be in 2..{MAX_ORACLE_PORTS}", file=sys.stderr)
        return USAGE_EXIT
    worst, results = run_verification(args.max_ports)
    for label, dev in results:
        print(f"{label}: max deviation {dev:.3e}")
    print(f"worst: {worst:.3e}")
    if worst > 1e-10:
        print("verification FAILED (deviation above 1e-10)", file=sys.stderr)
        return VALIDATION_EXIT
    print("ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pbtsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xi", help="depolarising probability for Bell ports")
    p.add_argument("--ports", type=int, required=True)
    p.set_defaults(fn=cmd_xi)

    for name, fn in (("choi", cmd_choi), ("kraus", cmd_kraus)):
        p = sub.add_parser(name, help=f"print the output {name} for a resource")
        p.add_argument("--ports", type=int, required=True)
        p.add_argument("--resource", required=True,
                       help="bell | ad:<p> | alternate:<a> | PBTRES file path")
        p.set_defaults(fn=fn)

    p = sub.add_parser("protocol-kraus", help="reduced protocol Kraus operators")
    p.add_argument("--ports", type=int, required=True)
    p.set_defaults(fn=cmd_protocol_kraus)

    p = sub.add_parser("ad-sweep", help="distance sweep against a damping target")
    p.add_argument("--ports", type=int, required=True)
    p.add_argument("--p0", type=float, required=True, help="target damping probability")
    p.add_argument("--family", choices=("choi", "alternate"), required=True)
    p.add_argument("--grid", help="start:stop:step (default 0:1:0.01 or 0.5:1:0.01)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(fn=cmd_ad_sweep)

    p = sub.add_parser("figure", help="emit the CSV data behind one figure")
    p.add_argument("--id", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=64)
    p.set_defaults(fn=cmd_figure)

    p = sub.add_parser("verify", help="oracle cross-check suite")
    p.add_argument("--max-ports", type=int, required=True)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"pbtsim: error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
