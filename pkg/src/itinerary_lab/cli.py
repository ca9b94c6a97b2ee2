"""Command-line front end.

Exit codes: 0 success, 2 configuration or domain error, 3 computational
failure (no bracket, reliability collapse).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from itinerary_lab import svg
from itinerary_lab.addresses import (
    MODES, ReliabilityError, critical_itineraries, discontinuities, omega_approx,
)
from itinerary_lab.maps import VARIANTS, InvalidSystemError, MapSystem, parse_number, validate
from itinerary_lab.projection import HOMEO_DEPTH, coding_pi, homeo_many
from itinerary_lab.relations import itinerary_report
from itinerary_lab.symmetry import SolverError, solve_symmetric
from itinerary_lab.words import itinerary

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE = 0, 2, 3


class ConfigError(ValueError):
    pass


def threads() -> int:
    raw = os.environ.get("ITINERARY_LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"ITINERARY_LAB_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise ConfigError("ITINERARY_LAB_THREADS must be at least 1")
    return n


def load_system(path: str) -> MapSystem:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    return MapSystem.from_json(data)


def _fmt(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# -- commands -----------------------------------------------------------------

def cmd_validate(args) -> int:
    system = load_system(args.config)
    report = validate(system, args.grid)
    _emit(_dump(report.to_json()), args.out)
    return EXIT_OK if report.passed else EXIT_CONFIG


def cmd_itinerary(args) -> int:
    system = load_system(args.config)
    x = parse_number(args.x, system.mode)
    if not 0 <= x <= 1:
        raise ConfigError(f"x={args.x} outside [0, 1]")
    result = itinerary(system, x, args.length, args.variant, args.eps_amb)
    _emit(_dump(result.to_json()), args.out)
    return EXIT_OK


def cmd_omega(args) -> int:
    system = load_system(args.config)
    prefixes = omega_approx(system, args.depth, args.mode)
    if args.format == "svg":
        rows = [(w, coding_pi(w).lo, coding_pi(w).hi) for w in prefixes.words]
        _emit(svg.cylinder_bars(rows, f"depth-{args.depth} cylinders"), args.out)
    else:
        _emit(_dump(prefixes.to_json()), args.out)
    return EXIT_OK


def cmd_addresses(args) -> int:
    system = load_system(args.config)
    _emit(discontinuities(system, args.depth).to_csv(), args.out)
    return EXIT_OK


def cmd_solve_symmetric(args) -> int:
    system = load_system(args.config)
    bracket = None
    if args.bracket:
        bracket = [parse_number(v, system.mode) for v in args.bracket]
    sol = solve_symmetric(system, rho_tol=args.tol, n=args.length, bracket=bracket)
    report = {"rho_star": float(sol.rho_star), "certificate": sol.certificate.to_json(),
              "mode": system.mode}
    if system.exact:
        report["rho_star_exact"] = _fmt(sol.rho_star)
        report["bracket"] = [_fmt(v) for v in sol.bracket]
    else:
        report["bracket"] = [float(v) for v in sol.bracket]
    _emit(_dump(report), args.out)
    return EXIT_OK


def cmd_homeo(args) -> int:
    system = load_system(args.config)
    if args.solve:
        system = system.with_rho(solve_symmetric(system).rho_star)
    xs = np.linspace(0.0, 1.0, args.samples)
    chunks = np.array_split(xs, min(threads(), max(1, args.samples)))
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        parts = list(pool.map(lambda c: homeo_many(system, c, args.length, args.tol), chunks))
    hs = np.concatenate(parts)
    if args.format == "svg":
        _emit(svg.graph(xs, hs, "h(x)"), args.out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "h"])
        for x, h in zip(xs, hs):
            writer.writerow([repr(float(x)), repr(float(h))])
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_relation(args) -> int:
    system = load_system(args.config)
    crit = critical_itineraries(system, max(args.depth, 2))
    r, report = itinerary_report(crit, args.depth)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["word", "lo", "hi"])
        for w in r.names(report.maximal_attractor):
            iv = coding_pi(w)
            writer.writerow([w, _fmt(iv.lo), _fmt(iv.hi)])
        _emit(buf.getvalue(), args.out)
    else:
        payload = {"depth": args.depth, "relation": r.to_json(), "report": report.to_json(r)}
        _emit(_dump(payload), args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="itinerary-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json",)):
        p.add_argument("--config", required=True, help="MapSystem JSON file")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        return p

    p = common(sub.add_parser("validate", help="check endpoint and derivative conditions"))
    p.add_argument("--grid", type=int, default=100)
    p.set_defaults(func=cmd_validate)

    p = common(sub.add_parser("itinerary", help="itinerary of one point"))
    p.add_argument("--x", required=True, help="point in [0, 1]; 'p/q' accepted")
    p.add_argument("--length", type=int, default=32)
    p.add_argument("--variant", choices=VARIANTS, default="left_closed")
    p.add_argument("--eps-amb", type=float, default=1e-12)
    p.set_defaults(func=cmd_itinerary)

    p = common(sub.add_parser("omega", help="depth-k prefix set"), ("json", "svg"))
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--mode", choices=MODES, default="closure")
    p.set_defaults(func=cmd_omega)

    p = common(sub.add_parser("addresses", help="cut points and interval addresses"), ("csv",))
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_addresses)

    p = common(sub.add_parser("solve-symmetric", help="find the symmetric threshold"))
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--length", type=int, default=32)
    p.add_argument("--bracket", nargs=2, default=None, metavar=("LO", "HI"))
    p.set_defaults(func=cmd_solve_symmetric)

    p = common(sub.add_parser("homeo", help="tabulate h(x)"), ("csv", "svg"))
    p.add_argument("--samples", type=int, default=1001)
    p.add_argument("--length", type=int, default=HOMEO_DEPTH)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--solve", action="store_true", help="replace rho by the solved symmetric value")
    p.set_defaults(func=cmd_homeo)

    p = common(sub.add_parser("relation", help="Conley report of the depth-k relation"),
               ("json", "csv"))
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_relation)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SolverError, ReliabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ConfigError, InvalidSystemError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
