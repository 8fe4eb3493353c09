"""Command-line interface: ``altqw {evolve,measure,sweep,verify,reproduce}``.

Exit codes: 0 success, 1 failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import shlex
import sys
from pathlib import Path
from typing import Iterator, Sequence

from . import __version__
from .angles import format_angle, parse_angle
from .canonical import ckw_report, gme_axiom_report, oracle_report
from .coins import NAMED_COINS, named_coin
from .entanglement import canonical_measure, point_series, theta_average_series, write_measure_csv
from .reproduce import TARGETS, run_target
from .sweep import PARAMETERS, SweepGrid, find_maxima, reproduce_table, run_sweep
from .walk import CoinParams, EvolutionSequence, InitParams, evolve, write_state_csv

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


def angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def coin_spec(text: str) -> CoinParams:
    """Named coin (M1, G2, H, ...) or an ``alpha,beta,gamma`` triple."""
    if "," not in text:
        try:
            return named_coin(text)
        except KeyError as exc:
            raise argparse.ArgumentTypeError(exc.args[0]) from None
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"coin needs three angles alpha,beta,gamma, got {text!r}")
    return CoinParams(*(angle(p) for p in parts))


def nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def pos_int(text: str) -> int:
    value = nonneg_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def vary_spec(text: str) -> list[tuple[str, int]]:
    out = []
    for item in text.split(","):
        name, _, n = item.partition(":")
        if name not in PARAMETERS or not n:
            raise argparse.ArgumentTypeError(f"bad --vary entry {item!r}; use name:count with name in {PARAMETERS}")
        out.append((name, nonneg_int(n)))
    return out


def fix_spec(text: str) -> dict[str, float]:
    out = {}
    for item in text.split(","):
        name, _, value = item.partition("=")
        if name not in PARAMETERS or not value:
            raise argparse.ArgumentTypeError(f"bad --fix entry {item!r}; use name=angle")
        out[name] = angle(value)
    return out


@contextlib.contextmanager
def _output(path: str | None) -> Iterator:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _sequence(coins: list[CoinParams], steps: int) -> EvolutionSequence:
    # repeated --coin flags cycle over time steps
    return EvolutionSequence([coins[k % len(coins)] for k in range(steps)])


def cmd_evolve(args) -> int:
    ip = InitParams(args.theta, args.phi)
    state = evolve(ip, _sequence(args.coin, args.steps), args.steps)
    with _output(args.out) as fh:
        write_state_csv(state, fh)
    return EXIT_OK


_AVERAGED = {"Nav": "N", "piav": "pi"}
_POINT = {"N": "N", "pi": "pi"}
_RESIDUALS = ("pix", "piy", "pic")


def cmd_measure(args) -> int:
    names = args.measure or ["Nav"]
    for name in names:
        if name not in (*_AVERAGED, *_POINT, *_RESIDUALS):
            raise UsageError(f"unknown measure {name!r}")
        if name in _POINT and args.theta is None:
            raise UsageError(f"point measure {name} needs --theta")
    seq = _sequence(args.coin, args.steps)
    point = [n for n in names if n in _POINT or (n in _RESIDUALS and args.theta is not None)]
    avg = [n for n in names if n not in point]
    rows: dict[int, list] = {}
    if avg and args.steps > 0:
        inner = [_AVERAGED.get(n, n) for n in avg]
        for t, vals in theta_average_series(inner, args.phi, seq, args.steps, args.n_theta):
            rows.setdefault(t, []).extend((t, None, args.phi, n, vals[i]) for n, i in zip(avg, inner))
    if point and args.steps > 0:
        ip = InitParams(args.theta, args.phi)
        for t, vals in point_series(point, ip, seq, args.steps):
            rows.setdefault(t, []).extend((t, ip.theta, args.phi, n, vals[canonical_measure(n)]) for n in point)
    ordered = [r for t in sorted(rows) for r in sorted(rows[t], key=lambda r: names.index(r[3]))]
    with _output(args.out) as fh:
        write_measure_csv(ordered, fh)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.table is not None:
        report, results = reproduce_table(args.table, n_theta=args.n_theta, workers=args.workers)
        print(report.to_text(), end="")
        if args.out:
            Path(args.out).write_text(report.to_csv())
        return EXIT_OK if report.ok else EXIT_CHECK_FAILED
    if not args.vary:
        raise UsageError("sweep needs --table or --vary")
    grid = SweepGrid(
        varied=tuple(args.vary),
        fixed=args.fix or {},
        T=args.steps,
        measure=args.measure,
        n_theta=args.n_theta,
        endpoint=args.endpoint,
    )
    result = run_sweep(grid, workers=args.workers)
    with _output(args.out) as fh:
        result.to_csv(fh)
    maxima = find_maxima(result, args.rel_tol)
    print(f"max {grid.measure} = {result.max_value:.10g} at {len(maxima)} grid point(s)", file=sys.stderr)
    for idx in maxima[:20]:
        print("  " + ", ".join(f"{name}={i}" for (name, _), i in zip(grid.varied, idx)), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "gme":
        report = gme_axiom_report(n_unitaries=args.samples or 50, seed=args.seed)
    elif args.suite == "ckw":
        report = ckw_report(samples=args.samples or 100, t_max=args.tmax, seed=args.seed)
    else:
        report = oracle_report(t_max=args.tmax, samples=args.samples or 20, seed=args.seed)
    print(report.to_text(), end="")
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_reproduce(args) -> int:
    if args.target not in TARGETS:
        raise UsageError(f"unknown target {args.target!r}; available: {', '.join(TARGETS)}")
    log = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    report = run_target(args.target, Path(args.out_dir), args.max_t, args.n_theta, args.workers, log)
    print(report.to_text(), end="")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="altqw", description="2D alternate quantum walk entanglement toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value file mirroring the flags; flags override it")
        p.add_argument("--out", help="output file (default stdout)")

    def walk_args(p, theta_required):
        p.add_argument("--coin", type=coin_spec, action="append", required=True,
                       help=f"named coin ({', '.join(NAMED_COINS)}) or alpha,beta,gamma; repeat to cycle per step")
        p.add_argument("--theta", type=angle, required=theta_required, help="initial-state theta, e.g. pi/2")
        p.add_argument("--phi", type=angle, required=True, help="initial-state phase, e.g. pi")
        p.add_argument("--steps", type=nonneg_int, required=True, help="number of time steps T")

    p = sub.add_parser("evolve", help="dump the walker state after T steps as x,y,c,re,im")
    common(p)
    walk_args(p, theta_required=True)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("measure", help="entanglement measures for t = 1..T")
    common(p)
    walk_args(p, theta_required=False)
    p.add_argument("--measure", action="append", help="N, Nav, pi, piav, pix, piy or pic (repeatable)")
    p.add_argument("--n-theta", type=pos_int, default=33, help="theta samples for averages (default 33)")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="grid sweep of theta-averaged entanglement")
    common(p)
    p.add_argument("--table", type=int, choices=(1, 2), help="rerun the sweeps behind tabulated argmax sets")
    p.add_argument("--vary", type=vary_spec, help="e.g. phi:32,alpha:32")
    p.add_argument("--fix", type=fix_spec, help="e.g. beta=pi/2,gamma=pi/2")
    p.add_argument("--measure", default="piav", choices=("piav", "Nav"))
    p.add_argument("--steps", type=nonneg_int, default=2)
    p.add_argument("--n-theta", type=pos_int, default=33)
    p.add_argument("--endpoint", action="store_true", help="include 2pi as the last sample of each axis")
    p.add_argument("--rel-tol", type=float, default=1e-6, help="relative tolerance for reported maxima")
    p.add_argument("--workers", type=pos_int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="axiom, monogamy and oracle check suites")
    p.add_argument("--config")
    p.add_argument("--suite", choices=("gme", "ckw", "oracle"), required=True)
    p.add_argument("--samples", type=pos_int)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--tmax", type=nonneg_int, default=4)
    p.add_argument("--csv", help="also write the report as CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help=f"regenerate figure/table data: {', '.join(TARGETS)}")
    p.add_argument("--config")
    p.add_argument("target")
    p.add_argument("--out-dir", default="results")
    p.add_argument("--max-t", type=nonneg_int, help="truncate time series at this step")
    p.add_argument("--n-theta", type=pos_int, default=33)
    p.add_argument("--workers", type=pos_int, default=1)
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return parser


def _config_tokens(path: str, argv: Sequence[str]) -> list[str]:
    """Turn ``key=value`` lines into flags, skipping keys given on the command line."""
    present = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
    tokens: list[str] = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        flag = "--" + key.replace("_", "-")
        if flag in present:
            continue
        if value.lower() in ("true", "yes"):
            tokens.append(flag)
        elif value.lower() in ("false", "no"):
            continue
        else:
            for v in shlex.split(value) if key == "coin" else [value]:
                tokens += [flag, v]
    return tokens


def _with_config(argv: list[str]) -> list[str]:
    if "--config" not in argv and not any(a.startswith("--config=") for a in argv):
        return argv
    for k, a in enumerate(argv):
        if a == "--config" and k + 1 < len(argv):
            path = argv[k + 1]
            break
        if a.startswith("--config="):
            path = a.split("=", 1)[1]
            break
    else:
        return argv
    # command name is the first positional token
    return argv[:1] + _config_tokens(path, argv) + argv[1:]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _with_config(argv)
    except (OSError, UsageError) as exc:
        parser.print_usage(sys.stderr)
        print(f"altqw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"altqw {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
