"""Named reproduction targets: figure data series and table checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .angles import format_angle
from .coins import named_coin
from .entanglement import (
    DEFAULT_N_THETA,
    point_series,
    theta_average_series,
    theta_samples,
    write_measure_csv,
)
from .report import Report
from .sweep import reproduce_table
from .walk import InitParams

__all__ = ["Series", "TARGETS", "run_target"]

PI = math.pi


@dataclass(frozen=True)
class Series:
    """One curve: ``kind`` is ``"avg"`` (theta average vs t), ``"theta"``
    (point value vs theta at fixed t) or ``"point"`` (point value vs t)."""

    name: str
    kind: str
    coin: str
    phi: float
    measures: tuple[str, ...]
    t: int
    theta: float = PI / 2


@dataclass(frozen=True)
class Anchor:
    series: str
    measure: str
    x: float  # t for "avg"/"point" series, theta for "theta" series
    expected: float
    rel_tol: float | None = None
    abs_tol: float | None = None


def _avg(coin: str, phi: float, label: str, measure: str, t: int = 22) -> Series:
    return Series(f"{coin}_phi={label}", "avg", coin, phi, (measure,), t)


FIGURES: dict[str, tuple[list[Series], list[Anchor]]] = {
    "fig2a": (
        [_avg("M1", PI, "pi", "pi"), _avg("M1", PI / 2, "pi/2", "pi")],
        [Anchor("M1_phi=pi", "pi", 2, 2.0656, 0.01), Anchor("M1_phi=pi", "pi", 10, 30.6639, 0.01),
         Anchor("M1_phi=pi", "pi", 22, 132.5407, 0.01)],
    ),
    "fig2b": (
        [_avg("M2", PI / 8, "pi/8", "pi"), _avg("M2", PI / 2, "pi/2", "pi")],
        [Anchor("M2_phi=pi/2", "pi", 2, 2.0656, 0.01), Anchor("M2_phi=pi/2", "pi", 10, 30.6639, 0.01),
         Anchor("M2_phi=pi/2", "pi", 22, 132.5407, 0.01)],
    ),
    "fig3a": (
        [Series("M1_phi=pi", "theta", "M1", PI, ("pi",), 15), Series("M2_phi=pi/2", "theta", "M2", PI / 2, ("pi",), 15)],
        [Anchor("M1_phi=pi", "pi", PI / 2, 69.0024, 0.005), Anchor("M2_phi=pi/2", "pi", PI / 2, 69.0024, 0.005)],
    ),
    "fig3b": (
        [Series("G1_phi=pi", "theta", "G1", PI, ("N",), 15), Series("G2_phi=pi/2", "theta", "G2", PI / 2, ("N",), 15)],
        [Anchor("G1_phi=pi", "N", PI / 2, 4.4429, 0.001), Anchor("G2_phi=pi/2", "N", PI / 2, 4.4429, 0.001)],
    ),
    "fig4a": (
        [_avg("G1", PI, "pi", "N"), _avg("G1", 5 * PI / 8, "5pi/8", "N")],
        [Anchor("G1_phi=pi", "N", 2, 0.4290, 0.01), Anchor("G1_phi=pi", "N", 10, 2.7089, 0.01),
         Anchor("G1_phi=pi", "N", 22, 5.9950, 0.01)],
    ),
    "fig4b": (
        [_avg("G2", PI / 8, "pi/8", "N"), _avg("G2", PI / 2, "pi/2", "N")],
        [Anchor("G2_phi=pi/2", "N", 2, 0.4290, 0.01), Anchor("G2_phi=pi/2", "N", 10, 2.7089, 0.01)],
    ),
    "figS1": (
        [Series("M1_phi=pi", "avg", "M1", PI, ("pix", "piy", "pic"), 22),
         Series("M2_phi=pi/2", "avg", "M2", PI / 2, ("pix", "piy", "pic"), 22)],
        [],
    ),
    "figS3": (
        [_avg("M3", PI / 8, "pi/8", "pi"), _avg("M3", PI / 2, "pi/2", "pi"),
         _avg("M4", PI / 2, "pi/2", "pi"), _avg("M4", PI / 8, "pi/8", "pi")],
        [Anchor("M3_phi=pi/8", "pi", 2, 2.0656, 0.01), Anchor("M4_phi=pi/2", "pi", 2, 2.0656, 0.01)],
    ),
    "figS5": (
        [_avg("G3", PI / 2, "pi/2", "N"), _avg("G3", PI / 8, "pi/8", "N"),
         _avg("G4", PI / 2, "pi/2", "N"), _avg("G4", PI / 8, "pi/8", "N")],
        [Anchor("G3_phi=pi/8", "N", 2, 0.429, 0.01), Anchor("G4_phi=pi/2", "N", 2, 0.429, 0.01)],
    ),
    "figS6": (
        [Series("G1_phi=0", "point", "G1", 0.0, ("N",), 25),
         Series("G2_phi=pi/2", "point", "G2", PI / 2, ("N",), 25),
         Series("H_phi=pi/2", "point", "H", PI / 2, ("N",), 25)],
        [Anchor("G1_phi=0", "N", 25, 7.4104, 0.001), Anchor("G2_phi=pi/2", "N", 25, 7.4104, 0.001),
         Anchor("H_phi=pi/2", "N", 25, 6.9429, 0.001)]
        + [Anchor(s, "N", 1, 0.0, abs_tol=1e-9) for s in ("G1_phi=0", "G2_phi=pi/2", "H_phi=pi/2")],
    ),
}

TARGETS = tuple(FIGURES) + ("table1", "table2")


def _series_rows(s: Series, max_t: int | None, n_theta: int) -> list[tuple]:
    """Measure-CSV rows ``(t, theta, phi, measure, value)`` for one series."""
    coin = named_coin(s.coin)
    t_end = s.t if max_t is None else min(s.t, max_t)
    rows = []
    if s.kind == "avg":
        for t, vals in theta_average_series(s.measures, s.phi, coin, t_end, n_theta):
            rows.extend((t, None, s.phi, m, vals[m]) for m in s.measures)
    elif s.kind == "point":
        for t, vals in point_series(s.measures, InitParams(s.theta, s.phi), coin, t_end):
            rows.extend((t, s.theta, s.phi, m, vals[m]) for m in s.measures)
    elif s.kind == "theta":
        # fixed-time curve; max_t only truncates time series
        for m in s.measures:
            thetas, vals = theta_samples(m, s.phi, coin, s.t, n_theta)
            rows.extend((s.t, float(th), s.phi, m, float(v)) for th, v in zip(thetas, vals))
    else:
        raise ValueError(f"unknown series kind {s.kind!r}")
    return rows


def _csv_measure(kind: str, measure: str) -> str:
    if kind == "avg" and measure in ("N", "pi"):
        return measure + "av"
    return measure


def run_figure(
    target: str,
    out_dir: Path,
    max_t: int | None = None,
    n_theta: int = DEFAULT_N_THETA,
    log: Callable[[str], None] | None = None,
) -> Report:
    """Write one CSV per series plus ``<target>.dat`` and check known anchor values."""
    series, anchors = FIGURES[target]
    out_dir.mkdir(parents=True, exist_ok=True)
    report = Report(f"{target} anchors", meta={"max_t": max_t, "n_theta": n_theta})
    values: dict[tuple[str, str], dict[float, float]] = {}
    blocks = []
    for s in series:
        if log:
            log(f"{target}: {s.name}")
        rows = _series_rows(s, max_t, n_theta)
        rows = [(t, th, phi, _csv_measure(s.kind, m), v) for t, th, phi, m, v in rows]
        path = out_dir / f"{target}_{s.name.replace('=', '').replace('/', 'over')}.csv"
        with path.open("w", newline="") as fh:
            write_measure_csv(rows, fh)
        for m in s.measures:
            label = _csv_measure(s.kind, m)
            pts = [(th if s.kind == "theta" else t, v) for t, th, _, mm, v in rows if mm == label]
            values[s.name, m] = dict(pts)
            blocks.append((f"{s.name} {label}", pts))
    with (out_dir / f"{target}.dat").open("w") as fh:
        for k, (title, pts) in enumerate(blocks):
            if k:
                fh.write("\n\n")
            fh.write(f"# {title}\n")
            for x, y in pts:
                fh.write(f"{x:.17g} {y:.17g}\n")
    kinds = {s.name: s.kind for s in series}
    for a in anchors:
        pts = values.get((a.series, a.measure), {})
        hit = [v for x, v in pts.items() if abs(x - a.x) < 1e-9]
        at = f"theta={format_angle(a.x)}" if kinds[a.series] == "theta" else f"t={int(a.x)}"
        where = f"{a.series} {a.measure} at {at}"
        if not hit:
            report.add("anchor", where, a.expected, "not computed (truncated)", None)
            continue
        got = hit[0]
        if a.abs_tol is not None:
            ok = abs(got - a.expected) <= a.abs_tol
            tol = f"+-{a.abs_tol:g}"
        else:
            ok = abs(got - a.expected) <= a.rel_tol * abs(a.expected)
            tol = f"{a.rel_tol:.1%}"
        report.add("anchor", where, f"{a.expected} ({tol})", f"{got:.6f}", ok)
    if target == "figS1":
        worst = min(min(v.values(), default=0.0) for v in values.values())
        report.add("ckw", "min theta-averaged residual", ">= -1e-8", f"{worst:.3e}", worst >= -1e-8)
    return report


def run_target(
    target: str,
    out_dir: Path,
    max_t: int | None = None,
    n_theta: int = DEFAULT_N_THETA,
    workers: int = 1,
    log: Callable[[str], None] | None = None,
) -> Report:
    if target in FIGURES:
        return run_figure(target, out_dir, max_t, n_theta, log)
    if target in ("table1", "table2"):
        which = int(target[-1])
        report, results = reproduce_table(which, n_theta=n_theta, workers=workers)
        out_dir.mkdir(parents=True, exist_ok=True)
        for k, res in enumerate(results, start=1):
            with (out_dir / f"{target}_row{k}.csv").open("w", newline="") as fh:
                res.to_csv(fh)
        (out_dir / f"{target}_report.csv").write_text(report.to_csv())
        return report
    raise KeyError(f"unknown target {target!r}; available: {', '.join(TARGETS)}")
