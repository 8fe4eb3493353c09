"""Grid sweeps of theta-averaged entanglement over (phi, alpha, beta, gamma)."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .angles import pi_fraction
from .entanglement import DEFAULT_N_THETA, canonical_measure, phi_averages
from .report import Report
from .tables import TABLES
from .walk import CoinParams, basis_trajectory

__all__ = [
    "PARAMETERS",
    "SweepGrid",
    "SweepResult",
    "EntanglementTransformer",
    "evaluate_rows",
    "run_sweep",
    "find_maxima",
    "reproduce_table",
]

PARAMETERS = ("phi", "alpha", "beta", "gamma")
_SWEEP_MEASURES = {"N": "Nav", "pi": "piav"}


def grid_values(n: int, endpoint: bool) -> NDArray[np.float64]:
    """``n`` samples of ``[0, 2*pi)`` (or ``[0, 2*pi]`` with ``endpoint``) as exact
    multiples of the grid step."""
    if n < 2:
        raise ValueError(f"need at least 2 samples per axis, got {n}")
    steps = n - 1 if endpoint else n
    return np.array([2.0 * math.pi * k / steps for k in range(n)])


@dataclass(frozen=True)
class SweepGrid:
    varied: tuple[tuple[str, int], ...]
    fixed: Mapping[str, float] = field(default_factory=dict)
    T: int = 2
    measure: str = "piav"
    n_theta: int = DEFAULT_N_THETA
    endpoint: bool = False

    def __post_init__(self) -> None:
        varied = tuple((str(name), int(n)) for name, n in self.varied)
        object.__setattr__(self, "varied", varied)
        object.__setattr__(self, "fixed", dict(self.fixed))
        names = [name for name, _ in varied]
        for name in [*names, *self.fixed]:
            if name not in PARAMETERS:
                raise ValueError(f"unknown sweep parameter {name!r}; expected one of {PARAMETERS}")
        if not varied:
            raise ValueError("a sweep needs at least one varied parameter")
        if len(set(names)) != len(names) or set(names) & set(self.fixed):
            raise ValueError(f"varied {names} and fixed {sorted(self.fixed)} must be disjoint")
        missing = set(PARAMETERS) - set(names) - set(self.fixed)
        if missing:
            raise ValueError(f"parameters {sorted(missing)} are neither varied nor fixed")
        for name, n in varied:
            if n < 2:
                raise ValueError(f"parameter {name} needs at least 2 samples, got {n}")
        if self.T < 0:
            raise ValueError(f"T must be non-negative, got {self.T}")
        if self.n_theta < 2:
            raise ValueError(f"n_theta must be at least 2, got {self.n_theta}")
        object.__setattr__(self, "measure", _SWEEP_MEASURES[canonical_measure(self.measure)])

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.varied)

    def axes(self) -> list[NDArray[np.float64]]:
        return [grid_values(n, self.endpoint) for _, n in self.varied]

    def points(self) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        """Grid indices ``(R, k)`` and parameter rows ``(R, 4)`` in lexicographic order."""
        axes = self.axes()
        idx = np.array(list(itertools.product(*(range(n) for n in self.shape))), dtype=np.int64)
        params = np.empty((len(idx), 4))
        for col, name in enumerate(PARAMETERS):
            if name in self.fixed:
                params[:, col] = self.fixed[name]
        for k, (name, _) in enumerate(self.varied):
            params[:, PARAMETERS.index(name)] = axes[k][idx[:, k]]
        return idx, params


@dataclass(frozen=True, eq=False)
class SweepResult:
    grid: SweepGrid
    indices: NDArray[np.int64]
    params: NDArray[np.float64]
    values: NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def max_value(self) -> float:
        return float(self.values.max())

    def to_csv(self, fh: IO[str]) -> None:
        k = self.indices.shape[1]
        fh.write(",".join([f"idx{i}" for i in range(k)] + list(PARAMETERS) + ["value"]) + "\n")
        for idx, par, val in zip(self.indices, self.params, self.values):
            fields = [str(int(i)) for i in idx] + [format(float(p), ".17g") for p in par]
            fh.write(",".join(fields) + f",{float(val):.17g}\n")


def _coin_job(coin: tuple[float, float, float], phis: NDArray, measure: str, T: int, n_theta: int) -> NDArray:
    *_, basis = basis_trajectory(CoinParams(*coin), T)
    return phi_averages(basis, phis, measure, n_theta)


def evaluate_rows(
    X: NDArray[np.float64],
    measure: str = "piav",
    T: int = 2,
    n_theta: int = DEFAULT_N_THETA,
    workers: int = 1,
) -> NDArray[np.float64]:
    """Theta-averaged measure for parameter rows ``(phi, alpha, beta, gamma)``.

    Rows sharing a coin are evaluated together from one evolution of the coin
    basis states; each coin is an independent job and results land in fixed
    row slots, so the output does not depend on ``workers``.
    """
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    X = np.asarray(X, dtype=np.float64)
    groups: dict[tuple[float, float, float], list[int]] = {}
    for r, (_, a, b, g) in enumerate(X):
        groups.setdefault((float(a), float(b), float(g)), []).append(r)
    jobs = list(groups.items())

    def run(job):
        coin, rows = job
        return _coin_job(coin, X[rows, 0], measure, T, n_theta)

    if workers == 1:
        results = map(run, jobs)
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
        results = pool.map(run, jobs)
    out = np.empty(len(X))
    for (_, rows), vals in zip(jobs, results):
        out[rows] = vals
    if workers > 1:
        pool.shutdown()
    return out


class EntanglementTransformer(TransformerMixin, BaseEstimator):
    """Map rows ``(phi, alpha, beta, gamma)`` to a theta-averaged measure.

    Stateless apart from input validation, so it slots into scikit-learn
    pipelines and parameter searches over ``T``, ``n_theta`` or ``measure``.

    Parameters
    ----------
    measure : {"piav", "Nav"}
        Averaged pi-tangle or averaged x-y negativity.
    T : int
        Number of walk steps.
    n_theta : int
        Trapezoid samples over theta in [0, pi].
    workers : int
        Thread count used across distinct coins.
    """

    def __init__(self, measure: str = "piav", T: int = 2, n_theta: int = DEFAULT_N_THETA, workers: int = 1):
        self.measure = measure
        self.T = T
        self.n_theta = n_theta
        self.workers = workers

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 columns (phi, alpha, beta, gamma), got {X.shape[1]}")
        canonical_measure(self.measure)
        self.n_features_in_ = 4
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        vals = evaluate_rows(X, self.measure, self.T, self.n_theta, self.workers)
        return vals[:, None]

    def get_feature_names_out(self, input_features=None):
        return np.array([_SWEEP_MEASURES[canonical_measure(self.measure)]], dtype=object)


def run_sweep(g: SweepGrid, workers: int = 1) -> SweepResult:
    idx, params = g.points()
    values = evaluate_rows(params, g.measure, g.T, g.n_theta, workers)
    if not np.all(np.isfinite(values)):
        raise ArithmeticError("sweep produced non-finite values")
    return SweepResult(g, idx, params, values)


def find_maxima(r: SweepResult, rel_tol: float = 1e-6) -> list[tuple[int, ...]]:
    """Grid indices whose value is at least ``(1 - rel_tol)`` times the maximum."""
    if len(r) == 0:
        raise ValueError("empty sweep result")
    top = r.values.max()
    keep = r.values >= top - rel_tol * abs(top)
    return sorted(tuple(int(i) for i in row) for row in r.indices[keep])


def reproduce_table(
    which: int,
    n_theta: int = DEFAULT_N_THETA,
    workers: int = 1,
    rows: Sequence[int] | None = None,
    rel_tol: float = 1e-6,
) -> tuple[Report, list[SweepResult]]:
    """Rerun the sweeps behind a tabulated argmax set and compare index sets.

    Grids include both endpoints (``n + 1`` samples per axis in units of
    ``2*pi/n``) since the tabulated sets reference index ``n``.
    """
    if which not in TABLES:
        raise ValueError(f"unknown table {which!r}; expected one of {sorted(TABLES)}")
    spec = TABLES[which]
    n = spec["units"]
    report = Report(f"Table {which} argmax sets (units 2pi/{n}, t=2)", meta={"n_theta": n_theta, "rel_tol": rel_tol})
    results = []
    for k, row in enumerate(spec["rows"], start=1):
        if rows is not None and k not in rows:
            continue
        grid = SweepGrid(
            varied=(("phi", n + 1), (row.varied, n + 1)),
            fixed={name: pi_fraction(frac) for name, frac in row.fixed.items()},
            T=2,
            measure=spec["measure"],
            n_theta=n_theta,
            endpoint=True,
        )
        result = run_sweep(grid, workers)
        results.append(result)
        found = frozenset(find_maxima(result, rel_tol))
        missing = sorted(row.argmax - found)
        extra = sorted(found - row.argmax)
        detail = f"{len(found)} points"
        if missing or extra:
            detail += f"; missing {_preview(missing)}; extra {_preview(extra)}"
        report.add(f"row{k}", f"{row.label} argmax (phi,{row.varied})", f"{len(row.argmax)} points", detail, found == row.argmax)
        rel = abs(result.max_value - spec["max_value"]) / spec["max_value"]
        report.add(f"row{k}", f"{row.label} max {spec['measure']}", f"{spec['max_value']} (1%)", f"{result.max_value:.6f}", rel <= 0.01)
    return report, results


def _preview(pairs: list, limit: int = 6) -> str:
    if not pairs:
        return "none"
    head = " ".join(f"({a};{b})" for a, b in pairs[:limit])
    return head + (f" ... (+{len(pairs) - limit})" if len(pairs) > limit else "")
