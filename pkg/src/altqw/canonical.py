"""Three-qubit reference states and the measure-validation reports.

The reports check the pi-tangle against the standard requirements for a
genuine tripartite entanglement measure (zero on biseparable states, positive
on GHZ/W, local-unitary invariant, ranks GHZ above W), the monogamy
inequalities ``pi_i >= 0`` on random walk states, and the fast numerical paths
against dense reference computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .density import LABELS
from .entanglement import (
    batch_measures,
    negativity_full,
    negativity_full_dense,
    negativity_set,
    pi_tangle,
    theta_average_series,
)
from .coins import named_coin
from .oracle import dense_evolve
from .report import Report
from .walk import CoinParams, EvolutionSequence, InitParams, evolve, trajectory

__all__ = [
    "CANONICAL_NAMES",
    "CanonicalState",
    "make_canonical",
    "haar_unitary",
    "apply_local_unitaries",
    "Report",
    "BISEPARABLE_NEGATIVITIES",
    "gme_axiom_report",
    "ckw_report",
    "oracle_report",
]

CANONICAL_NAMES = ("GHZ", "W", "flippedW", "bisep_x", "bisep_y", "bisep_c", "product")
EXACT_TOL = 1e-9
ZERO_TOL = 1e-10
LU_TOL = 1e-8
CKW_TOL = -1e-8

_KETS = {
    "GHZ": ("000", "111"),
    "W": ("100", "010", "001"),
    "flippedW": ("110", "101", "011"),
    "bisep_x": ("000", "011"),
    "bisep_y": ("000", "101"),
    "bisep_c": ("000", "110"),
    "product": ("000",),
}

# N_{i|jk} and N_{ij} for the three biseparable states
BISEPARABLE_NEGATIVITIES: dict[str, dict] = {
    "bisep_x": {"x": 0, "c": 1, "y": 1, ("x", "y"): 0, ("y", "x"): 0, ("x", "c"): 0, ("c", "x"): 0, ("y", "c"): 1, ("c", "y"): 1},
    "bisep_y": {"x": 1, "c": 1, "y": 0, ("x", "y"): 0, ("y", "x"): 0, ("x", "c"): 1, ("c", "x"): 1, ("y", "c"): 0, ("c", "y"): 0},
    "bisep_c": {"x": 1, "c": 0, "y": 1, ("x", "y"): 1, ("y", "x"): 1, ("x", "c"): 0, ("c", "x"): 0, ("y", "c"): 0, ("c", "y"): 0},
}


@dataclass(frozen=True, eq=False)
class CanonicalState:
    name: str
    amplitudes: NDArray[np.complex128] = field(repr=False)


def make_canonical(name: str) -> CanonicalState:
    """Equal superposition of the listed basis kets ``|x y c>`` on dims (2, 2, 2)."""
    if name not in _KETS:
        raise KeyError(f"unknown canonical state {name!r}; known: {', '.join(CANONICAL_NAMES)}")
    kets = _KETS[name]
    amps = np.zeros((2, 2, 2), dtype=np.complex128)
    for ket in kets:
        amps[tuple(int(b) for b in ket)] = 1 / math.sqrt(len(kets))
    amps.flags.writeable = False
    return CanonicalState(name, amps)


def haar_unitary(n: int, rng: np.random.Generator) -> NDArray[np.complex128]:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase-fixed R."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def apply_local_unitaries(psi: NDArray, ux: NDArray, uy: NDArray, uc: NDArray) -> NDArray[np.complex128]:
    return np.einsum("ai,bj,ck,ijk->abc", ux, uy, uc, psi)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def gme_axiom_report(n_unitaries: int = 50, seed: int = 0) -> Report:
    """Check conditions C1, C2, C3 and C5 on the canonical states; C4 is cited."""
    rng = np.random.default_rng(seed)
    report = Report("pi-tangle GME axioms", meta={"seed": seed, "local_unitaries": n_unitaries})
    tangles = {name: pi_tangle(make_canonical(name)).pi_xyc for name in CANONICAL_NAMES}

    for name in ("bisep_x", "bisep_y", "bisep_c", "product"):
        report.add("C1", f"{name} pi_xyc", 0, _fmt(tangles[name]), abs(tangles[name]) <= ZERO_TOL)
    for name, expected in BISEPARABLE_NEGATIVITIES.items():
        ns = negativity_set(make_canonical(name))
        for key, value in expected.items():
            label = f"N_{key}|rest" if isinstance(key, str) else f"N_{key[0]}{key[1]}"
            got = ns[key]
            report.add("C1", f"{name} {label}", value, _fmt(got), abs(got - value) <= EXACT_TOL)

    for name in ("GHZ", "W"):
        report.add("C2", f"{name} pi_xyc", "> 0", _fmt(tangles[name]), tangles[name] > 0)

    for name in ("GHZ", "W"):
        psi = make_canonical(name).amplitudes
        worst = 0.0
        for _ in range(n_unitaries):
            us = [haar_unitary(2, rng) for _ in range(3)]
            worst = max(worst, abs(pi_tangle(apply_local_unitaries(psi, *us)).pi_xyc - tangles[name]))
        report.add("C3", f"{name} max |delta pi_xyc|", f"<= {LU_TOL:g}", f"{worst:.3e}", worst <= LU_TOL)

    report.add("C4", "LOCC monotonicity", "negativity non-increasing under LOCC", "not machine-checked; LU subcase is C3", None)

    for other in ("W", "flippedW"):
        report.add(
            "C5",
            f"pi(GHZ) > pi({other})",
            f"> {_fmt(tangles[other])}",
            _fmt(tangles["GHZ"]),
            tangles["GHZ"] > tangles[other],
        )
    return report


def ckw_report(samples: int = 100, t_max: int = 4, seed: int = 7, n_theta: int = 33, averages: bool = True) -> Report:
    """Monogamy check ``pi_x, pi_y, pi_c >= -1e-8`` on seeded random walk states.

    Also records theta-averaged residuals for M1 (phi=pi) and M2 (phi=pi/2).
    """
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    rng = np.random.default_rng(seed)
    report = Report("CKW monogamy", meta={"seed": seed, "samples": samples, "t_max": t_max})
    violations = 0
    worst = math.inf
    for k in range(samples):
        coin = CoinParams(*rng.uniform(0, 2 * math.pi, 3))
        ip = InitParams(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        for state in trajectory(ip, coin, t_max):
            vals = batch_measures(state.window(), ["pix", "piy", "pic"])
            for name, v in vals.items():
                v = float(v)
                worst = min(worst, v)
                if v < CKW_TOL:
                    violations += 1
                    report.add("CKW", f"sample {k} t={state.t} {name}", f">= {CKW_TOL:g}", _fmt(v), False)
    report.add("CKW", f"{samples} random walks, t<={t_max}", "0 violations", f"{violations} (min residual {worst:.3e})", violations == 0)

    if averages:
        for coin_name, phi, label in (("M1", math.pi, "pi"), ("M2", math.pi / 2, "pi/2")):
            for t, avg in theta_average_series(["pix", "piy", "pic"], phi, named_coin(coin_name), t_max, n_theta):
                for name, v in avg.items():
                    report.add("CKW-avg", f"{coin_name} phi={label} t={t} <{name}>", ">= 0", _fmt(v), v >= CKW_TOL)
    return report


def oracle_report(t_max: int = 4, samples: int = 20, seed: int = 11) -> Report:
    """Compare the incremental walk with dense operator products, and the
    Schmidt fast path with dense partial-transpose trace norms."""
    rng = np.random.default_rng(seed)
    report = Report("fast path vs dense oracle", meta={"seed": seed, "samples": samples, "t_max": t_max})
    walk_err = 0.0
    neg_err = 0.0
    for _ in range(samples):
        T = int(rng.integers(0, t_max + 1))
        coins = [CoinParams(*rng.uniform(0, 2 * math.pi, 3)) for _ in range(T)]
        ip = InitParams(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        state = evolve(ip, EvolutionSequence(coins), T)
        walk_err = max(walk_err, float(np.abs(state.window() - dense_evolve(ip, coins, T)).max()))
        for i in LABELS:
            neg_err = max(neg_err, abs(negativity_full(state, i) - negativity_full_dense(state, i)))
    report.add("walk", f"{samples} random walks, t<={t_max}", "<= 1e-10", f"{walk_err:.3e}", walk_err <= 1e-10)
    report.add("schmidt", "N_{i|jk} fast vs dense", "<= 1e-8", f"{neg_err:.3e}", neg_err <= 1e-8)
    return report
