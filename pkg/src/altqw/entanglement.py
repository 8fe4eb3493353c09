"""Negativities, residual negativities and the pi-tangle.

Two negativity conventions are kept apart on purpose:

* ``negativity_half`` -- ``sum(|l| - l) / 2`` over the spectrum of the
  partially transposed ``rho_xy``; used for the x-y position entanglement.
* the *full* convention ``||rho^T_i|| - 1`` -- used for every negativity that
  enters the pi-tangle (``negativity_full``, ``pairwise_negativity``).

For a trace-one state the full value is exactly twice the half value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Mapping

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import trapezoid

from .density import (
    LABELS,
    amplitude_tensor,
    hermitian_eigenvalues,
    partial_transpose,
    pure_density,
    reduced_density,
    schmidt_singulars,
    trace_norm,
)
from .walk import CoinSchedule, InitParams, basis_trajectory

__all__ = [
    "NegativitySet",
    "PiTangleResult",
    "negativity_half",
    "negativity_full",
    "negativity_full_dense",
    "pairwise_negativity",
    "negativity_set",
    "residual_pi",
    "pi_tangle",
    "batch_measures",
    "theta_grid",
    "theta_average",
    "theta_average_series",
    "phi_averages",
    "point_series",
    "theta_samples",
    "MEASURES",
    "write_measure_csv",
]

DEFAULT_N_THETA = 33
PAIR_TOL = 1e-8
TRACE_TOL = 1e-10
# bytes allowed for stacked reduced densities in one batch
_BATCH_BYTES = 256 * 2**20

MEASURES = ("N", "pi", "pix", "piy", "pic")
_ALIASES = {
    "n": "N",
    "nav": "N",
    "negativity_half": "N",
    "pi": "pi",
    "piav": "pi",
    "pi_tangle": "pi",
    "pix": "pix",
    "piy": "piy",
    "pic": "pic",
}


def canonical_measure(name: str) -> str:
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown measure {name!r}; expected one of {sorted(set(_ALIASES))}") from None


def _others(i: str) -> tuple[str, str]:
    if i not in LABELS:
        raise ValueError(f"unknown subsystem label {i!r}")
    j, k = (l for l in LABELS if l != i)
    return j, k


@dataclass(frozen=True)
class NegativitySet:
    """Full-convention negativities: ``N_{i|jk}`` and ``N_{ij}`` (transpose on i)."""

    one_vs_rest: Mapping[str, float]
    pairwise: Mapping[tuple[str, str], float]

    def __getitem__(self, key):
        if isinstance(key, str):
            return self.one_vs_rest[key]
        return self.pairwise[tuple(key)]

    def min_value(self) -> float:
        return min(min(self.one_vs_rest.values()), min(self.pairwise.values()))


@dataclass(frozen=True)
class PiTangleResult:
    pi_x: float
    pi_y: float
    pi_c: float
    pi_xyc: float
    negativities: NegativitySet

    def residual(self, i: str) -> float:
        return {"x": self.pi_x, "y": self.pi_y, "c": self.pi_c}[i]

    def clipped(self) -> tuple[float, float, float]:
        """Residuals with round-off negatives clipped at zero, for display only."""
        return max(self.pi_x, 0.0), max(self.pi_y, 0.0), max(self.pi_c, 0.0)


def negativity_half(s) -> float:
    """x-y negativity ``sum(|l| - l) / 2`` of ``rho_xy = Tr_c |psi><psi|``."""
    rho = reduced_density(s, ("x", "y"))
    ev = hermitian_eigenvalues(partial_transpose(rho, "x")).eigenvalues
    half = float(np.sum(np.abs(ev) - ev) / 2)
    total = float(ev.sum())
    if abs(total - 1.0) > TRACE_TOL:
        raise ArithmeticError(f"partial transpose has trace {total!r}, state not normalized")
    # (sum|l| - 1) / 2 must agree with the half convention
    full = float(np.abs(ev).sum()) - 1.0
    if abs(full / 2 - half) > 1e-9 * max(1.0, half):
        raise ArithmeticError(f"negativity conventions disagree: {full / 2!r} vs {half!r}")
    return half


def negativity_full(s, i: str) -> float:
    """One-vs-rest negativity ``N_{i|jk}`` via Schmidt coefficients: ``(sum s)^2 - 1``."""
    sv = schmidt_singulars(s, i)
    return float(sv.sum() ** 2 - 1.0)


def negativity_full_dense(s, i: str) -> float:
    """``N_{i|jk}`` by explicit partial transpose of the full projector (slow)."""
    return trace_norm(partial_transpose(pure_density(s), i)) - 1.0


def pairwise_negativity(s, i: str, j: str) -> float:
    """``N_{ij} = ||(Tr_k rho)^{T_i}|| - 1``."""
    if i == j:
        raise ValueError(f"pairwise negativity needs two distinct labels, got {i!r} twice")
    if i not in LABELS or j not in LABELS:
        raise ValueError(f"unknown labels {i!r}, {j!r}")
    rho = reduced_density(s, (i, j))
    return trace_norm(partial_transpose(rho, i)) - 1.0


def negativity_set(s) -> NegativitySet:
    one = {i: negativity_full(s, i) for i in LABELS}
    pair = {(i, j): pairwise_negativity(s, i, j) for i in LABELS for j in LABELS if i != j}
    for i, j in pair:
        if abs(pair[i, j] - pair[j, i]) > PAIR_TOL:
            raise ArithmeticError(f"N_{i}{j}={pair[i, j]!r} differs from N_{j}{i}={pair[j, i]!r}")
    return NegativitySet(one, pair)


def _residual(ns: NegativitySet, i: str) -> float:
    j, k = _others(i)
    return ns[i] ** 2 - ns[i, j] ** 2 - ns[i, k] ** 2


def residual_pi(s, i: str) -> float:
    """``pi_i = N_{i|jk}^2 - N_{ij}^2 - N_{ik}^2`` (not clipped)."""
    j, k = _others(i)
    return negativity_full(s, i) ** 2 - pairwise_negativity(s, i, j) ** 2 - pairwise_negativity(s, i, k) ** 2


def pi_tangle(s) -> PiTangleResult:
    ns = negativity_set(s)
    px, py, pc = (_residual(ns, i) for i in LABELS)
    return PiTangleResult(px, py, pc, (px + py + pc) / 3, ns)


# -- batched fast path over stacks of amplitude tensors (..., X, Y, 2) --------


def _abs_spectrum_sum(m: NDArray[np.complex128]) -> NDArray[np.float64]:
    # PT of an exactly Hermitian outer-product sum is exactly Hermitian
    return np.abs(np.linalg.eigvalsh(m)).sum(axis=-1)


def _pair_trace_norm(psi: NDArray[np.complex128], i: int, j: int) -> NDArray[np.float64]:
    """``||(Tr_k rho)^{T_i}||`` for each state in the stack; i < j."""
    nb = psi.ndim - 3
    k = 3 - i - j
    moved = np.moveaxis(psi, (nb + i, nb + j, nb + k), (nb, nb + 1, nb + 2))
    a, b, r = moved.shape[nb:]
    flat = moved.reshape(*moved.shape[:nb], a * b, r)
    rho = flat @ np.swapaxes(flat, -1, -2).conj()
    rho = rho.reshape(*rho.shape[:nb], a, b, a, b)
    pt = np.swapaxes(rho, nb, nb + 2).reshape(*rho.shape[:nb], a * b, a * b)
    return _abs_spectrum_sum(pt)


def _one_vs_rest(psi: NDArray[np.complex128], i: int) -> NDArray[np.float64]:
    nb = psi.ndim - 3
    moved = np.moveaxis(psi, nb + i, nb)
    sv = np.linalg.svd(moved.reshape(*moved.shape[: nb + 1], -1), compute_uv=False)
    return sv.sum(axis=-1) ** 2 - 1.0


def batch_measures(psi: NDArray[np.complex128], measures: Iterable[str]) -> dict[str, NDArray[np.float64]]:
    """Evaluate measures on a stack of pure states of shape ``(..., X, Y, 2)``.

    Pairwise negativities with the transpose on the second label are taken
    from the first-label ones: ``rho^{T_j}`` is the full transpose of
    ``rho^{T_i}`` and has the same spectrum.
    """
    psi = np.asarray(psi, dtype=np.complex128)
    wanted = {canonical_measure(m) for m in measures}
    out: dict[str, NDArray[np.float64]] = {}
    pair: dict[tuple[int, int], NDArray[np.float64]] = {}

    def npair(i: int, j: int) -> NDArray[np.float64]:
        key = (min(i, j), max(i, j))
        if key not in pair:
            pair[key] = _pair_trace_norm(psi, *key) - 1.0
        return pair[key]

    if "N" in wanted:
        out["N"] = npair(0, 1) / 2
    if wanted & {"pi", "pix", "piy", "pic"}:
        res = []
        for i in range(3):
            j, k = (l for l in range(3) if l != i)
            res.append(_one_vs_rest(psi, i) ** 2 - npair(i, j) ** 2 - npair(i, k) ** 2)
        for name, r in zip(("pix", "piy", "pic"), res):
            if name in wanted:
                out[name] = r
        if "pi" in wanted:
            out["pi"] = (res[0] + res[1] + res[2]) / 3
    return out


def theta_grid(n_theta: int = DEFAULT_N_THETA) -> NDArray[np.float64]:
    """``n_theta`` equally spaced samples of [0, pi], both endpoints included."""
    if n_theta < 2:
        raise ValueError(f"n_theta must be at least 2, got {n_theta}")
    return math.pi * np.arange(n_theta) / (n_theta - 1)


def _superposed(basis: NDArray[np.complex128], thetas: NDArray, phi: float) -> NDArray[np.complex128]:
    """States for initial spinors (theta, phi) from a stacked basis pair."""
    a = np.cos(thetas / 2)
    b = np.exp(1j * phi) * np.sin(thetas / 2)
    return a[:, None, None, None] * basis[0] + b[:, None, None, None] * basis[1]


def _chunk(dim: int) -> int:
    return max(1, _BATCH_BYTES // (48 * dim * dim))


def _theta_values(basis: NDArray[np.complex128], thetas, phi: float, measures) -> dict[str, NDArray]:
    px, py = basis.shape[1:3]
    step = _chunk(px * py)
    parts: dict[str, list] = {}
    for lo in range(0, len(thetas), step):
        vals = batch_measures(_superposed(basis, thetas[lo : lo + step], phi), measures)
        for name, v in vals.items():
            parts.setdefault(name, []).append(v)
    return {name: np.concatenate(v) for name, v in parts.items()}


def _average(values: NDArray, thetas: NDArray) -> float:
    return float(trapezoid(values, thetas) / math.pi)


def phi_averages(
    basis: NDArray[np.complex128],
    phis: NDArray[np.float64],
    measure: str,
    n_theta: int = DEFAULT_N_THETA,
) -> NDArray[np.float64]:
    """Theta averages of one measure for several phases sharing one coin.

    ``basis`` is the stacked pair of evolved basis windows, shape ``(2, X, Y, 2)``.
    """
    name = canonical_measure(measure)
    thetas = theta_grid(n_theta)
    phis = np.asarray(phis, dtype=np.float64)
    a = np.cos(thetas / 2)
    b = np.sin(thetas / 2)
    px, py = basis.shape[1:3]
    per_phi = max(1, _chunk(px * py) // n_theta)
    out = np.empty(len(phis))
    for lo in range(0, len(phis), per_phi):
        ph = phis[lo : lo + per_phi]
        coef1 = np.exp(1j * ph)[:, None] * b[None, :]
        states = (
            a[None, :, None, None, None] * basis[0]
            + coef1[:, :, None, None, None] * basis[1]
        )
        vals = batch_measures(states, [name])[name]
        out[lo : lo + per_phi] = trapezoid(vals, thetas, axis=-1) / math.pi
    return out


def theta_average(
    measure: str,
    phi: float,
    seq: CoinSchedule,
    T: int,
    n_theta: int = DEFAULT_N_THETA,
) -> float:
    """``(1/pi) * integral_0^pi measure d theta`` by the composite trapezoid rule.

    ``measure`` is ``"N"`` (x-y negativity, half convention), ``"pi"`` (the
    pi-tangle) or one residual ``"pix"``, ``"piy"``, ``"pic"``.
    """
    name = canonical_measure(measure)
    thetas = theta_grid(n_theta)
    *_, basis = basis_trajectory(seq, T)
    return _average(_theta_values(basis, thetas, phi, [name])[name], thetas)


def theta_samples(measure: str, phi: float, seq: CoinSchedule, T: int, n_theta: int = DEFAULT_N_THETA):
    """``(thetas, values)`` of a point measure across the theta grid at time ``T``."""
    name = canonical_measure(measure)
    thetas = theta_grid(n_theta)
    *_, basis = basis_trajectory(seq, T)
    return thetas, _theta_values(basis, thetas, phi, [name])[name]


def theta_average_series(
    measures: Iterable[str],
    phi: float,
    seq: CoinSchedule,
    T: int,
    n_theta: int = DEFAULT_N_THETA,
    t_min: int = 1,
) -> Iterator[tuple[int, dict[str, float]]]:
    """Yield ``(t, {measure: average})`` for t = t_min..T from a single evolution."""
    names = [canonical_measure(m) for m in measures]
    thetas = theta_grid(n_theta)
    for t, basis in enumerate(basis_trajectory(seq, T)):
        if t < t_min:
            continue
        vals = _theta_values(basis, thetas, phi, names)
        yield t, {name: _average(vals[name], thetas) for name in names}


def point_series(
    measures: Iterable[str], ip: InitParams, seq: CoinSchedule, T: int, t_min: int = 1
) -> Iterator[tuple[int, dict[str, float]]]:
    """Yield ``(t, {measure: value})`` at fixed (theta, phi) for t = t_min..T."""
    names = [canonical_measure(m) for m in measures]
    thetas = np.array([ip.theta])
    for t, basis in enumerate(basis_trajectory(seq, T)):
        if t < t_min:
            continue
        vals = _theta_values(basis, thetas, ip.phi, names)
        yield t, {name: float(vals[name][0]) for name in names}


def write_measure_csv(rows: Iterable[tuple[int, float | None, float, str, float]], fh: IO[str]) -> None:
    """Rows ``(t, theta, phi, measure, value)``; ``theta`` is None for averages."""
    fh.write("t,theta,phi,measure,value\n")
    for t, theta, phi, measure, value in rows:
        th = "" if theta is None else format(theta, ".17g")
        fh.write(f"{t},{th},{phi:.17g},{measure},{value:.17g}\n")
