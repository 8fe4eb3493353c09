"""Density matrices over labeled subsystems x, y and coin c."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "LABELS",
    "DensityMatrix",
    "SpectrumResult",
    "amplitude_tensor",
    "pure_density",
    "reduced_density",
    "partial_trace",
    "partial_transpose",
    "trace_norm",
    "hermitian_eigenvalues",
    "schmidt_singulars",
]

LABELS = ("x", "y", "c")
HERMITIAN_TOL = 1e-8
PSD_TOL = -1e-10


def amplitude_tensor(s) -> NDArray[np.complex128]:
    """Amplitude tensor of shape ``(X, Y, 2)`` for a walk state, a canonical
    state or a raw array. Walk states are trimmed to their reachable window."""
    if hasattr(s, "window"):
        return s.window()
    if hasattr(s, "amplitudes"):
        return np.asarray(s.amplitudes, dtype=np.complex128)
    psi = np.asarray(s, dtype=np.complex128)
    if psi.ndim != 3:
        raise ValueError(f"expected a 3-index amplitude tensor (x, y, c), got shape {psi.shape}")
    return psi


def _label_axis(label: str) -> int:
    try:
        return LABELS.index(label)
    except ValueError:
        raise ValueError(f"unknown subsystem label {label!r}; expected one of {LABELS}") from None


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Square matrix acting on the tensor product of ``labels`` with sizes ``dims``."""

    labels: tuple[str, ...]
    dims: tuple[int, ...]
    matrix: NDArray[np.complex128] = field(repr=False)

    def __post_init__(self) -> None:
        labels, dims = tuple(self.labels), tuple(int(d) for d in self.dims)
        if len(labels) != len(dims) or len(set(labels)) != len(labels):
            raise ValueError(f"labels {labels} and dims {dims} do not match")
        n = int(np.prod(dims))
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
        m.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def tensor(self) -> NDArray[np.complex128]:
        return self.matrix.reshape(self.dims + self.dims)

    def hermiticity_residue(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max(initial=0.0))

    def min_eigenvalue(self) -> float:
        return float(hermitian_eigenvalues(self.matrix).eigenvalues[0])


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    eigenvalues: NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.eigenvalues)


def pure_density(s, trim: bool = True) -> DensityMatrix:
    """Projector ``|psi><psi|`` on (x, y, c).

    With ``trim`` the walk state is first restricted to its reachable window.
    """
    psi = amplitude_tensor(s) if trim else np.asarray(getattr(s, "amplitudes", s))
    vec = psi.reshape(-1)
    return DensityMatrix(LABELS, psi.shape, np.outer(vec, vec.conj()))


def reduced_density(s, keep: Iterable[str]) -> DensityMatrix:
    """Reduced density on ``keep`` built straight from amplitudes.

    Avoids materializing the full three-party projector.
    """
    psi = amplitude_tensor(s)
    axes = sorted({_label_axis(k) for k in keep})
    if not axes:
        raise ValueError("keep must name at least one subsystem")
    traced = [a for a in range(3) if a not in axes]
    moved = np.moveaxis(psi, axes + traced, range(3))
    dims = moved.shape[: len(axes)]
    flat = moved.reshape(int(np.prod(dims)), -1)
    return DensityMatrix(tuple(LABELS[a] for a in axes), dims, flat @ flat.conj().T)


def partial_trace(d: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Trace out every subsystem of ``d`` not listed in ``keep``."""
    keep = set(keep)
    if not keep:
        raise ValueError("keep must name at least one subsystem")
    unknown = keep - set(d.labels)
    if unknown:
        raise ValueError(f"labels {sorted(unknown)} not present in {d.labels}")
    n = len(d.labels)
    letters = string.ascii_letters
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for k, label in enumerate(d.labels):
        if label not in keep:
            col[k] = row[k]
    kept = [k for k, label in enumerate(d.labels) if label in keep]
    out = "".join(row[k] for k in kept) + "".join(col[k] for k in kept)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, d.tensor())
    dims = tuple(d.dims[k] for k in kept)
    size = int(np.prod(dims))
    return DensityMatrix(tuple(d.labels[k] for k in kept), dims, reduced.reshape(size, size))


def partial_transpose(d: DensityMatrix, subsystem: str) -> NDArray[np.complex128]:
    """Matrix of ``d`` transposed on the indices of ``subsystem`` only."""
    if subsystem not in d.labels:
        raise ValueError(f"label {subsystem!r} not present in {d.labels}")
    k = d.labels.index(subsystem)
    n = len(d.labels)
    size = d.matrix.shape[0]
    return np.swapaxes(d.tensor(), k, n + k).reshape(size, size)


def _check_hermitian(m: NDArray) -> NDArray[np.complex128]:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    residue = float(np.abs(m - m.conj().T).max(initial=0.0))
    if residue > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (residue {residue:.3e})")
    return m


def hermitian_eigenvalues(m) -> SpectrumResult:
    """Full ascending spectrum of a Hermitian matrix (dense LAPACK solver)."""
    m = _check_hermitian(m)
    sym = (m + m.conj().T) / 2
    return SpectrumResult(np.linalg.eigvalsh(sym))


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    if isinstance(m, DensityMatrix):
        m = m.matrix
    return float(np.abs(hermitian_eigenvalues(m).eigenvalues).sum())


def schmidt_singulars(s, subsystem: str) -> NDArray[np.float64]:
    """Schmidt coefficients of a pure state across ``subsystem`` versus the rest."""
    psi = amplitude_tensor(s)
    moved = np.moveaxis(psi, _label_axis(subsystem), 0)
    return np.linalg.svd(moved.reshape(moved.shape[0], -1), compute_uv=False)
