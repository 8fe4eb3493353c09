"""Two-dimensional alternate quantum walk with a single-qubit coin.

Amplitudes live on a fixed ``(2*t_max + 1, 2*t_max + 1, 2)`` array indexed
``[x + t_max, y + t_max, c]``, i.e. the tensor order x, y, coin. One time step
applies coin, shift along x, coin, shift along y. Coin state ``0`` moves the
walker to ``j - 1`` and coin state ``1`` to ``j + 1`` on each axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterator, Sequence, Union

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "CoinParams",
    "InitParams",
    "WalkState",
    "EvolutionSequence",
    "HorizonExhausted",
    "build_coin",
    "initial_state",
    "step",
    "evolve",
    "amplitude",
    "trajectory",
    "evolve_basis",
    "superpose",
    "write_state_csv",
]

TWO_PI = 2.0 * math.pi
_UNITARY_TOL = 1e-12


class HorizonExhausted(ValueError):
    """Raised when stepping a state that already reached its allocation horizon."""


def _wrap(angle: float) -> float:
    value = float(angle) % TWO_PI
    # x % 2pi can round up to exactly 2pi for tiny negative x
    return 0.0 if value >= TWO_PI else value


@dataclass(frozen=True)
class CoinParams:
    """Angles (alpha, beta, gamma) of the general single-qubit coin, in radians.

    Values are taken modulo 2*pi and stored in ``[0, 2*pi)``.
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"coin angle {name} must be finite, got {value!r}")
            object.__setattr__(self, name, _wrap(value))

    def matrix(self) -> NDArray[np.complex128]:
        return build_coin(self)


@dataclass(frozen=True)
class InitParams:
    """Initial coin spinor ``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        theta = float(self.theta)
        if not (0.0 <= theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
        if not math.isfinite(self.phi):
            raise ValueError(f"phi must be finite, got {self.phi!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", _wrap(self.phi))

    def spinor(self) -> NDArray[np.complex128]:
        return np.array(
            [math.cos(self.theta / 2), np.exp(1j * self.phi) * math.sin(self.theta / 2)],
            dtype=np.complex128,
        )


@dataclass(frozen=True, eq=False)
class WalkState:
    """Immutable walker state at time step ``t`` on a lattice sized for ``t_max``."""

    t: int
    t_max: int
    amplitudes: NDArray[np.complex128] = field(repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.t <= self.t_max:
            raise ValueError(f"need 0 <= t <= t_max, got t={self.t}, t_max={self.t_max}")
        size = 2 * self.t_max + 1
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amps.shape != (size, size, 2):
            raise ValueError(f"amplitudes must have shape {(size, size, 2)}, got {amps.shape}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def size(self) -> int:
        return 2 * self.t_max + 1

    def window(self) -> NDArray[np.complex128]:
        """Amplitudes restricted to the reachable sites ``|x|, |y| <= t``."""
        lo, hi = self.t_max - self.t, self.t_max + self.t + 1
        return self.amplitudes[lo:hi, lo:hi, :]

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def amplitude(self, x: int, y: int, c: int) -> complex:
        return amplitude(self, x, y, c)

    def nonzero(self, atol: float = 0.0) -> list[tuple[int, int, int, complex]]:
        """``(x, y, c, amplitude)`` for entries with modulus above ``atol``, sorted."""
        idx = np.argwhere(np.abs(self.amplitudes) > atol)
        return [
            (int(i) - self.t_max, int(j) - self.t_max, int(c), complex(self.amplitudes[i, j, c]))
            for i, j, c in idx
        ]


@dataclass(frozen=True)
class EvolutionSequence:
    """One coin per time step; entry ``k`` drives the step from ``t=k`` to ``t=k+1``."""

    coins: tuple[CoinParams, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coins", tuple(self.coins))

    @classmethod
    def constant(cls, coin: CoinParams, length: int) -> "EvolutionSequence":
        return cls((coin,) * length)

    def __len__(self) -> int:
        return len(self.coins)

    def __getitem__(self, k: int) -> CoinParams:
        return self.coins[k]


CoinSchedule = Union[CoinParams, EvolutionSequence, Sequence[CoinParams]]


def _schedule(seq: CoinSchedule, steps: int) -> Sequence[CoinParams]:
    if isinstance(seq, CoinParams):
        return (seq,) * steps
    coins = seq.coins if isinstance(seq, EvolutionSequence) else tuple(seq)
    if len(coins) < steps:
        raise ValueError(f"evolution sequence has {len(coins)} coins, {steps} steps requested")
    return coins


def build_coin(p: CoinParams) -> NDArray[np.complex128]:
    """Return the 2x2 unitary coin matrix for ``p``.

    Examples
    --------
    >>> np.allclose(build_coin(CoinParams(np.pi / 4, 0, 0)), [[1, 1], [1, -1]] / np.sqrt(2))
    True
    """
    ca, sa = math.cos(p.alpha), math.sin(p.alpha)
    eb, eg = np.exp(1j * p.beta), np.exp(1j * p.gamma)
    coin = np.array([[ca, eb * sa], [eg * sa, -eb * eg * ca]], dtype=np.complex128)
    err = np.abs(coin.conj().T @ coin - np.eye(2)).max()
    if err > _UNITARY_TOL:
        raise ArithmeticError(f"coin for {p} deviates from unitarity by {err:.3e}")
    return coin


def initial_state(ip: InitParams, t_max: int) -> WalkState:
    """Walker localized at the origin with coin spinor given by ``ip``."""
    if t_max < 0:
        raise ValueError(f"t_max must be non-negative, got {t_max}")
    size = 2 * t_max + 1
    amps = np.zeros((size, size, 2), dtype=np.complex128)
    amps[t_max, t_max, :] = ip.spinor()
    return WalkState(0, t_max, amps)


def _coin_shift(psi: NDArray[np.complex128], coin: NDArray[np.complex128], axis: int) -> NDArray[np.complex128]:
    # psi has shape (..., X, Y, 2); axis is -3 (x) or -2 (y)
    tossed = psi @ coin.T
    out = np.zeros_like(tossed)
    down = [slice(None)] * psi.ndim
    up = [slice(None)] * psi.ndim
    down[-1] = up[-1] = 0
    down[axis], up[axis] = slice(None, -1), slice(1, None)
    out[tuple(down)] = tossed[tuple(up)]
    down[-1] = up[-1] = 1
    out[tuple(up)] = tossed[tuple(down)]
    return out


def _advance(psi: NDArray[np.complex128], coin: NDArray[np.complex128]) -> NDArray[np.complex128]:
    return _coin_shift(_coin_shift(psi, coin, -3), coin, -2)


def step(s: WalkState, p: CoinParams) -> WalkState:
    """Advance one time step with coin ``p`` (coin, x-shift, coin, y-shift)."""
    if s.t >= s.t_max:
        raise HorizonExhausted(f"state at t={s.t} already reached t_max={s.t_max}")
    return WalkState(s.t + 1, s.t_max, _advance(s.amplitudes, build_coin(p)))


def evolve(ip: InitParams, seq: CoinSchedule, T: int) -> WalkState:
    """Evolve the initial state ``ip`` for ``T`` steps on a lattice with ``t_max = T``."""
    if T < 0:
        raise ValueError(f"T must be non-negative, got {T}")
    coins = _schedule(seq, T)
    state = initial_state(ip, T)
    for k in range(T):
        state = step(state, coins[k])
    return state


def trajectory(ip: InitParams, seq: CoinSchedule, T: int) -> Iterator[WalkState]:
    """Yield the states at ``t = 0, 1, ..., T``, evolving incrementally."""
    if T < 0:
        raise ValueError(f"T must be non-negative, got {T}")
    coins = _schedule(seq, T)
    state = initial_state(ip, T)
    yield state
    for k in range(T):
        state = step(state, coins[k])
        yield state


def evolve_basis(seq: CoinSchedule, T: int) -> tuple[WalkState, WalkState]:
    """Evolve the two coin basis states ``|0,0,0_c>`` and ``|0,0,1_c>``.

    Any initial spinor evolves to the matching superposition of the pair
    (see :func:`superpose`), so a theta/phi scan needs only this one evolution.
    """
    if T < 0:
        raise ValueError(f"T must be non-negative, got {T}")
    coins = _schedule(seq, T)
    size = 2 * T + 1
    psi = np.zeros((2, size, size, 2), dtype=np.complex128)
    psi[0, T, T, 0] = 1.0
    psi[1, T, T, 1] = 1.0
    for k in range(T):
        psi = _advance(psi, build_coin(coins[k]))
    return WalkState(T, T, psi[0]), WalkState(T, T, psi[1])


def basis_trajectory(seq: CoinSchedule, T: int) -> Iterator[NDArray[np.complex128]]:
    """Yield the stacked basis windows, shape ``(2, 2t+1, 2t+1, 2)``, for t = 0..T."""
    if T < 0:
        raise ValueError(f"T must be non-negative, got {T}")
    coins = _schedule(seq, T)
    size = 2 * T + 1
    psi = np.zeros((2, size, size, 2), dtype=np.complex128)
    psi[0, T, T, 0] = 1.0
    psi[1, T, T, 1] = 1.0
    for t in range(T + 1):
        lo, hi = T - t, T + t + 1
        yield psi[:, lo:hi, lo:hi, :]
        if t < T:
            psi = _advance(psi, build_coin(coins[t]))


def superpose(basis: tuple[WalkState, WalkState], ip: InitParams) -> WalkState:
    """Combine evolved basis states with the spinor of ``ip``."""
    a, b = ip.spinor()
    s0, s1 = basis
    return WalkState(s0.t, s0.t_max, a * s0.amplitudes + b * s1.amplitudes)


def amplitude(s: WalkState, x: int, y: int, c: int) -> complex:
    """Stored amplitude at site ``(x, y)`` with coin ``c``."""
    if abs(x) > s.t_max or abs(y) > s.t_max:
        raise IndexError(f"site ({x}, {y}) outside lattice of half-width {s.t_max}")
    if c not in (0, 1):
        raise IndexError(f"coin index must be 0 or 1, got {c}")
    return complex(s.amplitudes[x + s.t_max, y + s.t_max, c])


def write_state_csv(s: WalkState, fh: IO[str], atol: float = 1e-15) -> int:
    """Write ``x,y,c,re,im`` rows for amplitudes above ``atol``; returns the row count."""
    fh.write("x,y,c,re,im\n")
    rows = s.nonzero(atol)
    for x, y, c, a in rows:
        fh.write(f"{x},{y},{c},{a.real:.17g},{a.imag:.17g}\n")
    return len(rows)
