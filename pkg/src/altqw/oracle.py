"""Dense-operator reference evolution.

Builds the full shift and coin matrices on a ``(2t+1)^2 * 2`` dimensional
space with ``np.kron`` and multiplies them out. Deliberately naive: it shares
no code with :mod:`altqw.walk` beyond parameter types and is only meant for
cross-checking small lattices.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

from .walk import CoinParams, InitParams

__all__ = ["dense_coin", "dense_step_operator", "dense_evolve"]


def dense_coin(p: CoinParams) -> NDArray[np.complex128]:
    a, b, g = p.alpha, p.beta, p.gamma
    return np.array(
        [
            [math.cos(a), complex(math.cos(b), math.sin(b)) * math.sin(a)],
            [complex(math.cos(g), math.sin(g)) * math.sin(a), -complex(math.cos(b + g), math.sin(b + g)) * math.cos(a)],
        ]
    )


def dense_step_operator(p: CoinParams, size: int) -> NDArray[np.complex128]:
    """``S_y (1 (x) C) S_x (1 (x) C)`` on a ``size``-site open lattice per axis."""
    eye = np.eye(size)
    up = np.eye(size, k=-1)  # |j+1><j|
    down = np.eye(size, k=1)  # |j-1><j|
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    shift_x = np.kron(np.kron(down, eye), p0) + np.kron(np.kron(up, eye), p1)
    shift_y = np.kron(np.kron(eye, down), p0) + np.kron(np.kron(eye, up), p1)
    coin = np.kron(np.eye(size * size), dense_coin(p))
    return shift_y @ coin @ shift_x @ coin


def dense_evolve(ip: InitParams, coins: list[CoinParams], T: int) -> NDArray[np.complex128]:
    """Amplitude tensor ``(2T+1, 2T+1, 2)`` after ``T`` steps, by matrix products."""
    size = 2 * T + 1
    origin = np.zeros(size)
    origin[T] = 1.0
    spinor = np.array([math.cos(ip.theta / 2), complex(math.cos(ip.phi), math.sin(ip.phi)) * math.sin(ip.theta / 2)])
    vec = np.kron(np.kron(origin, origin), spinor)
    for k in range(T):
        vec = dense_step_operator(coins[k], size) @ vec
    return vec.reshape(size, size, 2)
