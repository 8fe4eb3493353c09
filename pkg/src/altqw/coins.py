"""Named coins used throughout the reproduction targets."""

from __future__ import annotations

from fractions import Fraction as F

from .angles import pi_fraction
from .walk import CoinParams

__all__ = ["NAMED_COINS", "named_coin"]


def _c(a: F, b: F, g: F) -> CoinParams:
    return CoinParams(pi_fraction(a), pi_fraction(b), pi_fraction(g))


# angles as fractions of pi
NAMED_COINS: dict[str, CoinParams] = {
    "H": _c(F(1, 4), F(0), F(0)),
    "M1": _c(F(5, 16), F(1, 2), F(1, 2)),
    "M2": _c(F(5, 16), F(1), F(1, 4)),
    "M3": _c(F(5, 16), F(6, 16), F(1, 2)),
    "M4": _c(F(11, 16), F(1), F(1, 8)),
    "G1": _c(F(19, 16), F(1, 2), F(1, 2)),
    "G2": _c(F(19, 16), F(1), F(1, 16)),
    "G3": _c(F(19, 16), F(11, 8), F(1, 2)),
    "G4": _c(F(5, 16), F(1), F(1, 8)),
}


def named_coin(name: str) -> CoinParams:
    try:
        return NAMED_COINS[name.upper() if name.lower() != "hadamard" else "H"]
    except KeyError:
        raise KeyError(f"unknown coin {name!r}; known: {', '.join(NAMED_COINS)}") from None
