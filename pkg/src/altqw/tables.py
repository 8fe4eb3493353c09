"""Tabulated argmax sets for the (phi, coin-parameter) sweeps at t = 2.

Each row fixes two coin angles, varies ``phi`` and the third angle over
``[0, 2*pi]`` in integer units of ``2*pi / n`` (both endpoints included) and
lists every ``(phi, varied)`` index pair where the theta-averaged measure
attains its maximum. Sets are kept verbatim, including the ``phi = 32 - j``
segment of table 2 row 2, which disagrees with the computed maxima.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

__all__ = ["TableRow", "TABLES"]


@dataclass(frozen=True)
class TableRow:
    label: str
    varied: str
    fixed: dict  # angle name -> fraction of pi
    argmax: frozenset  # {(phi index, varied index)}


def _pairs(phis, values) -> set:
    return {(p, v) for p in phis for v in values}


_A32 = (3, 5, 11, 13, 19, 21, 27, 29)
_A128 = (12, 20, 44, 52, 76, 84, 108, 116)


def _table1_beta() -> frozenset:
    s = set()
    for j in range(0, 9):
        s |= {(j, 8 - j), (j, 24 - j)}
    s |= {(8, 32), (24, 32)}
    for j in range(0, 16):
        s |= {(9 + j, 31 - j), (9 + j, 15 - j)}
    for j in range(0, 8):
        s |= {(25 + j, 15 - j), (25 + j, 31 - j)}
    return frozenset(s)


def _table2_beta() -> frozenset:
    s = set()
    for j in range(0, 33):
        s |= {(128 - j, 96 + j), (128 - j, 32 + j)}
    s |= {(96, 0), (32, 0)}
    for j in range(1, 65):
        s |= {(96 - j, j), (96 - j, 64 + j)}
    for j in range(1, 33):
        s |= {(32 - j, 96 + j), (32 - j, 64 + j)}
    return frozenset(s)


TABLES: dict[int, dict] = {
    1: {
        "units": 32,
        "measure": "piav",
        "max_value": 2.0656,
        "rows": [
            TableRow("C(alpha, pi/2, pi/2)", "alpha", {"beta": F(1, 2), "gamma": F(1, 2)},
                     frozenset(_pairs((0, 16, 32), _A32))),
            TableRow("C(5pi/16, beta, pi/2)", "beta", {"alpha": F(5, 16), "gamma": F(1, 2)}, _table1_beta()),
            TableRow("C(5pi/16, pi, gamma)", "gamma", {"alpha": F(5, 16), "beta": F(1)},
                     frozenset(_pairs((8, 24), range(0, 33)))),
            TableRow("C(alpha, pi, pi/8)", "alpha", {"beta": F(1), "gamma": F(1, 8)},
                     frozenset(_pairs((8, 24), _A32))),
        ],
    },
    2: {
        "units": 128,
        "measure": "Nav",
        "max_value": 0.429,
        "rows": [
            TableRow("C(alpha, pi/2, pi/2)", "alpha", {"beta": F(1, 2), "gamma": F(1, 2)},
                     frozenset(_pairs((0, 64, 128), _A128))),
            TableRow("C(19pi/16, beta, pi/2)", "beta", {"alpha": F(19, 16), "gamma": F(1, 2)}, _table2_beta()),
            TableRow("C(19pi/16, pi, gamma)", "gamma", {"alpha": F(19, 16), "beta": F(1)},
                     frozenset(_pairs((32, 96), range(0, 129)))),
            TableRow("C(alpha, pi, pi/8)", "alpha", {"beta": F(1), "gamma": F(1, 8)},
                     frozenset(_pairs((32, 96), _A128))),
        ],
    },
}
