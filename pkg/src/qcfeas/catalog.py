"""One documented instance of every built-in family, with its sampling box.

================================  ===============================  =========
instance                          region                           L, delta
================================  ===============================  =========
affine  x1 + 2 x2 - 1             [-5, 5]^2                        sqrt(5), 1
ball    center (1, -1), radius 2  [-4, 4]^2                        1, 1
(x1 - 2) / (x2 + 1)               [-5, 5] x [0, 4]                 7.1, 1
sqrt(|x|) - 1                     [-10, 10]                        1, 1/2
floor example                     [-3, 5]                          1, 1
(x1)^3                            [-2, 2]^2                        12, 1
================================  ===============================  =========

The linear-fractional gradient ``(1/(x2+1), -(x1-2)/(x2+1)^2)`` has norm at
most ``sqrt(50) < 7.1`` on its box; the cube modulus is ``max 3 t^2 = 12``
on ``[-2, 2]``. Both moduli are only valid inside their boxes.
"""

from __future__ import annotations

from typing import NamedTuple

from .core import QcOracle
from .functions import (
    FamilySpec,
    build_oracle,
    make_affine,
    make_ball,
    make_linear_fractional,
    make_paper_floor,
    make_sqrt_abs_shift,
)
from .verify import SampleRegion


class Case(NamedTuple):
    family: str
    oracle: QcOracle
    region: SampleRegion


def builtin_cases(sample_count: int = 10_000, seed: int = 0) -> list:
    cube = FamilySpec(
        "monotone_composition",
        {"inner": FamilySpec("affine", {"a": [1.0, 0.0], "b": 0.0}), "phi": "cube"},
        L=12.0, delta=1.0, label="cube",
    )
    return [
        Case("affine", make_affine([1.0, 2.0], -1.0),
             SampleRegion([-5, -5], [5, 5], sample_count, seed)),
        Case("ball", make_ball([1.0, -1.0], 2.0),
             SampleRegion([-4, -4], [4, 4], sample_count, seed)),
        Case("linear_fractional", make_linear_fractional([1.0, 0.0], -2.0, [0.0, 1.0], 1.0, L=7.1),
             SampleRegion([-5, 0], [5, 4], sample_count, seed)),
        Case("sqrt_abs_shift", make_sqrt_abs_shift(1.0),
             SampleRegion([-10], [10], sample_count, seed)),
        Case("paper_floor", make_paper_floor(),
             SampleRegion([-3], [5], sample_count, seed)),
        Case("monotone_composition", build_oracle(cube, 2),
             SampleRegion([-2, -2], [2, 2], sample_count, seed)),
    ]
