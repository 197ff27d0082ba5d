"""Cyclic star subgradient projections for quasi-convex feasibility problems.

Find ``x`` with ``f_i(x) <= 0`` for quasi-convex ``f_1, ..., f_m`` by
sweeping through the star subgradient projections of the ``f_i``.

>>> from qcfeas import FeasibilityProblem, make_affine, solve, SolverConfig
>>> p = FeasibilityProblem.of(make_affine([1, 0], 0), make_affine([0, 1], 0))
>>> solve(p, [2, 3], SolverConfig(eps=1e-6)).x.tolist()
[0.0, 0.0]
"""

from .core import (
    FeasibilityProblem,
    QcOracle,
    as_point,
    evaluate,
    is_fixed_point,
    positive_part,
    project,
    residual,
    star_subgradient,
)
from .errors import *  # noqa: F401,F403
from .functions import (
    FamilySpec,
    build_oracle,
    make_affine,
    make_ball,
    make_linear_fractional,
    make_monotone_composition,
    make_paper_floor,
    make_sqrt_abs_shift,
)
from .solver import (
    SolveResult,
    SolverConfig,
    Status,
    SweepRecord,
    compose_operator,
    fejer_check,
    solve,
    sweep,
)
from .verify import (
    SampleRegion,
    ValidationReport,
    check_cutter,
    check_fixed_point_closed,
    check_konnov,
    check_quasiconvex,
    check_sholder,
    check_sqne,
    check_star_inequality,
    dist_to_sublevel,
    estimate_holder,
)

__version__ = "0.1.0"
