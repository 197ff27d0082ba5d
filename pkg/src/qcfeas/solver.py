"""
Cyclic star subgradient projection method.

One sweep applies the star subgradient projections of ``f_1, ..., f_m`` in
order::

    y^0 = x_k,   y^i = P_{f_i}(y^{i-1}),   x_{k+1} = y^m

so the iteration is ``x_{k+1} = T(x_k)`` with ``T = P_{f_m} o ... o P_{f_1}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import FeasibilityProblem, _project, as_point, residual
from .errors import EmptyTrace, QcError

__all__ = [
    "Status",
    "SolverConfig",
    "SweepRecord",
    "SolveResult",
    "sweep",
    "solve",
    "compose_operator",
    "fejer_check",
    "fejer_distances",
]


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_SWEEPS_REACHED = "MaxSweepsReached"
    ORACLE_ERROR = "OracleError"


@dataclass(frozen=True)
class SolverConfig:
    """Stopping rules and recording options.

    The method itself never stops; a run ends once the residual
    ``max_i f_i(x)_+`` is at most ``eps`` or after ``max_sweeps`` sweeps.
    """

    eps: float = 1e-8
    max_sweeps: int = 10_000
    record_inner: bool = True
    fejer_reference: Optional[np.ndarray] = None

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError(f"eps must be >= 0, got {self.eps}")
        if int(self.max_sweeps) != self.max_sweeps or self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be a positive integer, got {self.max_sweeps}")
        if self.fejer_reference is not None:
            object.__setattr__(self, "fejer_reference", as_point(self.fejer_reference))


@dataclass(frozen=True)
class SweepRecord:
    """One pass over all constraints.

    ``inner`` holds ``y^0 .. y^m`` (``None`` when inner points were not
    recorded), ``values[i]`` is ``f_{i+1}(y^i)``, the value consulted by the
    i-th projection.
    """

    sweep_index: int
    entry: np.ndarray
    exit: np.ndarray
    inner: Optional[tuple]
    values: Optional[tuple]
    residual: float
    dist_to_reference: Optional[float] = None


@dataclass
class SolveResult:
    status: Status
    x: np.ndarray
    residual: float
    sweeps: int
    trace: list = field(default_factory=list)
    error: Optional[BaseException] = None

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def _dist(x, z) -> Optional[float]:
    return None if z is None else float(np.linalg.norm(x - z))


def sweep(p: FeasibilityProblem, x, sweep_index: int = 1,
          reference=None, record_inner: bool = True) -> SweepRecord:
    """Apply ``P_{f_1}, ..., P_{f_m}`` once, starting from ``x``.

    Exceptions raised by an oracle carry the 1-based index of the failing
    function in their ``index`` attribute.
    """
    y = as_point(x, p.dimension)
    ys, vals = [y], []
    for i, f in enumerate(p.functions, start=1):
        try:
            y, v = _project(f, y)
        except QcError as exc:
            exc.index = i
            raise
        ys.append(y)
        vals.append(v)
    r = residual(p, y)
    if reference is not None:
        reference = as_point(reference, p.dimension)
    return SweepRecord(
        sweep_index=sweep_index,
        entry=ys[0],
        exit=y,
        inner=tuple(ys) if record_inner else None,
        values=tuple(vals) if record_inner else None,
        residual=r,
        dist_to_reference=_dist(y, reference),
    )


def compose_operator(p: FeasibilityProblem) -> Callable[[np.ndarray], np.ndarray]:
    """Return ``T = P_{f_m} o ... o P_{f_1}`` as a function of a point."""

    def T(x):
        y = as_point(x, p.dimension)
        for f in p.functions:
            y, _ = _project(f, y)
        return y

    return T


def solve(p: FeasibilityProblem, x0, cfg: SolverConfig = SolverConfig()) -> SolveResult:
    """Run cyclic sweeps from ``x0`` until the residual drops to ``cfg.eps``.

    A starting point that already meets the threshold is returned after zero
    sweeps. Oracle failures end the run with ``Status.ORACLE_ERROR``; the
    sweeps completed before the failure stay in the trace.
    """
    x = as_point(x0, p.dimension)
    trace: list[SweepRecord] = []
    try:
        r = residual(p, x)
    except QcError as exc:
        return SolveResult(Status.ORACLE_ERROR, x, float("nan"), 0, trace, exc)
    if r <= cfg.eps:
        return SolveResult(Status.CONVERGED, x, r, 0, trace)

    for k in range(1, cfg.max_sweeps + 1):
        try:
            rec = sweep(p, x, k, cfg.fejer_reference, cfg.record_inner)
        except QcError as exc:
            return SolveResult(Status.ORACLE_ERROR, x, r, k - 1, trace, exc)
        trace.append(rec)
        x, r = rec.exit, rec.residual
        if r <= cfg.eps:
            return SolveResult(Status.CONVERGED, x, r, k, trace)
    return SolveResult(Status.MAX_SWEEPS_REACHED, x, r, cfg.max_sweeps, trace)


def fejer_distances(trace, z) -> np.ndarray:
    """``||x_k - z||`` for every sweep entry point plus the final exit."""
    if not trace:
        raise EmptyTrace("trace has no sweeps")
    z = as_point(z)
    pts = [rec.entry for rec in trace] + [trace[-1].exit]
    return np.array([np.linalg.norm(x - z) for x in pts])


def fejer_check(trace, z, tol: float = 0.0) -> bool:
    """True iff distances to ``z`` never grow by more than ``tol``.

    ``z`` is trusted to be feasible; check it with :func:`residual` first.
    """
    d = fejer_distances(trace, z)
    return bool(np.all(d[1:] <= d[:-1] + tol))

