"""
Points, quasi-convex function oracles and the star subgradient projection.

A point is a read-only one-dimensional ``float64`` array with finite
entries. An oracle bundles a function ``f``, a selector returning one
nonzero element of its star subdifferential at infeasible points, and the
Hölder data ``(L, delta)`` with

    |f(x) - f(q)| <= L * ||x - q|| ** delta     for every q with f(q) <= 0.

The projection moves an infeasible point a distance ``(f(x)/L)**(1/delta)``
along the normalized negative star subgradient and leaves feasible points
where they are.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainViolation,
    InvalidPoint,
    NonFiniteStep,
    NonFiniteValue,
    ZeroSubgradient,
)

__all__ = [
    "as_point",
    "QcOracle",
    "FeasibilityProblem",
    "positive_part",
    "evaluate",
    "star_subgradient",
    "project",
    "residual",
    "is_fixed_point",
]


def as_point(x: Any, dimension: Optional[int] = None) -> np.ndarray:
    """Return ``x`` as an immutable, finite, 1-D float array.

    Scalars become 1-D points of length one. A copy is always made so the
    caller's buffer can never alias an iterate.
    """
    arr = np.array(x, dtype=np.float64, copy=True)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidPoint(f"a point must be a non-empty vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidPoint(f"point has non-finite coordinates: {arr}")
    if dimension is not None and arr.size != dimension:
        raise DimensionMismatch(f"expected dimension {dimension}, got {arr.size}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class QcOracle:
    """A quasi-convex function together with a star subgradient selector.

    Parameters
    ----------
    func : callable
        ``func(x) -> float`` for a point ``x``.
    star_subgrad : callable
        ``star_subgrad(x) -> array`` returning a nonzero star subgradient
        whenever ``func(x) > 0``. Never consulted at feasible points.
    L : float
        Hölder modulus, ``L > 0``.
    delta : float
        Hölder order, ``delta > 0``.
    dimension : int, optional
        Dimension of the points accepted; ``None`` means unchecked.
    domain_guard : callable, optional
        Predicate that is true on the open set where ``func`` is defined.
    label : str
        Name used in traces and reports.
    spec : object, optional
        The family description this oracle was built from, if any. Used
        for serialization only.
    """

    func: Callable[[np.ndarray], float]
    star_subgrad: Callable[[np.ndarray], Any]
    L: float
    delta: float
    dimension: Optional[int] = None
    domain_guard: Optional[Callable[[np.ndarray], bool]] = None
    label: str = "f"
    spec: Any = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        for name in ("L", "delta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and positive, got {v}")
        if self.dimension is not None and self.dimension < 1:
            raise ValueError("dimension must be >= 1")

    def with_holder(self, L: Optional[float] = None, delta: Optional[float] = None) -> "QcOracle":
        """Copy with the Hölder data replaced (the family spec follows along)."""
        L = self.L if L is None else float(L)
        delta = self.delta if delta is None else float(delta)
        spec = self.spec
        if spec is not None and hasattr(spec, "with_holder"):
            spec = spec.with_holder(L, delta)
        return dataclasses.replace(self, L=L, delta=delta, spec=spec)

    def with_label(self, label: str) -> "QcOracle":
        spec = self.spec
        if spec is not None and hasattr(spec, "with_label"):
            spec = spec.with_label(label)
        return dataclasses.replace(self, label=label, spec=spec)


@dataclass(frozen=True)
class FeasibilityProblem:
    """Find a point where every ``functions[i]`` is ``<= 0``."""

    dimension: int
    functions: tuple

    def __post_init__(self):
        fs = tuple(self.functions)
        object.__setattr__(self, "functions", fs)
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if not fs:
            raise ValueError("a feasibility problem needs at least one function")
        for i, f in enumerate(fs, start=1):
            if not isinstance(f, QcOracle):
                raise TypeError(f"function {i} is not a QcOracle")
            if f.dimension is not None and f.dimension != self.dimension:
                raise DimensionMismatch(
                    f"function {i} ({f.label}) has dimension {f.dimension}, "
                    f"problem has {self.dimension}"
                )

    @classmethod
    def of(cls, *functions: QcOracle) -> "FeasibilityProblem":
        """Build a problem, taking the dimension from the oracles."""
        dims = {f.dimension for f in functions if f.dimension is not None}
        if len(dims) != 1:
            raise DimensionMismatch(f"cannot infer a single dimension from {sorted(dims)}")
        return cls(dims.pop(), functions)

    @property
    def m(self) -> int:
        return len(self.functions)


def positive_part(v: float) -> float:
    return max(float(v), 0.0)


def _checked(f: QcOracle, x) -> np.ndarray:
    x = as_point(x, f.dimension)
    if f.domain_guard is not None and not f.domain_guard(x):
        raise DomainViolation(f"{f.label}: point {x.tolist()} is outside the domain")
    return x


def evaluate(f: QcOracle, x) -> float:
    """Evaluate ``f`` at ``x`` after dimension and domain checks."""
    x = _checked(f, x)
    v = float(f.func(x))
    if not math.isfinite(v):
        raise NonFiniteValue(f"{f.label}: non-finite value {v} at {x.tolist()}")
    return v


def star_subgradient(f: QcOracle, x) -> np.ndarray:
    """Return the oracle's star subgradient at an infeasible ``x``.

    Raises ``ZeroSubgradient`` if the selector hands back the zero vector,
    which at an infeasible point means the oracle is broken (zero is a star
    subgradient only at minimizers).
    """
    x = _checked(f, x)
    g = np.asarray(f.star_subgrad(x), dtype=np.float64).reshape(-1)
    if g.shape != x.shape:
        raise DimensionMismatch(
            f"{f.label}: subgradient has shape {g.shape}, point has {x.shape}"
        )
    if not np.all(np.isfinite(g)):
        raise NonFiniteValue(f"{f.label}: non-finite subgradient {g} at {x.tolist()}")
    if not np.any(g):
        raise ZeroSubgradient(f"{f.label}: zero star subgradient at {x.tolist()}")
    return g


def _project(f: QcOracle, x: np.ndarray) -> tuple[np.ndarray, float]:
    v = evaluate(f, x)
    # exact comparison: the identity branch must hold bit-for-bit
    if not v > 0.0:
        return x, v
    c = star_subgradient(f, x)
    try:
        ratio = v / f.L
        step = ratio ** (1.0 / f.delta)
    except OverflowError:
        raise NonFiniteStep(f"{f.label}: step overflows at {x.tolist()}") from None
    if not math.isfinite(step):
        raise NonFiniteStep(f"{f.label}: step {step} at {x.tolist()}")
    y = x - step * (c / np.linalg.norm(c))
    if not np.all(np.isfinite(y)):
        raise NonFiniteStep(f"{f.label}: projected point is not finite")
    y.flags.writeable = False
    return y, v


def project(f: QcOracle, x) -> np.ndarray:
    """Star subgradient projection of ``x`` relative to ``f``.

    Returns ``x`` itself when ``f(x) <= 0``; otherwise
    ``x - (f(x)/L)**(1/delta) * c/||c||`` with ``c`` the selected star
    subgradient.
    """
    return _project(f, as_point(x))[0]


def residual(p: FeasibilityProblem, x) -> float:
    """``max_i max(f_i(x), 0)``; zero exactly on the feasible set."""
    x = as_point(x, p.dimension)
    return max(positive_part(evaluate(f, x)) for f in p.functions)


def is_fixed_point(f: QcOracle, x, tol: float = 0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    x = as_point(x)
    return float(np.linalg.norm(project(f, x) - x)) <= tol

