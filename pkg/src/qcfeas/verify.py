"""
Sampling checks for the inequalities behind the projection method.

Each ``check_*`` function draws points from an axis-aligned box, tests one
inequality on every admissible sample and returns a
:class:`ValidationReport`. Universally quantified statements are only
probed at finitely many points, so a pass is evidence rather than proof;
reports carry the number of samples actually tested.

All randomness comes from ``numpy.random.default_rng(region.seed)``, so a
check is a deterministic function of ``(oracle, region, tol)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .core import QcOracle, _project, as_point, evaluate, positive_part, star_subgradient
from .errors import DomainViolation, NoFeasibleSamples, NonConvergentInput, QcError

__all__ = [
    "SampleRegion",
    "ValidationReport",
    "HolderEstimate",
    "check_quasiconvex",
    "check_star_inequality",
    "check_sholder",
    "check_konnov",
    "check_cutter",
    "check_sqne",
    "check_fixed_point_closed",
    "estimate_holder",
    "dist_to_sublevel",
    "STANDARD_CHECKS",
    "run_checks",
]

DEFAULT_TOL = 1e-9
REJECTION_FACTOR = 100


@dataclass(frozen=True)
class SampleRegion:
    """Box ``[lower, upper]`` with a sample budget and a seed."""

    lower: np.ndarray
    upper: np.ndarray
    sample_count: int = 10_000
    seed: int = 0

    def __post_init__(self):
        lo, hi = as_point(self.lower), as_point(self.upper)
        if lo.shape != hi.shape:
            raise ValueError("lower and upper corners differ in dimension")
        if np.any(lo > hi):
            raise ValueError("lower corner exceeds upper corner")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def box(cls, lo: float, hi: float, dimension: int, sample_count: int = 10_000,
            seed: int = 0) -> "SampleRegion":
        """The cube ``[lo, hi]^dimension``."""
        return cls(np.full(dimension, float(lo)), np.full(dimension, float(hi)),
                   sample_count, seed)

    @property
    def dimension(self) -> int:
        return self.lower.size

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def uniform(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, size=(count, self.dimension))

    @property
    def grid_points_per_axis(self) -> int:
        # 2**j + 1 points per axis, so a larger budget always refines the grid
        n, N = self.dimension, self.sample_count
        if N < 2**n:
            return 1
        j = 0
        while (2 ** (j + 1) + 1) ** n <= N:
            j += 1
        return 2**j + 1

    def grid(self) -> np.ndarray:
        k = self.grid_points_per_axis
        if k == 1:
            return self.lower.reshape(1, -1).copy()
        axes = [np.linspace(lo, hi, k) for lo, hi in zip(self.lower, self.upper)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    @property
    def resolution(self) -> float:
        """Diagonal of one cell of :meth:`grid`."""
        k = self.grid_points_per_axis
        span = self.upper - self.lower
        return float(np.linalg.norm(span if k == 1 else span / (k - 1)))


@dataclass
class ValidationReport:
    property: str
    label: str
    samples: int
    violations: int
    max_violation: float
    worst: Optional[dict] = None
    skipped: int = 0
    vacuous: bool = False
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "function": self.label,
            "property": self.property,
            "passed": self.passed,
            "samples": self.samples,
            "violations": self.violations,
            "max_violation": self.max_violation,
            "worst": self.worst,
            "skipped": self.skipped,
            "vacuous": self.vacuous,
            **({"details": self.details} if self.details else {}),
        }


class _Tally:
    """Accumulates violation counts and the worst counterexample."""

    def __init__(self, name: str, f: QcOracle, tol: float):
        self.name, self.label, self.tol = name, f.label, tol
        self.samples = self.violations = self.skipped = 0
        self.max_violation = -math.inf
        self.worst = None

    def record(self, excess: float, force: bool = False, **inputs) -> None:
        """``excess`` is ``lhs - rhs`` of an inequality ``lhs <= rhs``."""
        self.samples += 1
        if force or not excess <= self.tol:
            self.violations += 1
        if self.worst is None or excess > self.max_violation:
            self.max_violation = excess
            self.worst = {k: _plain(v) for k, v in inputs.items()}

    def report(self, vacuous: bool = False, **details) -> ValidationReport:
        mv = self.max_violation if self.samples else 0.0
        return ValidationReport(self.name, self.label, self.samples, self.violations,
                                float(mv), self.worst, self.skipped, vacuous, details)


def _plain(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, np.generic):
        return v.item()
    return v


def _value(f: QcOracle, x) -> Optional[float]:
    try:
        return evaluate(f, x)
    except DomainViolation:
        return None


def _feasible_samples(f: QcOracle, region: SampleRegion, rng, count: int) -> list:
    """Rejection-sample up to ``count`` points with ``f <= 0``.

    Draws at most ``REJECTION_FACTOR * count`` candidates and raises
    ``NoFeasibleSamples`` if none of them is feasible.
    """
    found = []
    for _ in range(REJECTION_FACTOR):
        for q in region.uniform(rng, count):
            v = _value(f, q)
            if v is not None and v <= 0:
                found.append((q, v))
                if len(found) == count:
                    return found
    if not found:
        raise NoFeasibleSamples(
            f"{f.label}: no point with f <= 0 among {REJECTION_FACTOR * count} samples"
        )
    return found


def check_quasiconvex(f: QcOracle, region: SampleRegion, tol: float = DEFAULT_TOL) -> ValidationReport:
    """``f(lam x + (1 - lam) y) <= max(f(x), f(y))`` on random triples."""
    t = _Tally("quasiconvex", f, tol)
    rng = region.rng()
    N = region.sample_count
    X, Y, lam = region.uniform(rng, N), region.uniform(rng, N), rng.uniform(0, 1, N)
    for x, y, s in zip(X, Y, lam):
        z = s * x + (1 - s) * y
        fx, fy, fz = _value(f, x), _value(f, y), _value(f, z)
        if fx is None or fy is None or fz is None:
            t.skipped += 1
            continue
        t.record(fz - max(fx, fy), x=x, y=y, lam=s)
    return t.report()


def check_star_inequality(f: QcOracle, region: SampleRegion, tol: float = DEFAULT_TOL) -> ValidationReport:
    """``<g, y - x> <= 0`` whenever ``f(y) < f(x)`` and ``f(x) > 0``.

    A zero subgradient at an infeasible ``x`` counts as a violation of
    infinite size.
    """
    t = _Tally("star_inequality", f, tol)
    rng = region.rng()
    N = region.sample_count
    for x, y in zip(region.uniform(rng, N), region.uniform(rng, N)):
        fx, fy = _value(f, x), _value(f, y)
        if fx is None or fy is None:
            t.skipped += 1
            continue
        if not (fx > 0 and fy < fx):
            continue
        try:
            g = star_subgradient(f, x)
        except QcError:
            t.record(math.inf, x=x, y=y)
            continue
        t.record(float(g @ (y - x)), x=x, y=y, g=g)
    return t.report()


def check_sholder(f: QcOracle, region: SampleRegion, tol: float = DEFAULT_TOL) -> ValidationReport:
    """``|f(x) - f(q)| <= L ||x - q||**delta`` for feasible ``q``."""
    t = _Tally("sholder", f, tol)
    rng = region.rng()
    try:
        qs = _feasible_samples(f, region, rng, region.sample_count)
    except NoFeasibleSamples:
        return t.report(vacuous=True)
    for (q, fq), x in zip(qs, region.uniform(rng, len(qs))):
        fx = _value(f, x)
        if fx is None:
            t.skipped += 1
            continue
        bound = f.L * float(np.linalg.norm(x - q)) ** f.delta
        t.record(abs(fx - fq) - bound, x=x, q=q)
    return t.report(L=f.L, delta=f.delta)


def check_konnov(f: QcOracle, region: SampleRegion, tol: float = DEFAULT_TOL) -> ValidationReport:
    """``f(x)_+ <= L <c/||c||, x - q>**delta`` for infeasible ``x``, feasible ``q``.

    A non-positive inner product is a violation regardless of ``tol``: the
    bound requires it to be positive.
    """
    t = _Tally("konnov", f, tol)
    rng = region.rng()
    try:
        qs = _feasible_samples(f, region, rng, region.sample_count)
    except NoFeasibleSamples:
        return t.report(vacuous=True)
    strict = any(fq < 0 for _, fq in qs)
    for (q, _), x in zip(qs, region.uniform(rng, len(qs))):
        fx = _value(f, x)
        if fx is None:
            t.skipped += 1
            continue
        if not fx > 0:
            continue
        try:
            c = star_subgradient(f, x)
        except QcError:
            t.record(math.inf, x=x, q=q)
            continue
        s = float((c / np.linalg.norm(c)) @ (x - q))
        if s <= 0:
            t.record(positive_part(fx), force=True, x=x, q=q, inner=s)
            continue
        t.record(positive_part(fx) - f.L * s**f.delta, x=x, q=q)
    return t.report(strict_sublevel_sampled=strict)


def check_cutter(f: QcOracle, region: SampleRegion, tol: float = DEFAULT_TOL) -> ValidationReport:
    """``<P x - x, P x - y> <= 0`` for any ``x`` and feasible ``y``."""
    t = _Tally("cutter", f, tol)
    rng = region.rng()
    try:
        ys = _feasible_samples(f, region, rng, region.sample_count)
    except NoFeasibleSamples:
        return t.report(vacuous=True)
    for (y, _), x in zip(ys, region.uniform(rng, len(ys))):
        try:
            px, _ = _project(f, as_point(x))
        except DomainViolation:
            t.skipped += 1
            continue
        t.record(float((px - x) @ (px - y)), x=x, y=y)
    return t.report()


def check_sqne(f: QcOracle, region: SampleRegion, tol: float = DEFAULT_TOL) -> ValidationReport:
    """``||P x - y||^2 <= ||x - y||^2 - ||P x - x||^2`` for feasible ``y``."""
    t = _Tally("sqne", f, tol)
    rng = region.rng()
    try:
        ys = _feasible_samples(f, region, rng, region.sample_count)
    except NoFeasibleSamples:
        return t.report(vacuous=True)
    for (y, _), x in zip(ys, region.uniform(rng, len(ys))):
        try:
            px, _ = _project(f, as_point(x))
        except DomainViolation:
            t.skipped += 1
            continue
        lhs = float(np.sum((px - y) ** 2))
        rhs = float(np.sum((x - y) ** 2) - np.sum((px - x) ** 2))
        t.record(lhs - rhs, x=x, y=y)
    return t.report()


def check_fixed_point_closed(f: QcOracle, seq: Sequence, tol: float = DEFAULT_TOL,
                             region: Optional[SampleRegion] = None) -> ValidationReport:
    """Check that the limit of ``seq`` is feasible.

    ``seq`` is a finite stretch of a convergent sequence whose projection
    displacements ``||P x_k - x_k||`` tend to zero; its last element stands
    in for the limit. Both hypotheses are checked on the final element and
    ``NonConvergentInput`` is raised if either exceeds ``tol``. With a
    ``region``, the brute-force distance from the limit to the zero
    sublevel set must also be within the region's grid resolution.
    """
    pts = [as_point(x, f.dimension) for x in seq]
    if len(pts) < 2:
        raise NonConvergentInput("need at least two terms")
    gap = float(np.linalg.norm(pts[-1] - pts[-2]))
    if gap > tol:
        raise NonConvergentInput(f"last gap {gap:.3g} exceeds tol {tol:.3g}")
    disp = [float(np.linalg.norm(_project(f, x)[0] - x)) for x in pts]
    if disp[-1] > tol:
        raise NonConvergentInput(f"last displacement {disp[-1]:.3g} exceeds tol {tol:.3g}")

    t = _Tally("fixed_point_closed", f, tol)
    lim = pts[-1]
    t.record(evaluate(f, lim), limit=lim)
    details = {"last_gap": gap, "last_displacement": disp[-1]}
    if region is not None:
        d = dist_to_sublevel(f, lim, region)
        details.update(dist_to_sublevel=d, resolution=region.resolution)
        if d > region.resolution:
            t.violations += 1
            t.worst = {"limit": lim.tolist(), "dist_to_sublevel": d}
    return t.report(**details)


class HolderEstimate(NamedTuple):
    L: float
    delta: float

    @property
    def degenerate(self) -> bool:
        return self.L == 0


def estimate_holder(f: QcOracle, region: SampleRegion,
                    delta_grid: Iterable[float] = (0.25, 0.5, 1.0, 2.0),
                    safety: float = 1.1) -> HolderEstimate:
    """Empirical Hölder data relative to the zero sublevel set.

    For each candidate order the largest quotient
    ``|f(x) - f(q)| / ||x - q||**delta`` over sampled pairs is computed; the
    order with the smallest such supremum wins and the supremum is inflated
    by ``safety``. ``L == 0`` (all sampled values equal) marks a degenerate
    estimate.
    """
    rng = region.rng()
    qs = _feasible_samples(f, region, rng, region.sample_count)
    diffs, dists = [], []
    for (q, fq), x in zip(qs, region.uniform(rng, len(qs))):
        fx = _value(f, x)
        r = float(np.linalg.norm(x - q))
        if fx is None or r == 0:
            continue
        diffs.append(abs(fx - fq))
        dists.append(r)
    if not diffs:
        raise NoFeasibleSamples(f"{f.label}: no usable sample pairs")
    diffs, dists = np.array(diffs), np.array(dists)
    best = None
    for delta in delta_grid:
        sup = float(np.max(diffs / dists**delta))
        if best is None or sup < best[0]:
            best = (sup, float(delta))
    return HolderEstimate(safety * best[0], best[1])


def dist_to_sublevel(f: QcOracle, x, region: SampleRegion) -> float:
    """Brute-force ``dist(x, {f <= 0})`` over the grid of ``region``.

    An upper bound for the true distance restricted to the box; refining
    the grid (raising ``sample_count``) never increases it.
    """
    x = as_point(x, f.dimension)
    best = math.inf
    for q in region.grid():
        v = _value(f, q)
        if v is not None and v <= 0:
            best = min(best, float(np.linalg.norm(x - q)))
    if best == math.inf:
        raise NoFeasibleSamples(f"{f.label}: no feasible grid point in region")
    return best


STANDARD_CHECKS = (
    check_quasiconvex,
    check_star_inequality,
    check_sholder,
    check_konnov,
    check_cutter,
)


def run_checks(f: QcOracle, region: SampleRegion, tol: float = DEFAULT_TOL,
               checks=STANDARD_CHECKS) -> list:
    return [check(f, region, tol) for check in checks]
