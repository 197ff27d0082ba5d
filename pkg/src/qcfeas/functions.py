"""
Built-in quasi-convex function families.

Every constructor returns a :class:`~qcfeas.core.QcOracle` with a
deterministic analytic star subgradient selector and Hölder data, and
attaches a :class:`FamilySpec` so the oracle can be written back to a
problem file.

=====================  =====================================  ===========  =====
family                 f(x)                                   L            delta
=====================  =====================================  ===========  =====
affine                 <a, x> + b                             ||a||        1
ball                   ||x - center|| - radius                1            1
linear_fractional      (<a, x> + b) / (<c, x> + d)            caller       1
sqrt_abs_shift         sqrt(|x|) - s          (1-D)           1            1/2
paper_floor            floor(x) if x > 1 else x   (1-D)       1            1
monotone_composition   phi(g(x)), g convex, phi nondecreasing caller       caller
=====================  =====================================  ===========  =====
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from .core import QcOracle, as_point
from .errors import NonPositiveRadius, SchemaError, UnknownFamily, ZeroSlope

__all__ = [
    "FAMILIES",
    "PHI_MAPS",
    "FamilySpec",
    "make_affine",
    "make_ball",
    "make_linear_fractional",
    "make_sqrt_abs_shift",
    "make_paper_floor",
    "make_monotone_composition",
    "build_oracle",
]

FAMILIES = (
    "affine",
    "ball",
    "linear_fractional",
    "sqrt_abs_shift",
    "paper_floor",
    "monotone_composition",
)


def _floor_above_one(t: float) -> float:
    return float(math.floor(t)) if t > 1 else float(t)


# Nondecreasing outer maps usable from problem files.
PHI_MAPS: dict[str, Callable[[float], float]] = {
    "identity": lambda t: float(t),
    "cube": lambda t: float(t) ** 3,
    "floor_above_one": _floor_above_one,
    "signed_sqrt": lambda t: math.copysign(math.sqrt(abs(t)), t),
}


@dataclass(frozen=True)
class FamilySpec:
    """Serializable description of a built-in oracle.

    ``params`` holds the family parameters as plain Python numbers and
    lists (for ``monotone_composition``: ``inner``, a nested spec of a
    convex family, and ``phi``, a key of :data:`PHI_MAPS`). ``L`` and
    ``delta`` are overrides; ``None`` keeps the family default.
    """

    family: str
    params: dict = field(default_factory=dict)
    L: Optional[float] = None
    delta: Optional[float] = None
    label: Optional[str] = None

    def with_holder(self, L, delta) -> "FamilySpec":
        return dataclasses.replace(self, L=L, delta=delta)

    def with_label(self, label) -> "FamilySpec":
        return dataclasses.replace(self, label=label)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"family": self.family}
        for k, v in self.params.items():
            d[k] = v.to_dict() if isinstance(v, FamilySpec) else v
        if self.L is not None:
            d["L"] = self.L
        if self.delta is not None:
            d["delta"] = self.delta
        if self.label is not None:
            d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        if not isinstance(d, dict):
            raise SchemaError(f"function entry must be an object, got {type(d).__name__}")
        if "family" not in d:
            raise SchemaError("function entry has no 'family' key")
        family = d["family"]
        if family not in FAMILIES:
            raise UnknownFamily(f"unknown family {family!r}; expected one of {FAMILIES}")
        params = {k: v for k, v in d.items() if k not in ("family", "L", "delta", "label")}
        if family == "monotone_composition" and "inner" in params:
            params["inner"] = cls.from_dict(params["inner"])
        L, delta = d.get("L"), d.get("delta")
        for name, v in (("L", L), ("delta", delta)):
            if v is not None and not (_is_number(v) and math.isfinite(v) and v > 0):
                raise SchemaError(f"override {name} must be a positive number, got {v!r}")
        return cls(family, params, L, delta, d.get("label"))


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _attach(oracle: QcOracle, spec: FamilySpec) -> QcOracle:
    return dataclasses.replace(oracle, spec=spec)


def make_affine(a, b: float, label: str = "affine") -> QcOracle:
    """``f(x) = <a, x> + b`` with constant subgradient ``a``.

    With the default ``L = ||a||`` the projection is exactly the Euclidean
    projection onto the halfspace ``<a, x> + b <= 0``.
    """
    a = as_point(a)
    if not np.any(a):
        raise ZeroSlope("affine slope a must be nonzero")
    b = float(b)
    oracle = QcOracle(
        func=lambda x: float(a @ x) + b,
        star_subgrad=lambda x: a,
        L=float(np.linalg.norm(a)),
        delta=1.0,
        dimension=a.size,
        label=label,
    )
    return _attach(oracle, FamilySpec("affine", {"a": a.tolist(), "b": b}))


def make_ball(center, radius: float, label: str = "ball") -> QcOracle:
    center = as_point(center)
    radius = float(radius)
    if not radius > 0:
        raise NonPositiveRadius(f"radius must be positive, got {radius}")

    def subgrad(x):
        d = x - center
        n = np.linalg.norm(d)
        # at the center the zero vector is returned; f(center) = -radius < 0
        return d / n if n > 0 else np.zeros_like(d)

    oracle = QcOracle(
        func=lambda x: float(np.linalg.norm(x - center)) - radius,
        star_subgrad=subgrad,
        L=1.0,
        delta=1.0,
        dimension=center.size,
        label=label,
    )
    return _attach(oracle, FamilySpec("ball", {"center": center.tolist(), "radius": radius}))


def make_linear_fractional(a, b: float, c, d: float, L: float,
                           label: str = "linear_fractional") -> QcOracle:
    """Ratio of affine maps on the open halfspace ``<c, x> + d > 0``.

    The family has no global Hölder modulus, so ``L`` must be supplied by
    the caller for the region the iterates will visit (see
    :func:`qcfeas.verify.estimate_holder`). The selector ``a - f(x) c`` is
    the gradient of the numerator of ``f - f(x)`` and hence normal to the
    level set through ``x``.
    """
    a, c = as_point(a), as_point(c)
    if a.size != c.size:
        raise ValueError("a and c must have the same length")
    if not np.any(c):
        raise ValueError("c must be nonzero")
    b, d = float(b), float(d)

    def func(x):
        return (float(a @ x) + b) / (float(c @ x) + d)

    oracle = QcOracle(
        func=func,
        star_subgrad=lambda x: a - func(x) * c,
        L=float(L),
        delta=1.0,
        dimension=a.size,
        domain_guard=lambda x: float(c @ x) + d > 0,
        label=label,
    )
    spec = FamilySpec("linear_fractional", {"a": a.tolist(), "b": b, "c": c.tolist(), "d": d},
                      L=float(L))
    return _attach(oracle, spec)


def make_sqrt_abs_shift(s: float, label: str = "sqrt_abs_shift") -> QcOracle:
    """1-D ``f(x) = sqrt(|x|) - s``; Hölder of order 1/2 with modulus 1."""
    s = float(s)
    if not s > 0:
        raise ValueError(f"shift s must be positive, got {s}")
    oracle = QcOracle(
        func=lambda x: math.sqrt(abs(x[0])) - s,
        # f(x) > 0 forces x != 0
        star_subgrad=lambda x: np.sign(x),
        L=1.0,
        delta=0.5,
        dimension=1,
        label=label,
    )
    return _attach(oracle, FamilySpec("sqrt_abs_shift", {"s": s}))


def make_paper_floor(label: str = "paper_floor") -> QcOracle:
    """1-D ``floor(x)`` for ``x > 1`` and ``x`` otherwise.

    Upper semicontinuous and with a closed zero sublevel set ``(-inf, 0]``,
    but not lower semicontinuous. Strict sublevel sets are left half-lines,
    so ``+1`` is a star subgradient everywhere.
    """
    oracle = QcOracle(
        func=lambda x: _floor_above_one(x[0]),
        star_subgrad=lambda x: np.ones(1),
        L=1.0,
        delta=1.0,
        dimension=1,
        label=label,
    )
    return _attach(oracle, FamilySpec("paper_floor", {}))


def make_monotone_composition(g_eval, g_subgrad, phi_eval, L: float, delta: float,
                              dimension: Optional[int] = None, domain_guard=None,
                              label: str = "monotone_composition") -> QcOracle:
    """``f = phi o g`` with ``g`` convex and ``phi`` nondecreasing.

    If ``phi(g(y)) < phi(g(x))`` then ``g(y) < g(x)``, so any convex
    subgradient ``s`` of ``g`` at ``x`` satisfies ``<s, y - x> < 0``: it is a
    star subgradient of ``f``. Hölder data cannot be derived through ``phi``
    and must be given.
    """
    oracle = QcOracle(
        func=lambda x: float(phi_eval(g_eval(x))),
        star_subgrad=g_subgrad,
        L=float(L),
        delta=float(delta),
        dimension=dimension,
        domain_guard=domain_guard,
        label=label,
    )
    return oracle


def _vector(params: dict, key: str, dimension: Optional[int]) -> list:
    v = params.get(key)
    if not isinstance(v, list) or not all(_is_number(t) for t in v):
        raise SchemaError(f"parameter {key!r} must be an array of numbers")
    if dimension is not None and len(v) != dimension:
        raise SchemaError(f"parameter {key!r} has length {len(v)}, dimension is {dimension}")
    return v


def _scalar(params: dict, key: str) -> float:
    v = params.get(key)
    if not _is_number(v):
        raise SchemaError(f"parameter {key!r} must be a number")
    return float(v)


def _require_keys(spec: FamilySpec, keys: tuple) -> None:
    extra = set(spec.params) - set(keys)
    if extra:
        raise SchemaError(f"{spec.family}: unexpected keys {sorted(extra)}")


def build_oracle(spec: FamilySpec, dimension: Optional[int] = None) -> QcOracle:
    """Construct the oracle described by ``spec``, applying overrides.

    ``dimension`` (when given) is checked against every vector parameter
    and against the intrinsic dimension of 1-D families.
    """
    p, fam = spec.params, spec.family
    if fam == "affine":
        _require_keys(spec, ("a", "b"))
        f = make_affine(_vector(p, "a", dimension), _scalar(p, "b"))
    elif fam == "ball":
        _require_keys(spec, ("center", "radius"))
        f = make_ball(_vector(p, "center", dimension), _scalar(p, "radius"))
    elif fam == "linear_fractional":
        _require_keys(spec, ("a", "b", "c", "d"))
        if spec.L is None:
            raise SchemaError("linear_fractional needs an explicit 'L'")
        f = make_linear_fractional(_vector(p, "a", dimension), _scalar(p, "b"),
                                   _vector(p, "c", dimension), _scalar(p, "d"), spec.L)
    elif fam == "sqrt_abs_shift":
        _require_keys(spec, ("s",))
        f = make_sqrt_abs_shift(_scalar(p, "s"))
    elif fam == "paper_floor":
        _require_keys(spec, ())
        f = make_paper_floor()
    elif fam == "monotone_composition":
        _require_keys(spec, ("inner", "phi"))
        inner = p.get("inner")
        if not isinstance(inner, FamilySpec) or inner.family not in ("affine", "ball"):
            raise SchemaError("monotone_composition needs an 'inner' affine or ball entry")
        if p.get("phi") not in PHI_MAPS:
            raise SchemaError(f"'phi' must be one of {sorted(PHI_MAPS)}")
        if spec.L is None or spec.delta is None:
            raise SchemaError("monotone_composition needs explicit 'L' and 'delta'")
        g = build_oracle(inner, dimension)
        f = make_monotone_composition(g.func, g.star_subgrad, PHI_MAPS[p["phi"]],
                                      spec.L, spec.delta, dimension=g.dimension)
    else:
        raise UnknownFamily(f"unknown family {fam!r}")

    if dimension is not None and f.dimension != dimension:
        raise SchemaError(f"{fam} has dimension {f.dimension}, problem has {dimension}")
    f = dataclasses.replace(
        f,
        L=f.L if spec.L is None else float(spec.L),
        delta=f.delta if spec.delta is None else float(spec.delta),
        spec=spec,
    )
    if spec.label is not None:
        f = dataclasses.replace(f, label=spec.label)
    return f
