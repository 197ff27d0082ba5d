import math

import numpy as np
import pytest

from qcfeas import (
    NonPositiveRadius,
    SchemaError,
    UnknownFamily,
    ZeroSlope,
    evaluate,
    make_affine,
    make_ball,
    make_linear_fractional,
    make_monotone_composition,
    make_paper_floor,
    make_sqrt_abs_shift,
    project,
    star_subgradient,
)
from qcfeas.functions import PHI_MAPS, FamilySpec, build_oracle


def halfspace_projection(a, b, x):
    """Closed-form Euclidean projection onto {<a, x> + b <= 0}."""
    a, x = np.asarray(a, float), np.asarray(x, float)
    return x - max(0.0, a @ x + b) / (a @ a) * a


def test_affine_examples():
    f = make_affine([1, 0], -2)
    assert evaluate(f, [5, 1]) == 3
    assert project(f, [5, 1]).tolist() == [2.0, 1.0]
    assert project(make_affine([2, 0], -4), [5, 1]).tolist() == [2.0, 1.0]
    assert f.L == 1.0 and f.delta == 1.0


def test_affine_zero_slope():
    with pytest.raises(ZeroSlope):
        make_affine([0, 0], 1)


def test_affine_matches_halfspace_projection():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a = rng.normal(size=3)
        b = rng.normal()
        f = make_affine(a, b)
        for x in rng.uniform(-10, 10, size=(20, 3)):
            np.testing.assert_allclose(project(f, x), halfspace_projection(a, b, x),
                                       rtol=0, atol=1e-12)


@pytest.mark.parametrize("lam", [0.1, 2.0, 7.5])
def test_affine_scale_robustness(lam):
    a, b = np.array([1.0, -2.0]), 0.5
    rng = np.random.default_rng(5)
    for x in rng.uniform(-5, 5, size=(100, 2)):
        np.testing.assert_allclose(project(make_affine(lam * a, lam * b), x),
                                   project(make_affine(a, b), x), rtol=0, atol=1e-12)


def test_ball_examples():
    f = make_ball([0, 0], 1)
    np.testing.assert_allclose(project(f, [3, 4]), [0.6, 0.8], atol=1e-15)
    assert project(f, [0.2, 0]).tolist() == [0.2, 0.0]
    assert evaluate(make_ball([1, 1], 2), [1, 1]) == -2.0
    with pytest.raises(NonPositiveRadius):
        make_ball([0, 0], 0)


def test_ball_projection_is_metric_projection():
    c, r = np.array([1.0, -2.0, 0.5]), 1.5
    f = make_ball(c, r)
    rng = np.random.default_rng(2)
    for x in rng.uniform(-6, 6, size=(500, 3)):
        d = np.linalg.norm(x - c)
        expected = x if d <= r else c + r * (x - c) / d
        np.testing.assert_allclose(project(f, x), expected, rtol=0, atol=1e-12)


def test_linear_fractional_examples():
    f = make_linear_fractional([1, 0], -2, [0, 1], 1, L=3)
    assert evaluate(f, [4, 1]) == 1.0
    assert star_subgradient(f, [4, 1]).tolist() == [1.0, -1.0]
    assert evaluate(f, [2, 0]) == 0.0
    assert f.delta == 1.0 and f.L == 3.0


def test_sqrt_abs_shift_examples():
    f = make_sqrt_abs_shift(1)
    assert project(f, 9).tolist() == [5.0]
    assert project(f, 0.25).tolist() == [0.25]
    assert project(f, 4).tolist() == [3.0]
    assert f.delta == 0.5


def test_paper_floor_examples():
    f = make_paper_floor()
    assert project(f, 2.5).tolist() == [0.5]
    assert project(f, 0.5).tolist() == [0.0]
    assert project(f, -3).tolist() == [-3.0]


def test_paper_floor_zero_sublevel_set_is_closed():
    f = make_paper_floor()
    assert evaluate(f, 0.0) <= 0
    for eps in np.geomspace(1e-300, 10, 200):
        assert evaluate(f, eps) > 0


def test_paper_floor_not_lower_semicontinuous():
    f = make_paper_floor()
    # values jump down at integers above one: f(2 - t) = 1 < 2 = f(2)
    assert evaluate(f, 2.0) == 2.0 and evaluate(f, 2.0 - 1e-12) == 1.0


def test_composition_identity_is_ball():
    ball = make_ball([0, 0], 1)
    comp = make_monotone_composition(ball.func, ball.star_subgrad, PHI_MAPS["identity"],
                                     L=1, delta=1, dimension=2)
    rng = np.random.default_rng(9)
    for x in rng.uniform(-4, 4, size=(200, 2)):
        assert np.array_equal(project(comp, x), project(ball, x))


def test_composition_reproduces_paper_floor():
    g = make_affine([1.0], 0.0)
    comp = make_monotone_composition(g.func, g.star_subgrad, PHI_MAPS["floor_above_one"],
                                     L=1, delta=1, dimension=1)
    floor = make_paper_floor()
    for t in np.linspace(-5, 5, 2001):
        assert evaluate(comp, t) == evaluate(floor, t)


def test_composition_cube():
    g = make_affine([1.0, 0.0], 0.0)
    comp = make_monotone_composition(g.func, g.star_subgrad, PHI_MAPS["cube"], L=12, delta=1)
    assert evaluate(comp, [2, 0]) == 8.0


@pytest.mark.parametrize("name", sorted(PHI_MAPS))
def test_phi_maps_nondecreasing(name):
    ts = np.linspace(-7, 7, 5001)
    vals = [PHI_MAPS[name](t) for t in ts]
    assert all(u <= v for u, v in zip(vals, vals[1:]))


def test_spec_roundtrip_and_overrides():
    spec = FamilySpec.from_dict({"family": "ball", "center": [0, 1], "radius": 2,
                                 "L": 0.5, "label": "disk"})
    f = build_oracle(spec, 2)
    assert (f.L, f.delta, f.label) == (0.5, 1.0, "disk")
    assert FamilySpec.from_dict(spec.to_dict()) == spec
    nested = {"family": "monotone_composition", "phi": "cube", "L": 12, "delta": 1,
              "inner": {"family": "affine", "a": [1, 0], "b": 0}}
    assert FamilySpec.from_dict(nested).to_dict() == nested


@pytest.mark.parametrize("entry, err", [
    ({"family": "hexagon"}, UnknownFamily),
    ({"a": [1, 0], "b": 0}, SchemaError),
    ({"family": "affine", "a": [1, 0], "b": 0, "delta": -1}, SchemaError),
    ({"family": "affine", "a": [1, 0], "b": 0, "L": 0}, SchemaError),
    ({"family": "affine", "a": [1, 0, 0], "b": 0}, SchemaError),
    ({"family": "affine", "a": [1, 0], "b": 0, "colour": 1}, SchemaError),
    ({"family": "linear_fractional", "a": [1, 0], "b": 0, "c": [0, 1], "d": 1}, SchemaError),
    ({"family": "monotone_composition", "phi": "cube",
      "inner": {"family": "affine", "a": [1, 0], "b": 0}}, SchemaError),
    ({"family": "monotone_composition", "phi": "sin", "L": 1, "delta": 1,
      "inner": {"family": "affine", "a": [1, 0], "b": 0}}, SchemaError),
    ({"family": "sqrt_abs_shift", "s": 1}, SchemaError),
])
def test_spec_errors(entry, err):
    with pytest.raises(err):
        build_oracle(FamilySpec.from_dict(entry), 2)


def test_sqrt_selector_sign():
    f = make_sqrt_abs_shift(2)
    assert star_subgradient(f, [-25.0]).tolist() == [-1.0]
    assert math.isclose(evaluate(f, [16.0]), 2.0)
