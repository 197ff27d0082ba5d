"""
Star subgradient projection on a single constraint.

A point that satisfies f(x) <= 0 is left untouched. Otherwise it moves
against the normalized star subgradient by (f(x) / L)^(1 / delta). For the
ball this is the metric projection onto the disk. For the shifted square
root it lands exactly where a Holder-continuous function of order 1/2 could
first reach zero.
"""

import numpy as np

from qcfeas import evaluate, make_affine, make_ball, make_sqrt_abs_shift, project

ball = make_ball(center=[0, 0], radius=1)
for x in ([3.0, 4.0], [0.3, -0.2]):
    px = project(ball, x)
    print(f"ball   f({x}) = {evaluate(ball, x):+.3f}  ->  P x = {px}")

halfspace = make_affine(a=[1, 1], b=-1)
x = np.array([2.0, 3.0])
print(f"affine f({x.tolist()}) = {evaluate(halfspace, x):+.3f}  ->  P x = {project(halfspace, x)}")

sq = make_sqrt_abs_shift(1)
x = [9.0]
print(f"sqrt   f({x}) = {evaluate(sq, x):+.3f}  ->  P x = {project(sq, x)}  (step (3-1)^2 = 4)")
