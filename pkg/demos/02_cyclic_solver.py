"""
Cyclic sweeps over several constraints.

Each sweep applies the projections in order. The solver stops when the
largest positive part max_i f_i+(x) drops to eps, or when the sweep budget
runs out. Distances to any feasible point never increase from one sweep to
the next.
"""

from qcfeas import (
    FeasibilityProblem,
    SolverConfig,
    fejer_check,
    make_affine,
    make_ball,
    make_sqrt_abs_shift,
    solve,
)

problem = FeasibilityProblem.of(make_ball([0, 0], 1), make_ball([1.9, 0], 1), make_affine([0, 1], 0))
reference = [0.95, 0.0]
result = solve(problem, [3, 4], SolverConfig(eps=1e-6, max_sweeps=100, fejer_reference=reference))
print(f"two disks and a half-plane: {result.status.value} after {result.sweeps} sweeps")
print(f"  x = {result.x}, residual = {result.residual:.2e}")
print(f"  distances to {reference} non-increasing: {fejer_check(result.trace, reference)}")
for rec in result.trace[:4]:
    print(f"  sweep {rec.sweep_index}: residual {rec.residual:.3e}, dist {rec.dist_to_reference:.6f}")

# An order-1/2 constraint: the iteration is x -> 2 sqrt(x) - 1, so the
# residual shrinks only like 2/k.
slow = FeasibilityProblem.of(make_sqrt_abs_shift(1))
for budget in (10, 60, 1000):
    res = solve(slow, [9.0], SolverConfig(eps=1e-6, max_sweeps=budget))
    print(f"sqrt shift, {budget:>4} sweeps: {res.status.value}, residual {res.residual:.4f}")
