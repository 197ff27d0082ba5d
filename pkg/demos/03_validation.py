"""
Sampling checks for the assumptions behind the method.

Every built-in family passes all five standard checks on its region. A
wrong modulus or a sign error in the subgradient shows up as violations.
"""

import dataclasses

from qcfeas import check_sholder, check_star_inequality, estimate_holder
from qcfeas.verify import run_checks
from qcfeas.catalog import builtin_cases

for case in builtin_cases(sample_count=2000):
    reports = run_checks(case.oracle, case.region)
    marks = " ".join(f"{r.property}={'ok' if r.passed else 'FAIL'}" for r in reports)
    print(f"{case.family:<22} {marks}")

ball = next(c for c in builtin_cases(2000) if c.family == "ball")
est = estimate_holder(ball.oracle, ball.region)
print(f"\nestimated modulus for the ball: L = {est.L:.3f}, delta = {est.delta}")

rep = check_sholder(ball.oracle.with_holder(L=0.5), ball.region)
print(f"ball with L = 0.5: {rep.violations} sHolder violations, worst excess {rep.max_violation:.3f}")

aff = next(c for c in builtin_cases(2000) if c.family == "affine")
flipped = dataclasses.replace(aff.oracle, star_subgrad=lambda x: -aff.oracle.star_subgrad(x))
rep = check_star_inequality(flipped, aff.region)
print(f"affine with flipped subgradient: {rep.violations}/{rep.samples} star violations")
