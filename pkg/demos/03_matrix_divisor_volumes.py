"""Volumes of twisted matrix divisor spaces by torus localization.

For a split rank-r bundle on a genus-g curve, the space of full-rank
subsheaves of colength d carries a torus action whose fixed components are
products of symmetric powers, indexed by weak compositions of d.  Each
component contributes a residue built from truncated series with exact
Laurent coefficients; the signed sum over compositions, divided by (rd)!, is
the normalized volume polynomial.
"""

from fractions import Fraction

from quotvol import (
    QuotProblem,
    WeightVector,
    compositions,
    quot_volume,
    verify_weight_independence,
)
from quotvol.cli import render_plain

# Closed forms exist for small colength; rank 2, d = 1 gives t + l/2 + (g-1).
print("rank 2, colength 1:")
for g in (0, 1, 2, 3):
    v = quot_volume(QuotProblem(g=g, r=2, l=(1, 1), d=1))
    print(f"  g={g} l=(1,1):  {render_plain(v)}")
print()

print("rank 2, colength 2 (depends only on l, not the splitting):")
for split in ((4, 0), (3, 1), (2, 2)):
    v = quot_volume(QuotProblem(g=2, r=2, l=split, d=2))
    print(f"  g=2 l={split}:  {render_plain(v)}")
print()

print("rank 3, colength 2 -- no closed form in the literature; the fixed-point")
print("sum runs over", len(compositions(2, 3)), "compositions:")
for g in (0, 1, 2):
    v = quot_volume(QuotProblem(g=g, r=3, l=(1, 0, -1), d=2))
    print(f"  g={g}:  {render_plain(v)}")
print()

# The torus weights are auxiliary: any pairwise distinct choice gives the
# same polynomial.  This is a strong end-to-end check of the residue step.
problem = QuotProblem(g=2, r=3, l=(2, 0, 0), d=2)
report = verify_weight_independence(
    problem,
    [
        WeightVector((Fraction(1), Fraction(2), Fraction(3))),
        WeightVector((Fraction(2), Fraction(3), Fraction(5))),
        WeightVector((Fraction(-7, 3), Fraction(1, 2), Fraction(9, 4))),
    ],
)
print("weight independence:", "PASS" if report.passed else "FAIL")
for w, v in report.volumes:
    print(f"  weights {tuple(str(x) for x in w.w)}:  {render_plain(v)}")
