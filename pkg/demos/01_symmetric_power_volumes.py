"""Volumes of symmetric powers of a curve (rank-1 kernels, rank-1 target).

The moduli space of colength-d quotients of a line bundle on a genus-g curve
is the symmetric power X^(d).  Its normalized volume is the polynomial

    v(t) = sum_{j=0}^{min(d,g)} C(g,j)/(d-j)! (deg_E + t)^(d-j)

in the stability variable t, in units of (4 pi^2)^d.  The script prints a
small table, shows why the sum must start at j = 0, and exercises the
comparison with the classical vortex-counting formula via rational pi probes.
"""

from fractions import Fraction

from quotvol import CurveQuotProblem, manton_nasir_check, symmetric_power_volume
from quotvol.cli import render_plain

print("Normalized volumes of X^(d), deg_E = -d (vortex normalization):")
for g in range(4):
    for d in range(4):
        v = symmetric_power_volume(CurveQuotProblem(g=g, deg_E=-d, d=d))
        print(f"  g={g} d={d}:  {render_plain(v)}")
print()

# The j = 0 term is the leading (deg_E + t)^d/d!.  Starting the sum at j = 1
# would return 1 for (g, d) = (1, 1) -- inconsistent with the direct
# intersection-number expansion, which gives deg_E + t + 1.
v = symmetric_power_volume(CurveQuotProblem(g=1, deg_E=5, d=1))
print("g=1 d=1 deg_E=5:", render_plain(v), " (the j=0 term is essential)")
print()

# Comparison with the classical vortex volume: with deg_E = -d and the
# stability value vol/(4 pi), our (4 pi^2)^d v equals pi^d times the vortex
# sum.  pi never enters the exact core; we test the identity at rational
# stand-ins for pi, where everything is exact.
print("ratio (4 pi^2)^d v  :  vortex sum, at rational pi probes")
vol = Fraction(100)
for d in (1, 2, 3):
    for probe in (Fraction(2), Fraction(22, 7)):
        pair = manton_nasir_check(2, d, vol, probe)
        ratio = pair.quot_side / pair.manton_nasir_side
        print(f"  d={d} probe={probe}:  ratio = {ratio}  (= probe^{d})")
        assert ratio == probe ** d
