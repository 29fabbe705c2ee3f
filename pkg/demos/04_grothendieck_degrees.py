"""Degrees of Quot spaces under their Grothendieck embeddings.

Twisting by n points of the curve embeds the Quot space in the
projectivization of an exterior power of the twisted section space.  The
hyperplane class of that embedding equals the normalized Kaehler class at the
stability value t = n - g + 1; the degree of the image is therefore
(rd)! v(n - g + 1), always a non-negative integer -- an end-to-end
integrality check on the whole localization pipeline.
"""

from quotvol import QuotProblem, embedding_params, grothendieck_degree, quot_volume
from quotvol.cli import render_plain

print("rank 2, colength 1, l = (1, 1): degree should be 2n + 2")
for g in (0, 1, 2):
    p = QuotProblem(g=g, r=2, l=(1, 1), d=1)
    row = [grothendieck_degree(p, n) for n in range(g + 2, g + 7)]
    print(f"  g={g}, n=g+2..g+6:  {row}")
print()

print("rank 2, colength 2, l = (0, 0): degree = 2n(6n - 8) - 6(g-1)")
for g in (0, 1, 2):
    p = QuotProblem(g=g, r=2, l=(0, 0), d=2)
    row = [grothendieck_degree(p, n) for n in range(g + 2, g + 7)]
    print(f"  g={g}, n=g+2..g+6:  {row}")
print()

print("rank 3, colength 2: degrees without a printed closed form")
for g in (0, 1):
    p = QuotProblem(g=g, r=3, l=(0, 0, 0), d=2)
    v = quot_volume(p)
    print(f"  g={g}: volume {render_plain(v)}")
    row = [grothendieck_degree(p, n) for n in range(g + 2, g + 7)]
    print(f"       degrees: {row}")
print()

p = QuotProblem(g=1, r=2, l=(0, 0), d=1)
ep = embedding_params(p, 3)
print(f"embedding data at twist n=3 (g=1, r=2, l=0, d=1): plane dim s={ep.s}, "
      f"ambient projective dimension {ep.ambient}")
