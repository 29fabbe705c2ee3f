"""Fixed-point localization for full-rank Quot spaces over a curve.

For a split bundle ``E_0 = L_1 + ... + L_r`` the scaling torus acts on the
Quot space of full-rank subsheaves of total colength ``d``; the fixed locus
is indexed by weak compositions ``(d_1, ..., d_r)`` of ``d`` and each
component is a product of symmetric powers.  The volume is the signed sum
over compositions of a residue-type evaluation:

* build the fixed-point integrand as a truncated series in variable pairs
  ``(x_i, y_i)`` (capped at ``x``-``y`` degree ``d_i``) with Laurent
  coefficients in the equivariant variable ``u``;
* read off the multi-degree ``(d_1, ..., d_r)`` part, which must sit in
  ``u^0`` (checked, never assumed);
* evaluate each ``y_i^(b_i)`` against the symmetric-power intersection
  numbers, i.e. multiply by the falling factorials ``g(g-1)...(g-b_i+1)``.

The result is independent of the (pairwise distinct) torus weights; that
freedom is kept as an end-to-end consistency check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .scalars import (
    TPoly,
    TruncSeries,
    ULaurent,
    falling_factorial,
    series_exp,
    series_pow_int,
    u_coefficient,
)

__all__ = [
    "QuotProblem",
    "Composition",
    "WeightVector",
    "WeightIndependenceReport",
    "compositions",
    "default_weights",
    "stability_weights",
    "integrand",
    "evaluate_composition",
    "quot_volume",
    "verify_weight_independence",
]


@dataclass(frozen=True, slots=True)
class QuotProblem:
    """Full-rank Quot problem: genus ``g``, splitting degrees ``l``, total
    colength ``d``.  ``ttilde`` optionally records a rational sample point;
    the volume itself is always returned as a polynomial."""

    g: int
    r: int
    l: tuple[int, ...]
    d: int
    ttilde: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if self.r < 1:
            raise ValueError("rank must be positive")
        if self.d < 0:
            raise ValueError("d must be non-negative")
        if len(self.l) != self.r:
            raise ValueError("l must list one degree per summand")

    @property
    def l_total(self) -> int:
        return sum(self.l)

    @property
    def gbar(self) -> int:
        return self.g - 1

    @property
    def mu(self) -> Fraction:
        return Fraction(self.l_total, self.r)


@dataclass(frozen=True, slots=True)
class Composition:
    """Weak composition (d_1, ..., d_r); indexes one fixed-point component."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        if any(p < 0 for p in self.parts):
            raise ValueError("parts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True, slots=True)
class WeightVector:
    """Pairwise distinct rational torus weights."""

    w: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(Fraction(x) for x in self.w))
        if len(set(self.w)) != len(self.w):
            raise ValueError("weights must be pairwise distinct")


def default_weights(r: int) -> WeightVector:
    return WeightVector(tuple(Fraction(i) for i in range(1, r + 1)))


def compositions(d: int, r: int) -> list[Composition]:
    """All weak length-r compositions of d, in descending lexicographic order."""
    if d < 0 or r < 1:
        raise ValueError("need d >= 0 and r >= 1")
    out: list[Composition] = []

    def build(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(Composition(tuple(prefix + [remaining])))
            return
        for first in range(remaining, -1, -1):
            build(prefix + [first], remaining - first, slots - 1)

    build([], d, r)
    return out


def stability_weights(p: QuotProblem, c: Composition) -> list[TPoly]:
    """s_i = ttilde + l_i - d_i, one per summand."""
    return [TPoly((p.l[i] - c.parts[i], 1)) for i in range(p.r)]


def integrand(p: QuotProblem, c: Composition, w: WeightVector) -> TruncSeries:
    """Fixed-point integrand for one composition.

    ((sum_i s_i x_i + y_i) - (sum_i s_i w_i) u)^(rd)
      * prod_{i != j} ((w_j - w_i) u + x_i)^(gbar + l_i - d_i - l_j)
                      exp(y_i / ((w_j - w_i) u + x_i))
      / prod_{i < j} ((w_j - w_i) u + (x_i - x_j))^(2 gbar)
    """
    if len(w.w) != p.r:
        raise ValueError("weight vector length must equal the rank")
    caps = c.parts
    s = stability_weights(p, c)
    gbar = p.gbar

    kahler = TruncSeries.zero(caps)
    for i in range(1, p.r + 1):
        kahler = kahler + TruncSeries.x(caps, i) * s[i - 1] + TruncSeries.y(caps, i)
    s_dot_w = TPoly()
    for i in range(p.r):
        s_dot_w = s_dot_w + s[i] * w.w[i]
    kahler = kahler - TruncSeries.scalar(caps, ULaurent.monomial(s_dot_w, 1))
    f = series_pow_int(kahler, p.r * p.d)

    for i in range(1, p.r + 1):
        for j in range(1, p.r + 1):
            if i == j:
                continue
            base = TruncSeries.x(caps, i) + TruncSeries.scalar(
                caps, ULaurent.monomial(w.w[j - 1] - w.w[i - 1], 1)
            )
            exponent = gbar + p.l[i - 1] - c.parts[i - 1] - p.l[j - 1]
            f = f * series_pow_int(base, exponent)
            f = f * series_exp(TruncSeries.y(caps, i) * series_pow_int(base, -1))

    for i in range(1, p.r + 1):
        for j in range(i + 1, p.r + 1):
            base = (
                TruncSeries.x(caps, i)
                - TruncSeries.x(caps, j)
                + TruncSeries.scalar(caps, ULaurent.monomial(w.w[j - 1] - w.w[i - 1], 1))
            )
            f = f * series_pow_int(base, -2 * gbar)
    return f


def _u_concentrated(value: ULaurent) -> TPoly:
    """Extract the u^0 part, insisting nothing lives at other u-degrees."""
    # ULaurent windows are trimmed, so a nonzero value has nonzero ends.
    if value and (value.low != 0 or value.high != 0):
        raise ArithmeticError("nonzero u-degree in top coefficient")
    return u_coefficient(value, 0)


def evaluate_composition(p: QuotProblem, c: Composition, w: WeightVector) -> TPoly:
    """Contribution of one fixed-point component, before the global sign and
    the 1/(rd)! normalization.

    Only monomials of exact multi-degree (d_1, ..., d_r) enter; each is
    checked to be concentrated in u^0 and weighted by the product of falling
    factorials from the theta-power intersection numbers.
    """
    f = integrand(p, c, w)
    parts = c.parts
    total = TPoly()
    for key, value in f.terms.items():
        if any(key[2 * i] + key[2 * i + 1] != parts[i] for i in range(p.r)):
            continue
        coeff = _u_concentrated(value)
        weight = Fraction(1)
        for i in range(p.r):
            weight *= falling_factorial(p.g, key[2 * i + 1])
            if weight == 0:
                break
        if weight:
            total = total + coeff * weight
    return total


def _sign(p: QuotProblem) -> int:
    # Orientation of the equivariant Euler class of the normal bundle after
    # standardizing each cross factor to the i < j ordering; without it the
    # colength-0 Quot space (a single point) would not have volume 1.
    parity = (p.gbar * math.comb(p.r, 2) + (p.r - 1) * (p.l_total - p.d)) % 2
    return -1 if parity else 1


def quot_volume(p: QuotProblem, w: WeightVector | None = None) -> TPoly:
    """Normalized volume of the Quot space as a polynomial of degree <= rd
    in the stability variable (units of (4 pi^2)^(rd))."""
    if w is None:
        w = default_weights(p.r)
    total = TPoly()
    for c in compositions(p.d, p.r):
        total = total + evaluate_composition(p, c, w)
    return total * Fraction(_sign(p), math.factorial(p.r * p.d))


@dataclass(frozen=True, slots=True)
class WeightIndependenceReport:
    passed: bool
    volumes: tuple[tuple[WeightVector, TPoly], ...]


def verify_weight_independence(
    p: QuotProblem,
    ws: Sequence[WeightVector],
    volume_fn: Callable[[QuotProblem, WeightVector], TPoly] | None = None,
) -> WeightIndependenceReport:
    """Exact-equality check of the volume across several weight vectors.

    ``volume_fn`` exists for fault-injection tests; production callers leave
    it at the default.
    """
    if len(ws) < 2:
        raise ValueError("need at least two weight vectors")
    fn = volume_fn if volume_fn is not None else quot_volume
    volumes = tuple((w, fn(p, w)) for w in ws)
    first = volumes[0][1]
    passed = all(v == first for _, v in volumes[1:])
    return WeightIndependenceReport(passed=passed, volumes=volumes)
