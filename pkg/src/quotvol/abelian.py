"""Closed-formula volumes for Quot spaces with rank-1 kernel.

Two routes are implemented:

* the curve case, where the Quot space is a symmetric power of the curve and
  the volume expands against the classical intersection numbers
  ``<gamma^(d-j) theta^j> = g!/(g-j)!``;
* the general acyclic case, where the Quot space is a projective bundle over
  the Picard torus and the volume is an exterior-algebra evaluation driven by
  abstract pairing data (``AcyclicData``).

Volumes are normalized: they are polynomials in the stability variable, in
units of ``(4 pi^2)^dim``.  The constant pi never enters the exact core; the
unnormalized value is only reachable through rational stand-ins for pi (see
``manton_nasir_check`` and the command-line probe options).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .exterior import (
    AltForm,
    evaluate_top,
    exp_even,
    standard_symplectic_form,
    standard_symplectic_matrix,
    theta_form,
)
from .scalars import TPoly

__all__ = [
    "CurveQuotProblem",
    "AcyclicData",
    "MantonNasirValues",
    "poincare_number",
    "symmetric_power_volume",
    "manton_nasir_check",
    "segre_from_ch",
    "chern_from_ch",
    "ch_of_V",
    "acyclic_volume",
    "curve_acyclic_data",
]


@dataclass(frozen=True, slots=True)
class CurveQuotProblem:
    """Rank-1 kernel data on a genus-g curve.

    ``d = deg(E_0) - deg(E)`` is the length of the quotient; the Quot space
    is the d-th symmetric power of the curve.
    """

    g: int
    deg_E: int
    d: int

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if self.d < 0:
            raise ValueError("d must be non-negative")


def poincare_number(g: int, a: int, b: int) -> Fraction:
    """Intersection number of ``gamma^a theta^b`` on the symmetric power
    ``X^(a+b)``: ``g!/(g-b)!`` for ``b <= g`` and zero above the genus."""
    if g < 0 or a < 0 or b < 0:
        raise ValueError("arguments must be non-negative")
    if b > g:
        return Fraction(0)
    return Fraction(math.factorial(g), math.factorial(g - b))


def symmetric_power_volume(p: CurveQuotProblem) -> TPoly:
    """Normalized volume of the d-th symmetric power.

    v = sum_{j=0}^{min(d,g)} C(g,j)/(d-j)! (deg_E + ttilde)^(d-j).

    The sum starts at j = 0: the j = 0 term carries the leading
    (deg_E + ttilde)^d / d! contribution, and dropping it (an easy off-by-one
    when quoting the classical intersection formula) would already fail the
    d = 0 normalization v = 1.  The metric volume is (4 pi^2)^d times this.
    """
    base = TPoly((p.deg_E, 1))
    total = TPoly()
    for j in range(min(p.d, p.g) + 1):
        coeff = Fraction(math.comb(p.g, j), math.factorial(p.d - j))
        total = total + base ** (p.d - j) * coeff
    return total


class MantonNasirValues(NamedTuple):
    quot_side: Fraction
    manton_nasir_side: Fraction


def manton_nasir_check(g: int, d: int, vol_X: Fraction, pi_stand_in: Fraction) -> MantonNasirValues:
    """Both sides of the vortex-volume comparison at a rational stand-in for pi.

    ``quot_side`` is ``(4 pi^2)^d v(ttilde)`` with ``deg_E = -d`` and
    ``ttilde = vol_X / (4 pi)`` (the vortex parameter fixed at one half);
    ``manton_nasir_side`` is the vortex-counting sum
    ``sum_i (4 pi)^i C(g,i) (vol_X - 4 pi d)^(d-i) / (d-i)!``.
    The caller asserts their ratio is ``pi^d``; running several distinct
    stand-ins pins that power as a polynomial identity.
    """
    pi = Fraction(pi_stand_in)
    if pi == 0:
        raise ValueError("pi stand-in must be nonzero")
    vol = Fraction(vol_X)
    v = symmetric_power_volume(CurveQuotProblem(g=g, deg_E=-d, d=d))
    quot_side = (4 * pi ** 2) ** d * v(vol / (4 * pi))
    mn = Fraction(0)
    for i in range(min(d, g) + 1):
        mn += (
            (4 * pi) ** i
            * Fraction(math.comb(g, i), math.factorial(d - i))
            * (vol - 4 * pi * d) ** (d - i)
        )
    return MantonNasirValues(quot_side, mn)


def _check_graded(ch: Sequence[AltForm]):
    for idx, form in enumerate(ch):
        want = 2 * (idx + 1)
        if any(k != want for k in form.degrees()):
            raise ValueError("graded degree error")


def _char_exp(ch: Sequence[AltForm], q: int, sign_of_i) -> AltForm:
    arg = AltForm.zero(q)
    for idx, form in enumerate(ch):
        i = idx + 1
        arg = arg + form * Fraction(sign_of_i(i), i)
    return exp_even(arg)


def segre_from_ch(ch: Sequence[AltForm], top_degree: int) -> list[AltForm]:
    """Segre classes from the Chern character components.

    ``ch[i-1]`` must be the degree-2i component.  The total Segre class is
    ``exp(sum (-1)^i ch_i / i)``; entry j of the result is the degree-2j
    piece, up to ``top_degree``.
    """
    if not ch:
        q = 0
    else:
        q = ch[0].q
    _check_graded(ch)
    total = _char_exp(ch, q, lambda i: (-1) ** i)
    return [total.component(2 * j) for j in range(top_degree + 1)]


def chern_from_ch(ch: Sequence[AltForm], top_degree: int) -> list[AltForm]:
    """Chern classes, ``exp(sum (-1)^(i+1) ch_i / i)``; inverse to the Segre
    total class."""
    q = ch[0].q if ch else 0
    _check_graded(ch)
    total = _char_exp(ch, q, lambda i: (-1) ** (i + 1))
    return [total.component(2 * j) for j in range(top_degree + 1)]


@dataclass(frozen=True)
class AcyclicData:
    """Pairing data describing an acyclic pair on an n-dimensional base.

    ``pairings[s]`` is the number ``<m^s C_(n-s), [X]>`` (``C_i`` the
    degree-2i pieces of ``ch(E_0) td(X)``), ``deg_E`` is
    ``<m [omega]^(n-1), [X]>``, ``h`` the antisymmetric pairing matrix behind
    the theta class, and ``kappa_forms[(i, s)]`` the degree-2i form
    ``x_1, ..., x_2i -> <x_1 ... x_2i m^s C_(n-i-s), [X]>``.
    """

    n: int
    q: int
    deg_E: Fraction
    pairings: tuple[Fraction, ...]
    h: tuple[tuple[Fraction, ...], ...]
    kappa_forms: Mapping[tuple[int, int], AltForm] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("base dimension must be positive")
        if self.q < 0:
            raise ValueError("q must be non-negative")
        object.__setattr__(self, "deg_E", Fraction(self.deg_E))
        object.__setattr__(self, "pairings", tuple(Fraction(p) for p in self.pairings))
        object.__setattr__(self, "h", tuple(tuple(Fraction(x) for x in row) for row in self.h))
        if len(self.pairings) != self.n + 1:
            raise ValueError("need pairings for s = 0..n")
        rank = self.rank
        if rank.denominator != 1 or rank < 1:
            raise ValueError(f"rank sum(-1)^s P_s/s! must be a positive integer, got {rank}")
        for (i, s), form in self.kappa_forms.items():
            if not (1 <= i <= self.q and 0 <= s <= self.n - i):
                raise ValueError(f"kappa index {(i, s)} out of range")
            if form.q != self.q:
                raise ValueError("rank mismatch in kappa form")
            if any(k != 2 * i for k in form.degrees()):
                raise ValueError("graded degree error")
        # antisymmetry of h is re-checked by theta_form at evaluation time
        if len(self.h) != 2 * self.q:
            raise ValueError("h must be 2q x 2q")

    @property
    def rank(self) -> Fraction:
        """chi of the twisted sections bundle: sum (-1)^s pairings[s]/s!."""
        return sum(
            (Fraction((-1) ** s) * p / math.factorial(s) for s, p in enumerate(self.pairings)),
            Fraction(0),
        )

    @property
    def dimension(self) -> int:
        """N = rank + q - 1, the dimension of the projective bundle."""
        return int(self.rank) + self.q - 1


def ch_of_V(data: AcyclicData) -> list[AltForm]:
    """Chern character components ch_1, ..., ch_q of the sections bundle:
    ch_i = sum_{s=0}^{n-i} (-1)^(i+s)/s! kappa_(m^s C_(n-i-s))."""
    out = []
    for i in range(1, data.q + 1):
        ch_i = AltForm.zero(data.q)
        for s in range(data.n - i + 1):
            form = data.kappa_forms.get((i, s))
            if form is None:
                raise ValueError(f"incomplete pairing data: kappa form (i={i}, s={s}) missing")
            ch_i = ch_i + form * Fraction((-1) ** (i + s), math.factorial(s))
        out.append(ch_i)
    return out


def acyclic_volume(data: AcyclicData) -> TPoly:
    """Normalized volume of the projective-bundle Quot space.

    v = (1/N!) sum_k C(N,k) (deg_E + ttilde)^(N-k) <theta^k s_(q-k)> where
    the bracket is top evaluation on the rank-2q lattice; only theta
    exponents k <= q contribute.  Units of (4 pi^2)^N.
    """
    if data.rank < 1:
        raise ValueError("empty projective bundle")
    q = data.q
    N = data.dimension
    theta = theta_form(q, data.h)
    segre = segre_from_ch(ch_of_V(data), q)
    base = TPoly((data.deg_E, 1))
    total = TPoly()
    theta_k = AltForm.one(q)
    for k in range(min(q, N) + 1):
        pairing = evaluate_top(theta_k.wedge(segre[q - k]))
        if pairing:
            total = total + base ** (N - k) * (math.comb(N, k) * pairing)
        if k < q:
            theta_k = theta_k.wedge(theta)
    return total * Fraction(1, math.factorial(N))


def curve_acyclic_data(g: int, r0: int, deg_E0: int, m: int) -> AcyclicData:
    """Acyclic-pair data for a rank-r0 bundle of degree deg_E0 on a genus-g
    curve, with rank-1 kernels of degree m.

    Outside the acyclicity range ``deg_E0 > r0 m + 2 r0 (g - 1)`` the data
    still evaluates to the same polynomial, but the projective-bundle
    description is the caller's claim; a warning is issued.
    """
    if r0 < 1:
        raise ValueError("r0 must be positive")
    if not deg_E0 > r0 * m + 2 * r0 * (g - 1):
        warnings.warn(
            f"(deg_E0={deg_E0}, r0={r0}, m={m}, g={g}) is outside the acyclic range; "
            "the formula value is returned but the bundle description may fail",
            stacklevel=2,
        )
    pairings = (Fraction(deg_E0 + r0 * (1 - g)), Fraction(m * r0))
    kappa: dict[tuple[int, int], AltForm] = {}
    if g >= 1:
        kappa[(1, 0)] = standard_symplectic_form(g) * r0
    return AcyclicData(
        n=1,
        q=g,
        deg_E=Fraction(m),
        pairings=pairings,
        h=standard_symplectic_matrix(g),
        kappa_forms=kappa,
    )
