"""Exterior algebra over a rank-2q lattice.

A form is stored sparsely as a map from strictly increasing index tuples
``I`` inside ``{1, ..., 2q}`` to coefficients (``Fraction``, or ``TPoly``
once the stability variable mixes in).  Mixed-degree forms are allowed; the
graded pieces are recovered with ``component``.  Evaluation against the
standard basis is the coefficient of the full tuple ``(1, ..., 2q)``, so all
pairing data must be expressed in a basis compatible with the complex
orientation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import TPoly

__all__ = [
    "AltForm",
    "wedge",
    "exp_even",
    "evaluate_top",
    "theta_form",
    "standard_symplectic_matrix",
    "standard_symplectic_form",
]


def _as_coeff(value):
    if isinstance(value, (Fraction, TPoly)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficients must be exact: {type(value).__name__}")


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> int:
    """Shuffle sign for concatenating two increasing tuples; caller ensures
    disjointness."""
    inversions = 0
    for b in right:
        inversions += sum(1 for a in left if a > b)
    return -1 if inversions % 2 else 1


class AltForm:
    """Alternating multilinear form on a lattice of rank 2q.

    The coefficient on the key ``I = (i_1 < ... < i_k)`` is the value of the
    form on the basis vectors indexed by ``I``.
    """

    __slots__ = ("q", "terms")

    def __init__(self, q: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if q < 0:
            raise ValueError("q must be non-negative")
        self.q = q
        out: dict[tuple[int, ...], object] = {}
        if terms:
            for key, val in terms.items():
                key = tuple(key)
                if any(not (1 <= i <= 2 * q) for i in key):
                    raise ValueError(f"index out of range in {key!r}")
                if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                    raise ValueError(f"indices must be strictly increasing: {key!r}")
                val = _as_coeff(val)
                if val:
                    out[key] = val
        self.terms = out

    @classmethod
    def zero(cls, q: int) -> AltForm:
        return cls(q)

    @classmethod
    def scalar(cls, q: int, value) -> AltForm:
        return cls(q, {(): value})

    @classmethod
    def one(cls, q: int) -> AltForm:
        return cls.scalar(q, 1)

    @classmethod
    def basis(cls, q: int, indices: Iterable[int]) -> AltForm:
        """The basis form lambda_I for a strictly increasing index tuple."""
        return cls(q, {tuple(indices): 1})

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def component(self, k: int) -> AltForm:
        """The degree-k graded piece."""
        return AltForm(self.q, {key: v for key, v in self.terms.items() if len(key) == k})

    def coefficient(self, indices: Iterable[int]):
        return self.terms.get(tuple(indices), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, AltForm):
            return NotImplemented
        if self.q != other.q:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for key, val in other.terms.items():
            s = out.get(key, Fraction(0)) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        result = AltForm(self.q)
        result.terms = out
        return result

    def __neg__(self) -> AltForm:
        result = AltForm(self.q)
        result.terms = {k: -v for k, v in self.terms.items()}
        return result

    def __sub__(self, other):
        if not isinstance(other, AltForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        if not isinstance(scalar, (Fraction, TPoly)):
            return NotImplemented
        if not scalar:
            return AltForm(self.q)
        result = AltForm(self.q)
        result.terms = {k: v * scalar for k, v in self.terms.items()}
        return result

    __rmul__ = __mul__

    def wedge(self, other: AltForm) -> AltForm:
        if not isinstance(other, AltForm):
            raise TypeError("wedge expects an AltForm")
        if self.q != other.q:
            raise ValueError("rank mismatch")
        out: dict[tuple[int, ...], object] = {}
        for ka, va in self.terms.items():
            sa = set(ka)
            for kb, vb in other.terms.items():
                if sa & set(kb):
                    continue
                key = tuple(sorted(ka + kb))
                term = _merge_sign(ka, kb) * va * vb
                s = out.get(key, Fraction(0)) + term
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        result = AltForm(self.q)
        result.terms = out
        return result

    def wedge_power(self, k: int) -> AltForm:
        if k < 0:
            raise ValueError("negative wedge power")
        result = AltForm.one(self.q)
        for _ in range(k):
            result = result.wedge(self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, AltForm):
            return NotImplemented
        return self.q == other.q and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return f"AltForm(q={self.q}, 0)"
        parts = [f"{key}: {val}" for key, val in sorted(self.terms.items())]
        return f"AltForm(q={self.q}, {{" + ", ".join(parts) + "})"


def wedge(a: AltForm, b: AltForm) -> AltForm:
    """Exterior product with shuffle signs; zero above degree 2q."""
    return a.wedge(b)


def exp_even(a: AltForm) -> AltForm:
    """``sum a^k / k!`` for a form built from even components of degree >= 2.

    The sum terminates at wedge degree 2q.
    """
    for k in a.degrees():
        if k % 2:
            raise ValueError("exponential requires even form")
        if k == 0:
            raise ValueError("exponential of non-nilpotent form")
    acc = AltForm.one(a.q)
    term = AltForm.one(a.q)
    for k in range(1, a.q + 1):
        term = term.wedge(a) * Fraction(1, k)
        if not term:
            break
        acc = acc + term
    return acc


def evaluate_top(a: AltForm):
    """Value of the top-degree component on the basis (1, ..., 2q)."""
    return a.terms.get(tuple(range(1, 2 * a.q + 1)), Fraction(0))


def theta_form(q: int, h: Sequence[Sequence[Fraction | int]]) -> AltForm:
    """The degree-2 form ``sum_{i<j} h[i][j] lambda_i ^ lambda_j`` from an
    antisymmetric 2q x 2q pairing matrix."""
    n = 2 * q
    if len(h) != n or any(len(row) != n for row in h):
        raise ValueError("pairing matrix must be 2q x 2q")
    for i in range(n):
        for j in range(n):
            if Fraction(h[i][j]) != -Fraction(h[j][i]):
                raise ValueError("pairing matrix must be antisymmetric")
    terms = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = Fraction(h[i][j])
            if c:
                terms[(i + 1, j + 1)] = c
    return AltForm(q, terms)


def standard_symplectic_matrix(q: int) -> tuple[tuple[Fraction, ...], ...]:
    """Block-diagonal pairing with +1 on the (2i-1, 2i) positions."""
    n = 2 * q
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(q):
        rows[2 * i][2 * i + 1] = Fraction(1)
        rows[2 * i + 1][2 * i] = Fraction(-1)
    return tuple(tuple(row) for row in rows)


def standard_symplectic_form(q: int) -> AltForm:
    """``lambda_12 + lambda_34 + ...``; its q-th wedge power over q! is the
    top basis form."""
    return theta_form(q, standard_symplectic_matrix(q))
