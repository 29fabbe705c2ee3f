import itertools
import math
import random
from fractions import Fraction

import pytest

from quotvol.exterior import (
    AltForm,
    evaluate_top,
    exp_even,
    standard_symplectic_form,
    standard_symplectic_matrix,
    theta_form,
    wedge,
)


def pfaffian(h):
    """Recursive Pfaffian of an antisymmetric matrix, used as an oracle."""
    n = len(h)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(1, n):
        rest = [row for i, row in enumerate(h) if i not in (0, j)]
        minor = [[row[k] for k in range(n) if k not in (0, j)] for row in rest]
        sign = -1 if j % 2 == 0 else 1  # (-1)^(j+1) for 0-based column j
        total += sign * h[0][j] * pfaffian(minor)
    return total


def random_antisymmetric(rng, q):
    n = 2 * q
    h = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-3, 3))
            h[i][j] = v
            h[j][i] = -v
    return h


def random_homogeneous(rng, q, k, density=0.5):
    terms = {}
    for key in itertools.combinations(range(1, 2 * q + 1), k):
        if rng.random() < density:
            terms[key] = Fraction(rng.randint(-3, 3))
    return AltForm(q, terms)


def test_wedge_examples():
    q = 2
    l1 = AltForm.basis(q, (1,))
    l2 = AltForm.basis(q, (2,))
    assert wedge(l1, l2) == AltForm.basis(q, (1, 2))
    assert not wedge(l1, l1)
    assert wedge(l2, l1) == AltForm(q, {(1, 2): -1})


def test_wedge_rank_mismatch():
    with pytest.raises(ValueError, match="rank mismatch"):
        wedge(AltForm.basis(1, (1,)), AltForm.basis(2, (1,)))


def test_wedge_graded_commutative_and_associative():
    rng = random.Random(5)
    for q in (2, 3, 4):
        for k1, k2 in ((1, 1), (1, 2), (2, 2), (2, 3)):
            a = random_homogeneous(rng, q, k1)
            b = random_homogeneous(rng, q, k2)
            sign = (-1) ** (k1 * k2)
            assert wedge(a, b) == wedge(b, a) * sign
        a = random_homogeneous(rng, q, 1)
        b = random_homogeneous(rng, q, 2)
        c = random_homogeneous(rng, q, 1)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_exp_even_examples():
    assert exp_even(AltForm.zero(1)) == AltForm.one(1)
    a = AltForm.basis(1, (1, 2))
    assert exp_even(a) == AltForm.one(1) + a

    q = 2
    a = AltForm.basis(q, (1, 2)) + AltForm.basis(q, (3, 4))
    # oracle: direct expansion 1 + a + a^a/2
    want = AltForm.one(q) + a + a.wedge(a) * Fraction(1, 2)
    got = exp_even(a)
    assert got == want
    assert got == AltForm.one(q) + a + AltForm.basis(q, (1, 2, 3, 4))


def test_exp_even_rejects_odd_or_constant():
    with pytest.raises(ValueError, match="even form"):
        exp_even(AltForm.basis(2, (1,)))
    with pytest.raises(ValueError, match="non-nilpotent"):
        exp_even(AltForm.one(2))


def test_exp_even_homomorphism():
    rng = random.Random(9)
    for q in (2, 3):
        a = random_homogeneous(rng, q, 2)
        b = random_homogeneous(rng, q, 2)
        assert exp_even(a).wedge(exp_even(b)) == exp_even(a + b)


def test_evaluate_top():
    q = 2
    assert evaluate_top(AltForm.basis(q, (1, 2, 3, 4))) == 1
    a = AltForm.basis(q, (1, 2)) + AltForm.basis(q, (3, 4))
    assert evaluate_top(a.wedge(a)) == 2
    assert evaluate_top(a) == 0
    assert evaluate_top(AltForm.one(0)) == 1  # rank-0 lattice: top form is the constant


def test_theta_form_examples():
    assert theta_form(1, ((0, 1), (-1, 0))) == AltForm.basis(1, (1, 2))
    sym = theta_form(2, standard_symplectic_matrix(2))
    assert sym == AltForm.basis(2, (1, 2)) + AltForm.basis(2, (3, 4))
    assert not theta_form(2, [[0] * 4 for _ in range(4)])


def test_theta_form_requires_antisymmetry():
    with pytest.raises(ValueError, match="antisymmetric"):
        theta_form(1, ((0, 1), (1, 0)))
    with pytest.raises(ValueError, match="2q x 2q"):
        theta_form(2, ((0, 1), (-1, 0)))


def test_theta_power_is_pfaffian():
    rng = random.Random(17)
    for q in (1, 2, 3):
        for _ in range(4):
            h = random_antisymmetric(rng, q)
            theta = theta_form(q, h)
            top = evaluate_top(theta.wedge_power(q) * Fraction(1, math.factorial(q)))
            assert top == pfaffian(h)
    # principally polarized case: theta^q / q! evaluates to 1
    for q in (1, 2, 3, 4):
        theta = standard_symplectic_form(q)
        assert evaluate_top(theta.wedge_power(q) * Fraction(1, math.factorial(q))) == 1


def test_component_extraction():
    q = 2
    a = AltForm.one(q) + AltForm.basis(q, (1, 2)) + AltForm.basis(q, (1, 2, 3, 4))
    assert a.component(0) == AltForm.one(q)
    assert a.component(2) == AltForm.basis(q, (1, 2))
    assert a.degrees() == {0, 2, 4}


def test_invalid_keys_rejected():
    with pytest.raises(ValueError, match="strictly increasing"):
        AltForm(2, {(2, 1): 1})
    with pytest.raises(ValueError, match="out of range"):
        AltForm(1, {(3,): 1})
