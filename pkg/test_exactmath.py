#!/usr/bin/env python3
"""
Tests for geohom.exactmath: PSL2(Z) normalization, Kronecker symbols,
Dedekind sums and the Rademacher symbol.
"""

import random
import sys
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest
from sympy import jacobi_symbol, primerange

# Add the project root to the Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from geohom.exactmath import (IDENTITY, INFINITY, S, T, Cusp, Mat, dedekind_sum, dedekind_sum_direct, kronecker,
                              mobius_act, psl_normalize, rademacher_psi, sawtooth)
from geohom.exceptions import InvalidInput


def random_mat(rng: random.Random, length: int = 8) -> Mat:
    m = IDENTITY
    for _ in range(length):
        m = m * T.power(rng.randint(-4, 4)) * S
    return m


def test_psl_normalize_examples():
    assert psl_normalize(-1, 0, 0, -1) == Mat(1, 0, 0, 1)
    assert psl_normalize(-26, 35, -55, 74).as_tuple() == (26, -35, 55, -74)
    assert psl_normalize(1, -5, 0, 1).as_tuple() == (1, -5, 0, 1)


def test_psl_normalize_identifies_sign():
    rng = random.Random(1)
    for _ in range(50):
        a, b, c, d = random_mat(rng).as_tuple()
        assert psl_normalize(a, b, c, d) == psl_normalize(-a, -b, -c, -d)


def test_determinant_must_be_one():
    with pytest.raises(InvalidInput):
        psl_normalize(2, 0, 0, 1)


def test_kronecker_examples():
    assert kronecker(92, 11) == 1
    assert kronecker(-4, 7) == -1
    for a in (-7, 0, 3, 92):
        assert kronecker(a, 1) == 1


def test_kronecker_matches_jacobi_on_odd_moduli():
    for n in range(3, 200, 2):
        for a in range(-60, 60):
            assert kronecker(a, n) == int(jacobi_symbol(a % n, n))


def test_kronecker_legendre_by_squares():
    for q in primerange(3, 60):
        squares = {x * x % q for x in range(1, q)}
        for a in range(-q, 2 * q):
            expected = 0 if a % q == 0 else (1 if a % q in squares else -1)
            assert kronecker(a, q) == expected


def test_kronecker_multiplicative_in_n():
    rng = random.Random(2)
    for _ in range(2000):
        a = rng.randint(-500, 500)
        m, n = rng.randint(1, 300), rng.randint(1, 300)
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_at_two():
    assert kronecker(5, 2) == -1
    assert kronecker(17, 2) == 1
    assert kronecker(4, 2) == 0
    assert kronecker(-4, -1) == -1


def test_sawtooth():
    assert sawtooth(Fraction(1, 3)) == Fraction(-1, 6)
    assert sawtooth(Fraction(0)) == 0
    assert sawtooth(Fraction(-1, 3)) == Fraction(1, 6)
    assert sawtooth(Fraction(7, 3)) == sawtooth(Fraction(1, 3))


def test_dedekind_sum_examples():
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(0, 1) == 0
    assert dedekind_sum(7, 11) == Fraction(-3, 22)
    assert dedekind_sum(26, 55) == Fraction(-63, 110)


def test_dedekind_sum_rejects_nonpositive_c():
    with pytest.raises(InvalidInput):
        dedekind_sum(1, 0)


def test_dedekind_sum_matches_defining_sum():
    for c in range(1, 201):
        for a in range(1, c):
            assert dedekind_sum(a, c) == dedekind_sum_direct(a, c)


def test_dedekind_reciprocity():
    rng = random.Random(3)
    checked = 0
    while checked < 10000:
        a, c = rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6)
        if gcd(a, c) != 1:
            continue
        expected = Fraction(-1, 4) + (Fraction(a, c) + Fraction(c, a) + Fraction(1, a * c)) / 12
        assert dedekind_sum(a, c) + dedekind_sum(c, a) == expected
        checked += 1


def test_dedekind_sum_periodic_and_odd():
    rng = random.Random(4)
    for _ in range(500):
        c = rng.randint(1, 10 ** 5)
        a = rng.randint(-10 ** 5, 10 ** 5)
        assert dedekind_sum(a + c, c) == dedekind_sum(a, c)
        assert dedekind_sum(-a, c) == -dedekind_sum(a, c)


def test_rademacher_psi_examples():
    assert rademacher_psi(T) == 1
    assert rademacher_psi(Mat(1, 11, 0, 1)) == 11
    assert rademacher_psi(Mat(7, -2, 11, -3)) == -1
    assert rademacher_psi(Mat(0, -1, 1, 0)) == 0
    assert rademacher_psi(Mat(26, -35, 55, -74)) == 9


def test_rademacher_psi_independent_of_sign():
    rng = random.Random(5)
    for _ in range(100):
        a, b, c, d = random_mat(rng).as_tuple()
        assert rademacher_psi(psl_normalize(a, b, c, d)) == rademacher_psi(psl_normalize(-a, -b, -c, -d))


def test_rademacher_psi_is_integral():
    rng = random.Random(6)
    for _ in range(100):
        assert rademacher_psi(random_mat(rng)).denominator == 1


def test_mobius_act_examples():
    assert mobius_act(T, INFINITY) == INFINITY
    assert mobius_act(Mat(4, -3, 11, -8), Cusp(1, 1)) == Cusp(1, 3)
    assert mobius_act(IDENTITY, Cusp(-2, 7)) == Cusp(-2, 7)
    assert mobius_act(S, Cusp(0, 1)) == INFINITY


def test_mobius_act_is_group_action():
    rng = random.Random(7)
    for _ in range(200):
        m1, m2 = random_mat(rng), random_mat(rng)
        x = Cusp(rng.randint(-50, 50), rng.randint(0, 50) or 1)
        assert mobius_act(m1 * m2, x) == mobius_act(m1, mobius_act(m2, x))


def test_cusp_normalization():
    assert Cusp(2, -4) == Cusp(-1, 2)
    assert Cusp(-3, 0) == INFINITY
    with pytest.raises(InvalidInput):
        Cusp(0, 0)


def test_mat_power_and_inverse():
    m = Mat(7, -2, 11, -3)
    assert m * m.inverse() == IDENTITY
    assert m.power(3) == m * m * m
    assert m.power(-2) == m.inverse() * m.inverse()
    assert T.power(5).as_tuple() == (1, 5, 0, 1)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
