#!/usr/bin/env python3
"""
Tests for geohom.geocoding: word decomposition, homology coordinates,
Eisenstein pairings, Hecke operators and the two involutions.
"""

import os
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the project root to the Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from geohom.constants import FULL_SWEEP_ENV
from geohom.exactmath import IDENTITY, T, Mat
from geohom.exceptions import InvalidInput
from geohom.geocoding import (INCONCLUSIVE, REFUTED, cusp_loop_relation, decompose, eisenstein_pairing, evaluate,
                              fricke, fricke_vector, geodesic_class, hecke_class, hecke_operator,
                              hecke_orbit_products, hecke_representatives, homology_of, homology_vector, iota,
                              iota_vector, level_context, membership_refutation, pairing_of_vector, word_length)
from geohom.modcurve import zagier_generators
from geohom.quadforms import QuadForm

GAMMA_I = Mat(26, -35, 55, -74)
GAMMA_J = Mat(29, 10, 55, 19)
PRIMES_TO_200 = [p for p in range(2, 200) if all(p % q for q in range(2, p))]


def random_word(rng: random.Random, names, length: int = 8):
    return [(rng.choice(names), rng.choice([-2, -1, 1, 2])) for _ in range(length)]


def test_decompose_principal_geodesic():
    ctx = level_context(11)
    word = decompose(GAMMA_I, ctx.fs, ctx.gens)
    assert word == [('h2', -1), ('h1', 1), ('T', -1), ('h2', 1), ('T', -1)]
    assert evaluate(word, ctx.gens) == GAMMA_I
    assert word_length(word) == 5
    assert homology_vector(word, ctx.basis) == [-2, 1, 0]


def test_decompose_identity_and_generators():
    ctx = level_context(11)
    assert decompose(IDENTITY, ctx.fs) == []
    assert decompose(T.power(-3), ctx.fs) == [('T', -3)]
    for name, m in ctx.gens.all().items():
        assert evaluate(decompose(m, ctx.fs), ctx.gens) == m


def test_decompose_rejects_outside_gamma0():
    ctx = level_context(11)
    with pytest.raises(InvalidInput):
        decompose(Mat(4, -1, 9, -2), ctx.fs)


@pytest.mark.parametrize('p', [2, 3, 5, 7, 11, 13, 17, 19, 23])
def test_homology_is_well_defined(p):
    rng = random.Random(p)
    ctx = level_context(p)
    for _ in range(25):
        word = random_word(rng, ctx.gens.names)
        gamma = evaluate(word, ctx.gens)
        assert evaluate(decompose(gamma, ctx.fs, ctx.gens), ctx.gens) == gamma
        assert homology_of(gamma, ctx) == homology_vector(word, ctx.basis)


@pytest.mark.parametrize('p', [11, 23, 59])
def test_long_words_round_trip(p):
    rng = random.Random(1000 + p)
    ctx = level_context(p)
    for _ in range(1000):
        word = random_word(rng, ctx.gens.names, rng.randint(1, 50))
        gamma = evaluate(word, ctx.gens)
        assert evaluate(decompose(gamma, ctx.fs, ctx.gens), ctx.gens) == gamma
        assert homology_of(gamma, ctx) == homology_vector(word, ctx.basis)


def test_known_homology_classes():
    ctx = level_context(11)
    assert homology_of(GAMMA_I, ctx) == [-2, 1, 0]
    assert homology_of(fricke(T, 11), ctx) == [-1, 0, 0]
    assert homology_of(iota(GAMMA_I), ctx) == [2, 0, -1]
    assert homology_of(Mat(1, -1, 11, -10), ctx) == [0, 0, 0]


def test_geodesic_class():
    assert geodesic_class(QuadForm(11, -20, 7), 11) == [-2, 1, 0]


def test_eisenstein_pairing_values():
    assert eisenstein_pairing(T, 11) == 1
    assert eisenstein_pairing(Mat(7, -2, 11, -3), 11) == Fraction(1, 5)
    assert eisenstein_pairing(Mat(8, -3, 11, -4), 11) == Fraction(1, 5)
    assert eisenstein_pairing(GAMMA_I, 11) == Fraction(-9, 5)
    assert eisenstein_pairing(GAMMA_J, 11) == Fraction(9, 5)


def test_eisenstein_pairing_rejects_outside_gamma0():
    with pytest.raises(InvalidInput):
        eisenstein_pairing(Mat(4, -1, 9, -2), 11)


@pytest.mark.parametrize('p', [5, 7, 11, 13, 23])
def test_pairing_routes_agree(p):
    rng = random.Random(100 + p)
    ctx = level_context(p)
    for _ in range(25):
        gamma = evaluate(random_word(rng, ctx.gens.names), ctx.gens)
        assert eisenstein_pairing(gamma, p) == pairing_of_vector(homology_of(gamma, ctx), ctx.basis)


def test_pairing_vanishes_on_torsion():
    ctx = level_context(13)
    for m in ctx.gens.elliptic.values():
        assert eisenstein_pairing(m, 13) == 0


def test_hecke_representatives():
    assert hecke_representatives(2, 11) == [(1, 0, 0, 2), (1, 1, 0, 2), (2, 0, 0, 1)]
    assert len(hecke_representatives(3, 11)) == 4
    assert hecke_representatives(11, 11) == [(1, b, 0, 11) for b in range(11)]


def test_hecke_on_eisenstein_element():
    ctx = level_context(11)
    assert hecke_class(T, 2, ctx) == [3, 0, 0]
    assert hecke_class(T, 3, ctx) == [4, 0, 0]
    assert hecke_class(T, 11, ctx) == [1, 0, 0]
    assert hecke_operator([1, 0, 0], 2, ctx) == [3, 0, 0]


@pytest.mark.parametrize('p', [11, 23])
@pytest.mark.parametrize('ell', [2, 3, 5, 7])
def test_eisenstein_eigenvalue(p, ell):
    ctx = level_context(p)
    v_e = [1] + [0] * (ctx.basis.rank - 1)
    assert hecke_operator(v_e, ell, ctx) == [(ell + 1) * x for x in v_e]


def test_hecke_orbit_products_lie_in_gamma0():
    for product in hecke_orbit_products(GAMMA_I, 6, 11):
        assert product.in_gamma0(11)
    with pytest.raises(InvalidInput):
        hecke_orbit_products(GAMMA_I, 0, 11)


def test_hecke_is_eisenstein_equivariant():
    ctx = level_context(11)
    for n in (2, 3, 5):
        sigma = sum(a for a in range(1, n + 1) if n % a == 0)
        for gamma in (GAMMA_I, GAMMA_J, Mat(7, -2, 11, -3)):
            image = hecke_class(gamma, n, ctx)
            assert pairing_of_vector(image, ctx.basis) == sigma * eisenstein_pairing(gamma, 11)


def test_hecke_operators_commute():
    ctx = level_context(11)
    for i in range(ctx.basis.rank):
        v = [int(i == j) for j in range(ctx.basis.rank)]
        assert hecke_operator(hecke_operator(v, 2, ctx), 3, ctx) == hecke_operator(hecke_operator(v, 3, ctx), 2, ctx)


@pytest.mark.parametrize('p', [11, 23])
def test_hecke_is_multiplicative(p):
    ctx = level_context(p)
    for m in ctx.basis.matrices:
        v = homology_of(m, ctx)
        assert hecke_class(m, 6, ctx) == hecke_operator(hecke_operator(v, 3, ctx), 2, ctx)
    if p == 11:
        assert hecke_class(GAMMA_I, 6, ctx) == hecke_operator(hecke_operator([-2, 1, 0], 3, ctx), 2, ctx)


def test_fricke_and_iota():
    assert fricke(T, 11) == Mat(-1, 0, 11, -1)
    assert fricke(fricke(GAMMA_I, 11), 11) == GAMMA_I
    assert iota(iota(GAMMA_I)) == GAMMA_I
    with pytest.raises(InvalidInput):
        fricke(Mat(4, -1, 9, -2), 11)


def test_involutions_on_homology():
    ctx = level_context(11)
    for i in range(ctx.basis.rank):
        v = [int(i == j) for j in range(ctx.basis.rank)]
        assert fricke_vector(fricke_vector(v, ctx), ctx) == v
        assert iota_vector(iota_vector(v, ctx), ctx) == v
        assert pairing_of_vector(fricke_vector(v, ctx), ctx.basis) == -pairing_of_vector(v, ctx.basis)
        assert pairing_of_vector(iota_vector(v, ctx), ctx.basis) == -pairing_of_vector(v, ctx.basis)


def test_cusp_loop_relation():
    assert cusp_loop_relation(level_context(11)) == [-1, 0, 0]


def test_membership_refutation():
    fs = level_context(11).fs
    verdict = membership_refutation(GAMMA_I, fs)
    assert verdict.status == REFUTED and verdict.refuted
    assert verdict.t_exponent == -2
    verdict = membership_refutation(Mat(1, -1, 11, -10), fs)
    assert verdict.status == INCONCLUSIVE and not verdict.refuted


def _check_zagier_coordinates(p: int):
    ctx = level_context(p)
    if not ctx.fs.minimal:
        pytest.skip(f"Farey symbol of level {p} is not minimal")
    for m in zagier_generators(p).matrices:
        assert all(abs(x) <= 1 for x in homology_of(m, ctx))


@pytest.mark.parametrize('p', [2, 3, 5, 7, 11, 13, 17, 19, 23])
def test_zagier_coordinates_bounded(p):
    _check_zagier_coordinates(p)


@pytest.mark.skipif(not os.getenv(FULL_SWEEP_ENV), reason='set GEOHOM_FULL_SWEEP to run')
@pytest.mark.parametrize('p', PRIMES_TO_200)
def test_zagier_coordinates_bounded_all_levels(p):
    _check_zagier_coordinates(p)


if __name__ == '__main__':
    sys.exit(pytest.main([__file__, '-v']))
