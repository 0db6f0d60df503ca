# Copyright (C) 2024 Alexandre Mitsuru Kaihara
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""
Coding of Gamma0(p) elements as words in the special polygon generators,
their homology coordinates, and the exact Eisenstein pairing.

A word [(g1, e1), (g2, e2), ...] stands for g1^e1 g2^e2 ... .
"""

import logging
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, log
from typing import List, Optional, Tuple

from .constants import DECOMPOSE_MAX_STEPS, ODD, T_NAME
from .exactmath import IDENTITY, INFINITY, T, Cusp, Mat, mobius_act, rademacher_psi
from .exceptions import InternalDefect, InvalidInput
from .modcurve import (FareySymbol, HomologyBasis, SpecialPolygonGenerators, farey_symbol, homology_basis,
                       polygon_generators)
from .quadforms import QuadForm, gamma_Q

logger = logging.getLogger(__name__)

Word = List[Tuple[str, int]]
HomologyVector = List[int]

REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

_ZERO = Cusp(0, 1)
_ONE = Cusp(1, 1)


@dataclass(frozen=True)
class LevelContext:
    """Symbol, generators and homology basis of one level, built once."""
    p: int
    fs: FareySymbol
    gens: SpecialPolygonGenerators
    basis: HomologyBasis


@lru_cache(maxsize=64)
def level_context(p: int) -> LevelContext:
    fs = farey_symbol(p)
    return LevelContext(p, fs, polygon_generators(fs), homology_basis(fs))


def _check_level(gamma: Mat, p: int):
    if not gamma.in_gamma0(p):
        logger.error(f"{gamma} is not in Gamma0({p})")
        raise InvalidInput(f"{gamma} is not in Gamma0({p})")


def _reduce_exponent(exponent: int, order: int) -> int:
    if order == 0:
        return exponent
    exponent %= order
    return exponent - order if 2 * exponent > order else exponent


def _append(word: Word, name: str, exponent: int, order: int):
    if word and word[-1][0] == name:
        exponent += word.pop()[1]
    exponent = _reduce_exponent(exponent, order)
    if exponent:
        word.append((name, exponent))


def evaluate(word: Word, gens: SpecialPolygonGenerators) -> Mat:
    result = IDENTITY
    for name, exponent in word:
        result = result * gens.matrix(name).power(exponent)
    return result


def word_length(word: Word) -> int:
    return sum(abs(exponent) for _, exponent in word)


def decompose(gamma: Mat, fs: FareySymbol, gens: Optional[SpecialPolygonGenerators] = None) -> Word:
    """
    Peel generators off gamma by following the Farey triangle h(oo, 0, 1):
    leading T-powers move it into the strip 0 <= Re z <= 1, and a triangle
    under a side of the symbol crosses that side's pairing.
    """
    _check_level(gamma, fs.p)
    gens = gens or polygon_generators(fs)
    word: Word = []
    h = gamma
    for _ in range(DECOMPOSE_MAX_STEPS):
        vertices = [mobius_act(h, INFINITY), mobius_act(h, _ZERO), mobius_act(h, _ONE)]
        finite = [v.as_fraction() for v in vertices if not v.is_infinity]
        lo, hi = min(finite), max(finite)
        if hi <= 0:
            k = floor(-hi) + 1
            _append(word, T_NAME, -k, 0)
            h = T.power(k) * h
        elif lo >= 1:
            k = floor(lo)
            _append(word, T_NAME, k, 0)
            h = T.power(-k) * h
        elif len(finite) < 3:
            if h != IDENTITY:
                raise InternalDefect(f"Decomposition of {gamma} left residue {h}")
            break
        else:
            side = bisect_right(fs.fractions, lo) - 1
            if side >= fs.n or hi > fs.fractions[side + 1]:
                raise InternalDefect(f"Decomposition of {gamma}: triangle {[str(v) for v in vertices]} "
                                     f"lies inside the polygon with residue {h}")
            if fs.kind(side) == ODD:
                name = gens.odd_sides[side]
                exponent = 1 if hi <= fs.mediant(side) else -1
            else:
                name, exponent = gens.crossing[side]
            _append(word, name, exponent, gens.order(name))
            h = gens.matrix(name).power(-exponent) * h
    else:
        logger.error(f"Decomposition of {gamma} exceeded {DECOMPOSE_MAX_STEPS} steps")
        raise InternalDefect(f"Decomposition of {gamma} did not terminate")
    if evaluate(word, gens) != gamma:
        raise InternalDefect(f"Word {word} does not evaluate to {gamma}")
    return word


def homology_vector(word: Word, basis: HomologyBasis) -> HomologyVector:
    """Exponent sums over T and the hyperbolic generators; torsion drops out."""
    vector = [0] * basis.rank
    for name, exponent in word:
        i = basis.index(name)
        if i is not None:
            vector[i] += exponent
    return vector


def homology_of(gamma: Mat, ctx: LevelContext) -> HomologyVector:
    return homology_vector(decompose(gamma, ctx.fs, ctx.gens), ctx.basis)


def geodesic_class(Q: QuadForm, p: int) -> HomologyVector:
    return homology_of(gamma_Q(Q, p), level_context(p))


def eisenstein_pairing(gamma: Mat, p: int) -> Fraction:
    """(Psi(gamma') - Psi(gamma)) / (p - 1) with gamma' = (a, bp; c/p, d)."""
    _check_level(gamma, p)
    twisted = Mat(gamma.a, gamma.b * p, gamma.c // p, gamma.d)
    return (rademacher_psi(twisted) - rademacher_psi(gamma)) / (p - 1)


def pairing_of_vector(v: HomologyVector, basis: HomologyBasis) -> Fraction:
    return sum((coordinate * eisenstein_pairing(m, basis.p) for coordinate, m in zip(v, basis.matrices)),
               Fraction(0))


def _int_mul(x: Tuple[int, ...], y: Tuple[int, ...]) -> Tuple[int, int, int, int]:
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def hecke_representatives(n: int, p: int) -> List[Tuple[int, int, int, int]]:
    """(a, b; 0, d) with ad = n, gcd(a, p) = 1, 0 <= b < d."""
    return [(a, b, 0, n // a) for a in range(1, n + 1) if n % a == 0 and a % p
            for b in range(n // a)]


def hecke_orbit_products(gamma: Mat, n: int, p: int) -> List[Mat]:
    """
    For alpha_i gamma = gamma_i alpha_sigma(i), one product gamma_i0 gamma_i1 ...
    per orbit of sigma. Their homology classes add up to T_n of the class of gamma.
    """
    if n < 1:
        raise InvalidInput(f"Hecke index must be positive, got {n}")
    _check_level(gamma, p)
    reps = hecke_representatives(n, p)
    adjugates = [(d, -b, 0, a) for a, b, _, d in reps]
    sigma, pieces = [], []
    for alpha in reps:
        delta = _int_mul(alpha, gamma.as_tuple())
        for j, adj in enumerate(adjugates):
            x = _int_mul(delta, adj)
            if all(entry % n == 0 for entry in x) and (x[2] // n) % p == 0:
                sigma.append(j)
                pieces.append(Mat(*(entry // n for entry in x)))
                break
        else:
            logger.error(f"No Hecke coset for {alpha} * {gamma} at n={n}, p={p}")
            raise InternalDefect(f"alpha gamma matches no coset for {gamma}, n={n}")
    products, visited = [], set()
    for start in range(len(reps)):
        if start in visited:
            continue
        product, i = IDENTITY, start
        while i not in visited:
            visited.add(i)
            product = product * pieces[i]
            i = sigma[i]
        products.append(product)
    return products


def hecke_class(gamma: Mat, n: int, ctx: LevelContext) -> HomologyVector:
    total = [0] * ctx.basis.rank
    for product in hecke_orbit_products(gamma, n, ctx.p):
        total = [x + y for x, y in zip(total, homology_of(product, ctx))]
    return total


def _apply_linear(v: HomologyVector, images: List[HomologyVector]) -> HomologyVector:
    result = [0] * len(v)
    for coordinate, image in zip(v, images):
        result = [x + coordinate * y for x, y in zip(result, image)]
    return result


def hecke_operator(v: HomologyVector, n: int, ctx: LevelContext) -> HomologyVector:
    return _apply_linear(v, [hecke_class(m, n, ctx) for m in ctx.basis.matrices])


def fricke(gamma: Mat, p: int) -> Mat:
    """Conjugation by W_p = (0, -1; p, 0)."""
    _check_level(gamma, p)
    return Mat(gamma.d, -(gamma.c // p), -p * gamma.b, gamma.a)


def iota(gamma: Mat) -> Mat:
    return Mat(gamma.a, -gamma.b, -gamma.c, gamma.d)


def fricke_vector(v: HomologyVector, ctx: LevelContext) -> HomologyVector:
    return _apply_linear(v, [homology_of(fricke(m, ctx.p), ctx) for m in ctx.basis.matrices])


def iota_vector(v: HomologyVector, ctx: LevelContext) -> HomologyVector:
    return _apply_linear(v, [homology_of(iota(m), ctx) for m in ctx.basis.matrices])


def cusp_loop_relation(ctx: LevelContext) -> HomologyVector:
    """Class of the loop around the cusp 0, W_p T W_p^-1; it is -v_E."""
    return homology_of(fricke(T, ctx.p), ctx)


@dataclass(frozen=True)
class Refutation:
    status: str
    t_exponent: int

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED


def membership_refutation(gamma: Mat, fs: FareySymbol) -> Refutation:
    """
    The T-exponent sum is a homomorphism vanishing on the subgroup generated
    by the other polygon generators, so a non-zero sum rules membership out.
    """
    gens = polygon_generators(fs)
    exponent = sum(e for name, e in decompose(gamma, fs, gens) if name == T_NAME)
    return Refutation(REFUTED if exponent else INCONCLUSIVE, exponent)


def log_height(gamma: Mat) -> float:
    """Natural log of the largest entry, reported next to word lengths."""
    return log(max(abs(x) for x in gamma.as_tuple()) or 1)


def word_to_json(word: Word) -> List[list]:
    return [[name, exponent] for name, exponent in word]
