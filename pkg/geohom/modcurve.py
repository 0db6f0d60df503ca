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
Combinatorial models of Gamma0(p): genus data, Zagier's side pairings,
Farey symbols built by mediant insertion, and the generators and homology
basis read off a symbol.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from sympy import isprime

from .constants import EVEN, FAREY_INSERTION_FACTOR, HYPERBOLIC_PREFIX, ODD, ORDER2_PREFIX, ORDER3_PREFIX, PAIRED, T_NAME
from .exactmath import IDENTITY, T, Mat
from .exceptions import GeohomException, InternalDefect, InvalidInput

logger = logging.getLogger(__name__)

SideLabel = Union[str, int]


@dataclass(frozen=True)
class Gamma0Data:
    p: int
    g: int
    e2: int
    e3: int

    @property
    def rank(self) -> int:
        return 2 * self.g + 1

    @property
    def index(self) -> int:
        return self.p + 1

    @property
    def sides(self) -> int:
        return 4 * self.g + self.e2 + self.e3


def _check_prime(p: int):
    if not isprime(p):
        logger.error(f"Level {p} is not prime")
        raise InvalidInput(f"Level {p} is not prime")


def gamma0_invariants(p: int) -> Gamma0Data:
    _check_prime(p)
    if p == 2:
        e2 = 1
    else:
        e2 = 2 if p % 4 == 1 else 0
    if p == 3:
        e3 = 1
    else:
        e3 = 2 if p % 3 == 1 else 0
    genus = Fraction(p + 1, 12) - Fraction(e2, 4) - Fraction(e3, 3)
    if genus.denominator != 1:
        raise InternalDefect(f"Genus formula gave {genus} at p={p}")
    return Gamma0Data(p, int(genus), e2, e3)


@dataclass(frozen=True)
class ZagierElement:
    a: int
    a_star: int
    matrix: Mat

    @property
    def order(self) -> int:
        """2 or 3 for elliptic elements, 0 otherwise."""
        trace = abs(self.matrix.trace)
        return {0: 2, 1: 3}.get(trace, 0)


@dataclass(frozen=True)
class ZagierSet:
    p: int
    family: Tuple[ZagierElement, ...]
    T: Mat = T

    @property
    def matrices(self) -> List[Mat]:
        return [self.T] + [z.matrix for z in self.family]

    def contains(self, m: Mat) -> bool:
        return m == self.T or any(z.matrix == m for z in self.family)

    def partner(self, a: int) -> int:
        return next(z.a_star for z in self.family if z.a == a)

    @property
    def elliptic(self) -> List[ZagierElement]:
        return [z for z in self.family if z.a == z.a_star]


def zagier_generators(p: int) -> ZagierSet:
    """T and (a, -(a a* + 1)/p; p, -a*) for 0 < a < p, a a* = -1 mod p."""
    _check_prime(p)
    family = []
    for a in range(1, p):
        a_star = (-pow(a, -1, p)) % p
        family.append(ZagierElement(a, a_star, Mat(a, -(a * a_star + 1) // p, p, -a_star)))
    return ZagierSet(p, tuple(family))


@dataclass
class FareySymbol:
    """
    Fractions 0/1 = x_0 < ... < x_n = 1/1 and a label per side [x_k, x_k+1]:
    EVEN, ODD, or the index of the paired side.
    """
    p: int
    fractions: List[Fraction]
    labels: List[SideLabel]

    @property
    def n(self) -> int:
        return len(self.labels)

    def b(self, i: int) -> int:
        return self.fractions[i].denominator

    def a(self, i: int) -> int:
        return self.fractions[i].numerator

    def kind(self, k: int) -> str:
        label = self.labels[k]
        return label if isinstance(label, str) else PAIRED

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.labels) if isinstance(j, int) and i < j]

    @property
    def even_sides(self) -> List[int]:
        return [k for k in range(self.n) if self.labels[k] == EVEN]

    @property
    def odd_sides(self) -> List[int]:
        return [k for k in range(self.n) if self.labels[k] == ODD]

    def pair_sum(self, i: int, j: int) -> int:
        return self.b(i) * self.b(j) + self.b(i + 1) * self.b(j + 1)

    def even_sum(self, k: int) -> int:
        return self.b(k) ** 2 + self.b(k + 1) ** 2

    def odd_sum(self, k: int) -> int:
        return self.b(k) ** 2 + self.b(k) * self.b(k + 1) + self.b(k + 1) ** 2

    @property
    def minimal(self) -> bool:
        return all(self.pair_sum(i, j) == self.p for i, j in self.pairs)

    def mediant(self, k: int) -> Fraction:
        return Fraction(self.a(k) + self.a(k + 1), self.b(k) + self.b(k + 1))

    def side_of(self, x: Fraction) -> Optional[int]:
        """Side k with x_k <= x <= x_k+1 (the left one at a vertex)."""
        for k in range(self.n):
            if self.fractions[k] <= x <= self.fractions[k + 1]:
                return k
        return None


def index_of(fs: FareySymbol) -> int:
    return 3 * fs.n + len(fs.odd_sides)


def _label_pass(fs: FareySymbol):
    p = fs.p
    b = [x.denominator for x in fs.fractions]
    for i in range(fs.n):
        if fs.labels[i] is not None:
            continue
        if (b[i] ** 2 + b[i + 1] ** 2) % p == 0:
            fs.labels[i] = EVEN
        elif (b[i] ** 2 + b[i] * b[i + 1] + b[i + 1] ** 2) % p == 0:
            fs.labels[i] = ODD
        else:
            for j in range(fs.n):
                if j != i and fs.labels[j] is None and (b[i] * b[j] + b[i + 1] * b[j + 1]) % p == 0:
                    fs.labels[i], fs.labels[j] = j, i
                    break


def _insert_mediant(fs: FareySymbol, k: int):
    fs.fractions.insert(k + 1, fs.mediant(k))
    shifted = [label + 1 if isinstance(label, int) and label > k else label for label in fs.labels]
    fs.labels = shifted[:k] + [None, None] + shifted[k + 1:]


def farey_symbol(p: int) -> FareySymbol:
    """
    Label sides left to right (EVEN, then ODD, then least free partner); when
    sides stay free, insert the mediant of smallest denominator, leftmost on
    ties, and label again.
    """
    _check_prime(p)
    fs = FareySymbol(p, [Fraction(0), Fraction(1)], [None])
    insertions = 0
    while True:
        _label_pass(fs)
        free = [k for k in range(fs.n) if fs.labels[k] is None]
        if not free:
            break
        k = min(free, key=lambda side: (fs.b(side) + fs.b(side + 1), side))
        _insert_mediant(fs, k)
        insertions += 1
        if insertions > FAREY_INSERTION_FACTOR * p:
            logger.error(f"Farey construction at p={p} exceeded {FAREY_INSERTION_FACTOR * p} insertions")
            raise InternalDefect(f"Farey construction at p={p} did not terminate")
    logger.debug(f"p={p}: {insertions} mediants inserted, {fs.n} sides")
    if index_of(fs) != p + 1:
        logger.warning(f"p={p}: symbol index {index_of(fs)} differs from {p + 1}")
    return fs


@dataclass
class SpecialPolygonGenerators:
    """
    Independent generators read off a Farey symbol. `crossing` maps each side
    k to the generator whose translate of the polygon lies across it.
    """
    p: int
    T: Mat
    elliptic: Dict[str, Mat] = field(default_factory=dict)
    hyperbolic: Dict[str, Mat] = field(default_factory=dict)
    orders: Dict[str, int] = field(default_factory=dict)
    crossing: Dict[int, Tuple[str, int]] = field(default_factory=dict)
    odd_sides: Dict[int, str] = field(default_factory=dict)

    @property
    def names(self) -> List[str]:
        return [T_NAME] + list(self.hyperbolic) + list(self.elliptic)

    def matrix(self, name: str) -> Mat:
        if name == T_NAME:
            return self.T
        if name in self.hyperbolic:
            return self.hyperbolic[name]
        return self.elliptic[name]

    def order(self, name: str) -> int:
        return self.orders.get(name, 0)

    def all(self) -> Dict[str, Mat]:
        return {name: self.matrix(name) for name in self.names}


def _even_matrix(fs: FareySymbol, i: int) -> Mat:
    a0, b0, a1, b1 = fs.a(i), fs.b(i), fs.a(i + 1), fs.b(i + 1)
    return Mat(a1 * b1 + a0 * b0, -a0 * a0 - a1 * a1, b0 * b0 + b1 * b1, -a1 * b1 - a0 * b0)


def _odd_matrix(fs: FareySymbol, i: int) -> Mat:
    a0, b0, a1, b1 = fs.a(i), fs.b(i), fs.a(i + 1), fs.b(i + 1)
    return Mat(a1 * b1 + a0 * b1 + a0 * b0, -a0 * a0 - a0 * a1 - a1 * a1,
               b0 * b0 + b0 * b1 + b1 * b1, -a1 * b1 - a1 * b0 - a0 * b0)


def _pair_matrix(fs: FareySymbol, i: int, j: int) -> Mat:
    """Maps side i onto side j, reversing orientation."""
    ai, bi, ai1, bi1 = fs.a(i), fs.b(i), fs.a(i + 1), fs.b(i + 1)
    aj, bj, aj1, bj1 = fs.a(j), fs.b(j), fs.a(j + 1), fs.b(j + 1)
    return Mat(aj1 * bi1 + aj * bi, -ai * aj - ai1 * aj1, bi * bj + bi1 * bj1, -ai1 * bj1 - ai * bj)


def _check_shape(fs: FareySymbol):
    if fs.fractions[0] != 0 or fs.fractions[-1] != 1 or len(fs.fractions) != fs.n + 1:
        raise InvalidInput("Farey symbol must run from 0/1 to 1/1 with one label per side")
    for k in range(fs.n):
        if fs.a(k + 1) * fs.b(k) - fs.a(k) * fs.b(k + 1) != 1:
            raise InvalidInput(f"Fractions {fs.fractions[k]} and {fs.fractions[k + 1]} are not Farey neighbours")
        label = fs.labels[k]
        if isinstance(label, int):
            if not 0 <= label < fs.n or label == k or fs.labels[label] != k:
                raise InvalidInput(f"Side {k} has a broken pairing label {label}")
        elif label not in (EVEN, ODD):
            raise InvalidInput(f"Side {k} has no label")


def polygon_generators(fs: FareySymbol) -> SpecialPolygonGenerators:
    _check_shape(fs)
    gens = SpecialPolygonGenerators(fs.p, T)
    for count, (i, j) in enumerate(fs.pairs, start=1):
        name = f"{HYPERBOLIC_PREFIX}{count}"
        gens.hyperbolic[name] = _pair_matrix(fs, i, j)
        gens.crossing[j] = (name, 1)
        gens.crossing[i] = (name, -1)
    for count, k in enumerate(fs.even_sides, start=1):
        name = f"{ORDER2_PREFIX}{count}"
        gens.elliptic[name] = _even_matrix(fs, k)
        gens.orders[name] = 2
        gens.crossing[k] = (name, 1)
    for count, k in enumerate(fs.odd_sides, start=1):
        name = f"{ORDER3_PREFIX}{count}"
        gens.elliptic[name] = _odd_matrix(fs, k)
        gens.orders[name] = 3
        gens.odd_sides[k] = name
    return gens


@dataclass
class PoincareReport:
    p: int
    failures: List[str]
    minimal: bool
    generator_count: int

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {'p': self.p, 'passed': self.passed, 'minimal': self.minimal,
                'generator_count': self.generator_count, 'failures': self.failures}


def verify_poincare(fs: FareySymbol) -> PoincareReport:
    """Checks a symbol and its generators; failures are collected, never raised."""
    p = fs.p
    failures = []
    try:
        _check_shape(fs)
    except InvalidInput as e:
        return PoincareReport(p, [str(e)], False, 0)
    for k in fs.even_sides:
        if fs.even_sum(k) % p:
            failures.append(f"EVEN side {k}: b_k^2 + b_k+1^2 = {fs.even_sum(k)} is not 0 mod {p}")
    for k in fs.odd_sides:
        if fs.odd_sum(k) % p:
            failures.append(f"ODD side {k}: b_k^2 + b_k b_k+1 + b_k+1^2 = {fs.odd_sum(k)} is not 0 mod {p}")
    for i, j in fs.pairs:
        if fs.pair_sum(i, j) % p:
            failures.append(f"pairing {i}<->{j}: b_i b_j + b_i+1 b_j+1 = {fs.pair_sum(i, j)} is not 0 mod {p}")
    try:
        gens = polygon_generators(fs)
    except GeohomException as e:
        failures.append(f"generators: {e}")
        return PoincareReport(p, failures, False, 0)
    for name, m in gens.all().items():
        if not m.in_gamma0(p):
            failures.append(f"generator {name} = {m} is not in Gamma0({p})")
    for name, m in gens.elliptic.items():
        order = gens.orders[name]
        if m == IDENTITY or m.power(order) != IDENTITY:
            failures.append(f"generator {name} = {m} does not have order {order}")
    count = len(gens.names)
    if isprime(p):
        data = gamma0_invariants(p)
        if count != 1 + data.e2 + data.e3 + 2 * data.g:
            failures.append(f"{count} generators, expected {1 + data.e2 + data.e3 + 2 * data.g}")
        if len(fs.even_sides) != data.e2 or len(fs.odd_sides) != data.e3 or len(fs.pairs) != 2 * data.g:
            failures.append(f"side counts ({len(fs.even_sides)}, {len(fs.odd_sides)}, {2 * len(fs.pairs)}) "
                            f"differ from (e2, e3, 4g) = ({data.e2}, {data.e3}, {4 * data.g})")
    if index_of(fs) != p + 1:
        failures.append(f"index {index_of(fs)} differs from {p + 1}")
    report = PoincareReport(p, failures, not failures and fs.minimal, count)
    for failure in failures:
        logger.warning(f"p={p}: {failure}")
    return report


@dataclass(frozen=True)
class HomologyBasis:
    """[T, h1, ..., h2g]; index 0 is the Eisenstein element."""
    p: int
    names: Tuple[str, ...]
    matrices: Tuple[Mat, ...]

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> Optional[int]:
        return self.names.index(name) if name in self.names else None


def homology_basis(fs: FareySymbol) -> HomologyBasis:
    gens = polygon_generators(fs)
    names = [T_NAME] + list(gens.hyperbolic)
    return HomologyBasis(fs.p, tuple(names), tuple(gens.matrix(name) for name in names))


def symbol_to_json(fs: FareySymbol) -> dict:
    data = gamma0_invariants(fs.p)
    gens = polygon_generators(fs)
    return {
        'p': fs.p,
        'g': data.g,
        'e2': data.e2,
        'e3': data.e3,
        'fractions': [f"{x.numerator}/{x.denominator}" for x in fs.fractions],
        'pairings': [list(pair) for pair in fs.pairs],
        'even': fs.even_sides,
        'odd': fs.odd_sides,
        'generators': {name: list(m.as_tuple()) for name, m in gens.all().items()},
        'minimal': fs.minimal,
    }
