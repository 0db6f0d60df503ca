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
Binary quadratic forms of positive discriminant and the narrow class
group they realize.

Conventions used throughout:
  - Q o sigma is the form (x, y) -> Q(sigma(x, y)); reduce() returns the
    reduced form together with the sigma carrying Q to it.
  - sigma . Q := Q o sigma^-1 (act), so that gamma_Q(sigma . Q) =
    sigma gamma_Q(Q) sigma^-1.
  - A level-p form Q = (a, b, c) carries the label of the narrow class of
    (-a, b, -c).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, isqrt, prod
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import factorint, gcdex, isprime, primefactors, sqrt_mod
from sympy.ntheory.modular import solve_congruence

from .constants import COPRIME_SEARCH_START_BOUND, REDUCTION_MAX_STEPS, REPRESENTED_VALUE_START_BOUND
from .exactmath import IDENTITY, Mat, kronecker
from .exceptions import InternalDefect, InvalidInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, sigma: Mat) -> "QuadForm":
        """Q o sigma."""
        a, b, c, d = sigma.as_tuple()
        return QuadForm(self(a, c),
                        2 * self.a * a * b + self.b * (a * d + b * c) + 2 * self.c * c * d,
                        self(b, d))

    def negate(self) -> "QuadForm":
        return QuadForm(-self.a, -self.b, -self.c)

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c)

    def outer_negate(self) -> "QuadForm":
        return QuadForm(-self.a, self.b, -self.c)

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        d = self.discriminant
        a2 = 2 * abs(self.a)
        if self.b <= 0 or self.b * self.b >= d:
            return False
        if (a2 + self.b) ** 2 <= d:
            return False
        return a2 - self.b <= 0 or (a2 - self.b) ** 2 < d

    def as_list(self) -> List[int]:
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class PellUnit:
    """Doubled coordinates of a unit (u2 + v2 sqrt(d)) / 2 of norm `norm`."""
    d: int
    u2: int
    v2: int
    norm: int = 1

    @property
    def u(self) -> Fraction:
        return Fraction(self.u2, 2)

    @property
    def v(self) -> Fraction:
        return Fraction(self.v2, 2)


@dataclass(frozen=True)
class FormClass:
    fingerprint: QuadForm
    cycle: Tuple[QuadForm, ...]


@dataclass(frozen=True)
class GenusCharacter:
    """
    d = d1 d2 with d2 the factor carrying the largest prime divisor of d.
    Factors are not ordered by size: 92 gives (-4, -23) and 60 gives (12, 5).
    """
    d1: int
    d2: int

    @property
    def is_trivial(self) -> bool:
        return self.d1 == 1

    def value(self, m: int) -> int:
        return kronecker(self.d1, m)

    def __str__(self):
        return f"({self.d1},{self.d2})"


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


def is_fundamental(d: int) -> bool:
    """Positive non-square fundamental discriminant."""
    if d <= 1 or is_square(d):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def is_fundamental_negative(d: int) -> bool:
    if d >= 0:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def check_discriminant(d: int):
    if not is_fundamental(d):
        logger.error(f"{d} is not a positive fundamental discriminant")
        raise InvalidInput(f"{d} is not a positive fundamental discriminant")


def _check_form(Q: QuadForm) -> int:
    d = Q.discriminant
    if d <= 0 or is_square(d):
        raise InvalidInput(f"Form {Q} has discriminant {d}, which is not a positive non-square")
    return d


def principal_form(d: int) -> QuadForm:
    b = d % 2
    return QuadForm(1, b, (b * b - d) // 4)


def act(sigma: Mat, Q: QuadForm) -> QuadForm:
    """Left action sigma . Q = Q o sigma^-1."""
    return Q.transform(sigma.inverse())


def dilate(Q: QuadForm, p: int) -> QuadForm:
    if Q.a % p:
        raise InvalidInput(f"Form {Q} is not of level {p}")
    return QuadForm(Q.a // p, Q.b, Q.c * p)


def rho(Q: QuadForm) -> Tuple[QuadForm, Mat]:
    """One normalized reduction step (c, b', .) with b' = -b mod 2c, and its transform."""
    d = _check_form(Q)
    c = Q.c
    two_c = 2 * abs(c)
    if c * c > d:
        b_new = (-Q.b) % two_c
        if b_new > abs(c):
            b_new -= two_c
    else:
        s = isqrt(d)
        b_new = s - ((s + Q.b) % two_c)
    shift = (b_new + Q.b) // (2 * c)
    sigma = Mat(0, -1, 1, shift)
    return QuadForm(c, b_new, (b_new * b_new - d) // (4 * c)), sigma


def reduce(Q: QuadForm) -> Tuple[QuadForm, Mat]:
    """Reduced form equivalent to Q, and sigma with Q o sigma equal to it."""
    _check_form(Q)
    sigma = IDENTITY
    steps = 0
    while not Q.is_reduced():
        Q, step = rho(Q)
        sigma = sigma * step
        steps += 1
        if steps > REDUCTION_MAX_STEPS:
            raise InternalDefect(f"Reduction of {Q} did not finish in {REDUCTION_MAX_STEPS} steps")
    return Q, sigma


def reduced_cycle(Q: QuadForm) -> List[QuadForm]:
    start = reduce(Q)[0]
    cycle = [start]
    current = rho(start)[0]
    while current != start:
        cycle.append(current)
        current = rho(current)[0]
        if len(cycle) > REDUCTION_MAX_STEPS:
            raise InternalDefect(f"Cycle of {start} did not close")
    return cycle


def form_class(Q: QuadForm) -> FormClass:
    cycle = reduced_cycle(Q)
    return FormClass(min(cycle), tuple(cycle))


def equivalent(Q1: QuadForm, Q2: QuadForm) -> bool:
    if Q1.discriminant != Q2.discriminant:
        raise InvalidInput(f"Forms {Q1} and {Q2} have different discriminants")
    return reduce(Q2)[0] in reduced_cycle(Q1)


def _coprime_vectors(bound: int) -> Iterator[Tuple[int, int]]:
    for x in range(-bound, bound + 1):
        for y in range(0, bound + 1):
            if gcd(x, y) == 1 and (y > 0 or x == 1):
                yield x, y


def _basis_with_first_column(x: int, y: int) -> Mat:
    u, v, g = (int(z) for z in gcdex(x, y))
    return Mat(x, -v * g, y, u * g)


def coprime_equivalent(Q: QuadForm, m: int) -> QuadForm:
    """A form equivalent to Q whose first coefficient is coprime to m."""
    if gcd(Q.a, m) == 1:
        return Q
    bound = COPRIME_SEARCH_START_BOUND
    while True:
        for x, y in _coprime_vectors(bound):
            value = Q(x, y)
            if value != 0 and gcd(value, m) == 1:
                return Q.transform(_basis_with_first_column(x, y))
        bound *= 2
        if bound > REDUCTION_MAX_STEPS:
            raise InternalDefect(f"No value of {Q} coprime to {m} found")


def compose(Q1: QuadForm, Q2: QuadForm) -> QuadForm:
    """Dirichlet composition through concordant forms; the result is reduced."""
    d = Q1.discriminant
    if Q2.discriminant != d:
        raise InvalidInput(f"Forms {Q1} and {Q2} have different discriminants")
    Q2 = coprime_equivalent(Q2, Q1.a)
    a1, a2 = Q1.a, Q2.a
    solution = solve_congruence((Q1.b, 2 * abs(a1)), (Q2.b, 2 * abs(a2)))
    if solution is None:
        logger.error(f"Middle coefficients of {Q1} and {Q2} cannot be aligned")
        raise InternalDefect(f"CRT alignment failed for {Q1} and {Q2}")
    B = int(solution[0])
    numerator = B * B - d
    if numerator % (4 * a1 * a2):
        raise InternalDefect(f"Composition of {Q1} and {Q2} is not integral")
    return reduce(QuadForm(a1 * a2, B, numerator // (4 * a1 * a2)))[0]


def enumerate_reduced_forms(d: int) -> List[QuadForm]:
    forms = []
    s = isqrt(d)
    for b in range(d % 2 or 2, s + 1, 2):
        n = (d - b * b) // 4
        if n == 0:
            continue
        for a in sorted(_divisors(n)):
            for signed in (a, -a):
                Q = QuadForm(signed, b, -n // signed)
                if Q.is_reduced():
                    forms.append(Q)
    return forms


def _divisors(n: int) -> List[int]:
    divisors = [1]
    for q, e in factorint(n).items():
        divisors = [x * q ** k for x in divisors for k in range(e + 1)]
    return divisors


class NarrowClassGroup:
    """
    Proper-equivalence classes of forms of discriminant d.

    Index 0 is always the principal class; the other classes follow in
    increasing order of their fingerprints. The composition table is built
    on first use.
    """

    def __init__(self, d: int):
        check_discriminant(d)
        self.d = d
        self.logger = logging.getLogger(__name__)
        self._index: Dict[QuadForm, int] = {}
        cycles = []
        seen = set()
        for Q in enumerate_reduced_forms(d):
            if Q in seen:
                continue
            cycle = reduced_cycle(Q)
            seen.update(cycle)
            cycles.append(FormClass(min(cycle), tuple(cycle)))
        principal = reduce(principal_form(d))[0]
        cycles.sort(key=lambda fc: (principal not in fc.cycle, fc.fingerprint))
        self.classes: List[FormClass] = cycles
        for i, fc in enumerate(cycles):
            for Q in fc.cycle:
                self._index[Q] = i
        self.logger.debug(f"d={d}: h+={len(cycles)}, cycle lengths {[len(fc.cycle) for fc in cycles]}")

    @property
    def h_plus(self) -> int:
        return len(self.classes)

    @property
    def identity(self) -> int:
        return 0

    def representative(self, i: int) -> QuadForm:
        return self.classes[i].fingerprint

    def class_of(self, Q: QuadForm) -> int:
        if Q.discriminant != self.d:
            raise InvalidInput(f"Form {Q} does not have discriminant {self.d}")
        return self._index[reduce(Q)[0]]

    @cached_property
    def table(self) -> List[List[int]]:
        return [[self.class_of(compose(self.representative(i), self.representative(j)))
                 for j in range(self.h_plus)] for i in range(self.h_plus)]

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self.class_of(self.representative(i).inverse())

    def to_json(self) -> dict:
        return {
            'd': self.d,
            'h_plus': self.h_plus,
            'cycles': [[Q.as_list() for Q in fc.cycle] for fc in self.classes],
            'table': self.table,
        }


@lru_cache(maxsize=4096)
def narrow_class_group(d: int) -> NarrowClassGroup:
    return NarrowClassGroup(d)


def class_of(group: NarrowClassGroup, Q: QuadForm) -> int:
    return group.class_of(Q)


def pell_minus(d: int) -> PellUnit:
    """
    Fundamental unit (t + u sqrt(d)) / 2 with t^2 - d u^2 = +-4, from the
    period of the continued fraction of (b + sqrt(d)) / 2.
    """
    check_discriminant(d)
    s = isqrt(d)
    b = s if s % 2 == d % 2 else s - 1
    P, Q = b, 2
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    length = 0
    while True:
        a = (P + s) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        length += 1
        P = a * Q - P
        Q = (d - P * P) // Q
        if (P, Q) == (b, 2):
            break
    # after the loop p_cur, q_cur are the (l-1)th convergent, q_prev the (l-2)th
    t, u = p_cur + q_prev, q_cur
    norm = 1 if length % 2 == 0 else -1
    if t * t - d * u * u != 4 * norm:
        raise InternalDefect(f"Continued fraction of ({b} + sqrt({d}))/2 gave a non-unit")
    logger.debug(f"d={d}: period {length}, fundamental unit ({t} + {u} sqrt(d))/2")
    return PellUnit(d, t, u, norm)


def pell_plus(d: int) -> PellUnit:
    unit = pell_minus(d)
    if unit.norm == 1:
        return unit
    t, u = unit.u2, unit.v2
    return PellUnit(d, (t * t + d * u * u) // 2, t * u, 1)


def has_norm_minus_one_unit(d: int) -> bool:
    return pell_minus(d).norm == -1


def j_form(d: int) -> QuadForm:
    b = d % 2
    return QuadForm(-1, b, (d - b * b) // 4)


def j_class(d: int) -> FormClass:
    return form_class(j_form(d))


def j_in_principal_genus(d: int) -> bool:
    """J is a square in the narrow class group; true whenever J = I."""
    return all(v == 1 for v in genus_signature(j_form(d)))


def prime_discriminants(d: int) -> List[int]:
    """d split into prime discriminants: the even one first, then odd ones by increasing prime."""
    odd = [q if q % 4 == 1 else -q for q in primefactors(d) if q != 2]
    parts = []
    if d % 2 == 0:
        parts.append(d // prod(odd))
    return parts + odd


def genus_characters(d: int) -> List[GenusCharacter]:
    """
    All factorizations d = d1 d2 into fundamental discriminants, trivial one
    first. The factor carrying the largest prime is always d2.
    """
    return list(_genus_characters(d))


@lru_cache(maxsize=None)
def _genus_characters(d: int) -> Tuple[GenusCharacter, ...]:
    check_discriminant(d)
    parts = prime_discriminants(d)
    return tuple(GenusCharacter(prod(subset), d // prod(subset))
                 for size in range(len(parts))
                 for subset in combinations(parts[:-1], size))


def represented_coprime_value(Q: QuadForm, modulus: int) -> int:
    """Primitively represented m coprime to modulus: least |m| in the first search box holding one, positive on ties."""
    bound = REPRESENTED_VALUE_START_BOUND
    while True:
        values = [Q(x, y) for x, y in _coprime_vectors(bound)]
        values = [m for m in values if gcd(m, modulus) == 1]
        if values:
            return min(values, key=lambda m: (abs(m), m < 0))
        bound *= 2


def genus_signature(Q: QuadForm) -> Tuple[int, ...]:
    d = Q.discriminant
    m = represented_coprime_value(Q, 2 * d)
    return tuple(chi.value(m) for chi in _genus_characters(d) if not chi.is_trivial)


def sqrt_mod_4p(d: int, p: int) -> Optional[int]:
    """Least r >= 0 with r^2 = d mod 4p and r = d mod 2, or None when p is inert."""
    if not isprime(p):
        raise InvalidInput(f"{p} is not prime")
    if d % p == 0:
        logger.error(f"p={p} ramifies in discriminant {d}")
        raise InvalidInput(f"p={p} divides d={d}")
    if p == 2:
        roots = [r for r in (1, 3) if (r * r - d) % 8 == 0]
        return min(roots) if roots else None
    if kronecker(d, p) != 1:
        return None
    roots = sqrt_mod(d % p, p, all_roots=True)
    return min(int(x) if int(x) % 2 == d % 2 else int(x) + p for x in roots)


def _check_root(d: int, p: int, r: int):
    if r is None or (r * r - d) % (4 * p) or (r - d) % 2:
        raise InvalidInput(f"r={r} is not a square root of {d} mod {4 * p}")


def p_ideal_form(d: int, p: int, r: int) -> QuadForm:
    _check_root(d, p, r)
    return QuadForm(p, r, (r * r - d) // (4 * p))


def gamma_Q(Q: QuadForm, p: int, r: Optional[int] = None) -> Mat:
    """The automorph ((u + bv), 2cv; -2av, u - bv) of Q from the least Pell solution."""
    if Q.a % p:
        raise InvalidInput(f"Form {Q} is not of level {p}: {p} does not divide {Q.a}")
    if r is not None and (Q.b - r) % (2 * p):
        raise InvalidInput(f"Form {Q} is not of level {p}: b is not {r} mod {2 * p}")
    unit = pell_plus(Q.discriminant)
    u2, v2 = unit.u2, unit.v2
    return Mat((u2 + Q.b * v2) // 2, Q.c * v2, -Q.a * v2, (u2 - Q.b * v2) // 2)


def level_label(group: NarrowClassGroup, Q: QuadForm) -> int:
    """Narrow class labelling the level-p form Q."""
    return group.class_of(Q.outer_negate())


def level_representative(F: QuadForm, p: int, r: int) -> QuadForm:
    """Level-p form (a, b, c), b = r mod 2p, whose label is the class of F."""
    vectors = [(1, 0)] + [(x, 1) for x in range(p)]
    for x, y in vectors:
        if F(x, y) % p:
            continue
        G = F.transform(_basis_with_first_column(x, y))
        if (G.b - r) % (2 * p) == 0:
            return G.outer_negate()
    logger.error(f"No level-{p} representative found for {F}")
    raise InternalDefect(f"No level-{p} representative with b = {r} mod {2 * p} for {F}")


def level_p_classes(d: int, p: int, r: Optional[int] = None) -> List[Tuple[FormClass, QuadForm]]:
    """One level-p representative per narrow class, in the order of the class group."""
    group = narrow_class_group(d)
    if r is None:
        r = sqrt_mod_4p(d, p)
        if r is None:
            raise InvalidInput(f"p={p} is inert in discriminant {d}")
    _check_root(d, p, r)
    return [(fc, level_representative(fc.fingerprint, p, r)) for fc in group.classes]


def discriminant_family(p: int, limit: int) -> List[int]:
    """Fundamental d <= limit where p splits and both J and A_p lie outside the principal genus."""
    if p == 2 or not isprime(p):
        raise InvalidInput(f"{p} is not an odd prime")
    family = []
    for d in range(5, limit + 1):
        if d % p == 0 or not is_fundamental(d) or kronecker(d, p) != 1:
            continue
        if j_in_principal_genus(d):
            continue
        r = sqrt_mod_4p(d, p)
        if all(value == 1 for value in genus_signature(p_ideal_form(d, p, r))):
            continue
        family.append(d)
    return family


def family_generator(p: int, limit: int) -> Iterator[Tuple[int, int, int, int]]:
    """
    Discriminants from n^2 + p = d m^2: yields (n, d, m, q) with q a prime
    = 3 mod 4 dividing d, d <= limit. The element n + m sqrt(d) has norm -p.
    """
    if p == 2 or not isprime(p):
        raise InvalidInput(f"{p} is not an odd prime")
    for n in range(1, isqrt(limit) + 1):
        if n % p == 0:
            continue
        N = n * n + p
        core = prod(q for q, e in factorint(N).items() if e % 2)
        square = N // core
        root = isqrt(square)
        if core % 4 == 1:
            d, m = core, root
        elif root % 2 == 0:
            d, m = 4 * core, root // 2
        else:
            continue
        if d <= 1 or d > limit:
            continue
        witnesses = [q for q in primefactors(d) if q % 4 == 3]
        if witnesses:
            yield n, d, m, witnesses[0]
