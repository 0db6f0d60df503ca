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
Exact arithmetic primitives: PSL2(Z) matrices, cusps, Kronecker symbols,
Dedekind sums and the Rademacher symbol.

Every value here is an arbitrary-precision integer or a Fraction; nothing
is ever rounded.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, floor
from typing import Tuple, Union

from sympy import jacobi_symbol

from .exceptions import InvalidInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mat:
    """Element of PSL2(Z), stored as the representative with c > 0, or c = 0 and a > 0."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise InvalidInput(f"Determinant of ({self.a},{self.b};{self.c},{self.d}) is not 1")
        if self.c < 0 or (self.c == 0 and self.a < 0):
            object.__setattr__(self, 'a', -self.a)
            object.__setattr__(self, 'b', -self.b)
            object.__setattr__(self, 'c', -self.c)
            object.__setattr__(self, 'd', -self.d)

    def __mul__(self, other: "Mat") -> "Mat":
        return Mat(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                   self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "Mat":
        return Mat(self.d, -self.b, -self.c, self.a)

    def power(self, k: int) -> "Mat":
        result = IDENTITY
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @property
    def trace(self) -> int:
        return self.a + self.d

    def in_gamma0(self, p: int) -> bool:
        return self.c % p == 0

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"({self.a},{self.b};{self.c},{self.d})"


IDENTITY = Mat(1, 0, 0, 1)
T = Mat(1, 1, 0, 1)
S = Mat(0, -1, 1, 0)


def psl_normalize(a: int, b: int, c: int, d: int) -> Mat:
    """Canonical representative of {M, -M}; raises InvalidInput unless ad - bc = 1."""
    return Mat(a, b, c, d)


@dataclass(frozen=True)
class Cusp:
    """Point of P1(Q): reduced num/den with den >= 0; infinity is 1/0."""
    num: int
    den: int

    def __post_init__(self):
        num, den = self.num, self.den
        if num == 0 and den == 0:
            raise InvalidInput("0/0 is not a cusp")
        g = gcd(num, den)
        num, den = num // g, den // g
        if den < 0 or (den == 0 and num < 0):
            num, den = -num, -den
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    @classmethod
    def of(cls, x: Union[int, Fraction]) -> "Cusp":
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def is_infinity(self) -> bool:
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinity:
            raise InvalidInput("infinity has no rational value")
        return Fraction(self.num, self.den)

    def __str__(self):
        return "oo" if self.is_infinity else f"{self.num}/{self.den}"


INFINITY = Cusp(1, 0)


def mobius_act(m: Mat, x: Cusp) -> Cusp:
    return Cusp(m.a * x.num + m.b * x.den, m.c * x.num + m.d * x.den)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), the multiplicative extension of the Jacobi symbol to every integer n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        if a % 2 == 0:
            return 0
        n //= 2
        if a % 8 not in (1, 7):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def sawtooth(x: Fraction) -> Fraction:
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


def dedekind_sum(a: int, c: int) -> Fraction:
    """
    s(a, c) through the reciprocity law, O(log c) steps.

    Each step uses s(a, c) + s(c, a) = -1/4 + (a^2 + c^2 + 1) / (12ac)
    for coprime positive a, c, together with s(a mod c, c) = s(a, c).
    """
    if c <= 0:
        raise InvalidInput(f"Dedekind sum needs c > 0, got c = {c}")
    a %= c
    g = gcd(a, c)
    a, c = a // g, c // g
    total = Fraction(0)
    sign = 1
    while a != 0:
        total += sign * (Fraction(a * a + c * c + 1, 12 * a * c) - Fraction(1, 4))
        sign = -sign
        a, c = c % a, a
    return total


def dedekind_sum_direct(a: int, c: int) -> Fraction:
    """Defining O(c) sum; kept as an oracle for the reciprocity version."""
    if c <= 0:
        raise InvalidInput(f"Dedekind sum needs c > 0, got c = {c}")
    total = 0
    for n in range(1, c):
        r = (n * a) % c
        if r:
            total += (2 * n - c) * (2 * r - c)
    return Fraction(total, 4 * c * c)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def rademacher_psi(m: Mat) -> Fraction:
    """Rademacher symbol; sign(0) is taken to be 0."""
    if m.c == 0:
        return Fraction(m.b, m.d)
    return Fraction(m.trace, m.c) - 12 * dedekind_sum(m.a, m.c) - 3 * _sign(m.trace)
