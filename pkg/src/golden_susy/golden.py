"""Exact arithmetic in the golden ring Z[phi] and Fibonacci-type sequences.

Elements are stored as ``a + b*phi`` with phi**2 = phi + 1.  The silver
conjugate phi' = 1 - phi = -1/phi keeps every operation inside the integers
(or rationals, when division is used), so no square roots of 5 ever appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "GoldenNumber",
    "ONE",
    "PHI",
    "SILVER",
    "PHI_FLOAT",
    "SILVER_FLOAT",
    "DivisibilityError",
    "gmul",
    "gpow",
    "conj",
    "to_real",
    "fibonacci",
    "lucas",
    "fib_divisor",
    "fib_divisor_table",
    "binet_quotient",
]

PHI_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0
SILVER_FLOAT = (1.0 - math.sqrt(5.0)) / 2.0


class DivisibilityError(ArithmeticError):
    """F_k failed to divide F_{kn}; only possible if a table was corrupted."""


@dataclass(frozen=True, slots=True)
class GoldenNumber:
    """Element ``a + b*phi`` of Z[phi] (or Q(phi) with rational coefficients)."""

    a: Rational = 0
    b: Rational = 0

    @classmethod
    def coerce(cls, x) -> GoldenNumber:
        if isinstance(x, GoldenNumber):
            return x
        if isinstance(x, Rational):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as an element of Z[phi]")

    def __repr__(self) -> str:
        return f"GoldenNumber({self.a}, {self.b})"

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*phi"

    def __add__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> GoldenNumber:
        return GoldenNumber(-self.a, -self.b)

    def __sub__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return gmul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GoldenNumber:
        if n < 0:
            return gpow(ONE / self, -n)
        return gpow(self, n)

    def __truediv__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        nrm = other.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(phi)")
        num = gmul(self, other.conj())
        return GoldenNumber(_reduce(Fraction(num.a) / nrm), _reduce(Fraction(num.b) / nrm))

    def __rtruediv__(self, other):
        return GoldenNumber.coerce(other) / self

    def conj(self) -> GoldenNumber:
        """Silver conjugate, phi -> phi' = 1 - phi."""
        return GoldenNumber(self.a + self.b, -self.b)

    def norm(self) -> Rational:
        """Field norm x * conj(x) = a**2 + a*b - b**2 (a rational number)."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def is_integral(self) -> bool:
        return Fraction(self.a).denominator == 1 and Fraction(self.b).denominator == 1

    def __float__(self) -> float:
        return to_real(self)


def _reduce(q: Fraction):
    return q.numerator if q.denominator == 1 else q


ONE = GoldenNumber(1, 0)
PHI = GoldenNumber(0, 1)
SILVER = GoldenNumber(1, -1)


def gmul(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber:
    """Product in Z[phi], reduced with phi**2 = phi + 1."""
    return GoldenNumber(x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b)


def gpow(x: GoldenNumber, n: int) -> GoldenNumber:
    """``x**n`` by square-and-multiply; ``gpow(PHI, n) == (F_{n-1}, F_n)``."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = ONE
    base = x
    while n:
        if n & 1:
            result = gmul(result, base)
        base = gmul(base, base)
        n >>= 1
    return result


def conj(x: GoldenNumber) -> GoldenNumber:
    return x.conj()


def to_real(x: GoldenNumber) -> float:
    return float(x.a) + float(x.b) * PHI_FLOAT


@lru_cache(maxsize=None)
def _fib_pair(n: int) -> tuple[int, int]:
    # (F_n, F_{n+1}); memoized in blocks so repeated calls stay linear overall
    if n == 0:
        return 0, 1
    start = (n - 1) // 256 * 256
    a, b = _fib_pair(start)
    for _ in range(n - start):
        a, b = b, a + b
    return a, b


def fibonacci(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1 (arbitrary precision)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    """L_n = phi**n + phi'**n, i.e. L_0 = 2, L_1 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    f, g = _fib_pair(n)
    # L_n = F_{n-1} + F_{n+1} = 2 F_{n+1} - F_n
    return 2 * g - f


def fib_divisor(k: int, n: int) -> int:
    """Fibonacci divisor F_n^(k) = F_{kn} / F_k, with F_n^(0) = n."""
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")
    if k == 0:
        return n
    q, r = divmod(fibonacci(k * n), fibonacci(k))
    if r:
        raise DivisibilityError(f"F_{k} does not divide F_{k * n} (remainder {r})")
    return q


def fib_divisor_table(k: int, n_max: int) -> tuple[int, ...]:
    """``(F_0^(k), ..., F_{n_max}^(k))`` by exact division F_{kn} / F_k."""
    return tuple(fib_divisor(k, n) for n in range(n_max + 1))


def binet_quotient(k: int, n: int) -> GoldenNumber:
    """(phi**(kn) - phi'**(kn)) / (phi**k - phi'**k) evaluated exactly in Z[phi].

    k = 0 is the 0/0 limit n.
    """
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")
    if k == 0:
        return GoldenNumber(n, 0)
    num = gpow(PHI, k * n) - gpow(SILVER, k * n)
    den = gpow(PHI, k) - gpow(SILVER, k)
    return num / den
