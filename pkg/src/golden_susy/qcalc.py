"""Golden (p,q)-calculus with bases phi**k and phi'**k.

Golden factorials, the hierarchy of entire Golden exponentials
``e_k(z) = sum_n z**n / F_n^(k)!`` and the Fibonacci-divisor derivative
``D_k f(x) = (f(phi**k x) - f(phi'**k x)) / ((phi**k - phi'**k) x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .golden import PHI_FLOAT, SILVER_FLOAT, fib_divisor

__all__ = [
    "GoldenSeries",
    "SeriesDivergence",
    "pq_number",
    "golden_bases",
    "golden_factorial",
    "golden_factorials",
    "golden_exp",
    "golden_exp_series",
    "golden_derivative_point",
    "golden_derivative_series",
    "DEFAULT_TOL",
    "MAX_TERMS",
]

DEFAULT_TOL = 1e-17
MAX_TERMS = 10_000


class SeriesDivergence(RuntimeError):
    """Series did not meet its stopping rule within ``MAX_TERMS`` terms."""


@dataclass
class GoldenSeries:
    """Truncated power series ``sum_n coeffs[n] * z**n`` at hierarchy level k.

    ``coeffs`` may hold Fractions (exact mode) or floats/complex numbers.
    ``tail_bound`` bounds the dropped remainder at the |z| it was built for.
    """

    k: int
    coeffs: list = field(default_factory=list)
    tail_bound: float = 0.0

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __len__(self) -> int:
        return len(self.coeffs)


def golden_bases(k: int) -> tuple[float, float]:
    """The pair (phi**k, phi'**k) as floats."""
    return PHI_FLOAT**k, SILVER_FLOAT**k


def pq_number(p: float, q: float, n: int) -> float:
    """``[n]_{pq} = (p**n - q**n) / (p - q)``."""
    if p == q:
        raise ValueError("degenerate bases: p == q")
    if n < 0:
        raise ValueError("n must be non-negative")
    return (p**n - q**n) / (p - q)


@lru_cache(maxsize=None)
def _factorials(k: int, n_max: int) -> tuple[int, ...]:
    out = [1]
    for n in range(1, n_max + 1):
        out.append(out[-1] * fib_divisor(k, n))
    return tuple(out)


def golden_factorial(k: int, n: int) -> int:
    """F_n^(k)! = F_1^(k) F_2^(k) ... F_n^(k), with F_0^(k)! = 1."""
    return _factorials(k, n)[n]


def golden_factorials(k: int, n_max: int) -> tuple[int, ...]:
    return _factorials(k, n_max)


def golden_exp_series(k: int, n_terms: int) -> GoldenSeries:
    """Exact coefficients 1/F_n^(k)! for n < n_terms."""
    facts = _factorials(k, max(n_terms - 1, 0))
    return GoldenSeries(k, [Fraction(1, f) for f in facts[:n_terms]])


def golden_exp(k: int, z, tol: float = DEFAULT_TOL, *, full_output: bool = False):
    """Golden exponential ``e_k(z) = sum_{n>=0} z**n / F_n^(k)!``.

    Terms are generated by the ratio ``t_n = t_{n-1} * z / F_n^(k)`` and the
    sum stops once the terms decrease monotonically and the next one is below
    ``tol * (|S| + 1e-3)``.  For real ``z`` a float is returned.

    Parameters
    ----------
    k : int
        Hierarchy level (k = 0 gives the ordinary exponential).
    z : complex
        Argument.
    tol : float
        Relative stopping tolerance.
    full_output : bool
        If true, return ``(value, tail_bound, n_terms)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    is_real = not isinstance(z, complex) and not (hasattr(z, "imag") and z.imag != 0)
    z = float(z.real) if is_real else complex(z)
    az = abs(z)
    total = 1.0 if is_real else 1.0 + 0j
    term = total
    n = 0
    while True:
        n += 1
        if n > MAX_TERMS:
            raise SeriesDivergence(f"golden_exp(k={k}, |z|={az:g}) needs more than {MAX_TERMS} terms")
        fn = fib_divisor(k, n)
        term = term * z / fn
        total += term
        ratio = az / fib_divisor(k, n + 1)
        if ratio < 1.0:
            bound = abs(term) * ratio / (1.0 - ratio)
            if bound < tol * (abs(total) + 1e-3):
                break
    if full_output:
        return total, bound, n + 1
    return total


def golden_derivative_point(k: int, f: Callable[[float], float], x: float) -> float:
    """Two-point golden derivative of ``f`` at ``x``.

    k = 0 makes both sample points coincide, so the quotient is 0/0 and a
    ValueError is raised; use ``golden_derivative_series`` there.
    """
    if k == 0:
        raise ValueError("two-point golden derivative degenerates at k = 0")
    if x == 0:
        raise ZeroDivisionError("golden derivative is singular at x = 0")
    p, q = golden_bases(k)
    return (f(p * x) - f(q * x)) / ((p - q) * x)


def golden_derivative_series(k: int, s: GoldenSeries | Sequence) -> GoldenSeries:
    """Coefficient action z**n -> F_n^(k) z**(n-1)."""
    coeffs = s.coeffs if isinstance(s, GoldenSeries) else list(s)
    tail = s.tail_bound if isinstance(s, GoldenSeries) else 0.0
    out = [fib_divisor(k, n) * c for n, c in enumerate(coeffs) if n >= 1]
    return GoldenSeries(k, out, tail)

