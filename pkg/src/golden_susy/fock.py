"""Truncated Fock-space realization of the Fibonacci-divisor oscillators.

Operators are dense ``d x d`` matrices in the basis |0;k>, ..., |d-1;k>.
Truncation corrupts the top of the basis: a product of m ladder factors is
only trusted on its leading ``d - m`` rows, which is what ``safe_rows``
records.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .golden import PHI_FLOAT, fib_divisor, fib_divisor_table, lucas

__all__ = [
    "FockOperator",
    "SpectrumTable",
    "CutoffError",
    "InvalidLevelError",
    "ladder_ops",
    "number_op",
    "fib_divisor_op",
    "hamiltonian_boson",
    "hamiltonian_fermionic",
    "spectrum_table",
    "spectrum_closed_form",
    "spectrum_recurrence_holds",
    "nonlinear_map_check",
    "max_residual",
]


class CutoffError(ValueError):
    """Requested cutoff is too small, or an adaptive cutoff hit its cap."""


class InvalidLevelError(ValueError):
    pass


@dataclass(frozen=True)
class FockOperator:
    matrix: np.ndarray
    k: int
    safe_rows: int

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def H(self) -> FockOperator:
        return FockOperator(self.matrix.conj().T, self.k, self.safe_rows)

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            # each factor eats its own boundary depth
            lost = (self.dim - self.safe_rows) + (other.dim - other.safe_rows)
            return FockOperator(self.matrix @ other.matrix, self.k, max(self.dim - lost, 0))
        return self.matrix @ other

    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).copy()


@dataclass(frozen=True)
class SpectrumTable:
    """Energy levels in units of hbar*omega/2, with the integer level kept exactly."""

    k: int
    hbar_omega: float
    exact: tuple[int, ...]
    kind: str

    @property
    def levels(self) -> np.ndarray:
        return 0.5 * self.hbar_omega * np.array([float(e) for e in self.exact])


def _check_dim(d: int, minimum: int) -> None:
    if d < minimum:
        raise CutoffError(f"cutoff d={d} too small (need d >= {minimum})")


def max_residual(lhs: np.ndarray, rhs: np.ndarray, rows: int | None = None, *, relative: bool = False) -> float:
    """Max-norm of ``lhs - rhs`` over the leading ``rows`` rows."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    if rows is not None:
        lhs = lhs[:rows]
        rhs = rhs[:rows]
    if lhs.size == 0:
        return 0.0
    res = float(np.max(np.abs(lhs - rhs)))
    if relative:
        res /= max(1.0, float(np.max(np.abs(rhs))))
    return res


def ladder_ops(k: int, d: int) -> tuple[FockOperator, FockOperator]:
    """Annihilation and creation operators with <n-1|b_k|n> = sqrt(F_n^(k))."""
    _check_dim(d, 2)
    off = np.sqrt(np.array([float(f) for f in fib_divisor_table(k, d - 1)[1:]]))
    b = np.diag(off, 1).astype(complex)
    return FockOperator(b, k, d - 1), FockOperator(b.conj().T.copy(), k, d - 1)


def number_op(d: int) -> FockOperator:
    _check_dim(d, 1)
    return FockOperator(np.diag(np.arange(d, dtype=float)).astype(complex), 0, d)


def fib_divisor_op(k: int, d: int) -> FockOperator:
    """Diagonal F_N^(k); equal to b_k^dagger b_k on every row."""
    _check_dim(d, 1)
    diag = np.array([float(f) for f in fib_divisor_table(k, d - 1)])
    return FockOperator(np.diag(diag).astype(complex), k, d)


def _levels(k: int, n_max: int, kind: str) -> tuple[int, ...]:
    f = fib_divisor_table(k, n_max + 1)
    if kind == "boson":
        return tuple(f[n] + f[n + 1] for n in range(n_max + 1))
    if kind == "fermionic":
        return tuple(f[n + 1] - f[n] for n in range(n_max + 1))
    if kind == "susy":
        return f[: n_max + 1]
    raise ValueError(f"unknown spectrum kind {kind!r}")


def spectrum_table(k: int, n_max: int, kind: str = "boson", hbar_omega: float = 1.0) -> SpectrumTable:
    """Exact level table E_0..E_{n_max} in units of hbar*omega/2.

    ``boson``: F_n + F_{n+1};  ``fermionic``: F_{n+1} - F_n (odd k only);
    ``susy``: F_n (each level n >= 1 doubly degenerate).
    """
    if kind == "fermionic" and k % 2 == 0:
        raise InvalidLevelError(f"fermionic hierarchy is defined for odd k only (got k={k})")
    return SpectrumTable(k, hbar_omega, _levels(k, n_max, kind), kind)


def hamiltonian_boson(k: int, d: int, hbar_omega: float = 1.0) -> FockOperator:
    """diag(hbar*omega/2 (F_n^(k) + F_{n+1}^(k))), built from the table (all rows exact)."""
    _check_dim(d, 2)
    lv = _levels(k, d - 1, "boson")
    return FockOperator(np.diag(0.5 * hbar_omega * np.array(lv, dtype=float)).astype(complex), k, d)


def hamiltonian_fermionic(k: int, d: int, hbar_omega: float = 1.0) -> FockOperator:
    if k % 2 == 0:
        raise InvalidLevelError(f"fermionic hierarchy is defined for odd k only (got k={k})")
    _check_dim(d, 2)
    lv = _levels(k, d - 1, "fermionic")
    return FockOperator(np.diag(0.5 * hbar_omega * np.array(lv, dtype=float)).astype(complex), k, d)


def spectrum_closed_form(k: float, n: int, hbar_omega: float = 1.0) -> float:
    """Hyperbolic closed form of E_n^(k) = hbar*omega/2 (F_n^(k) + F_{n+1}^(k)).

    Even (or non-integer, e.g. k -> 0) k:
        sinh((n + 1/2) k ln phi) / sinh(k ln phi / 2).
    Odd k, using phi'**k = -phi**(-k):
        n even: (sinh(n k ln phi) + cosh((n + 1) k ln phi)) / cosh(k ln phi)
        n odd:  (cosh(n k ln phi) + sinh((n + 1) k ln phi)) / cosh(k ln phi)
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    half = 0.5 * hbar_omega
    if k == 0:
        return half * (2 * n + 1)
    t = k * math.log(PHI_FLOAT)
    odd = float(k).is_integer() and int(k) % 2 == 1
    if not odd:
        return half * math.sinh((n + 0.5) * t) / math.sinh(0.5 * t)
    if n % 2 == 0:
        return half * (math.sinh(n * t) + math.cosh((n + 1) * t)) / math.cosh(t)
    return half * (math.cosh(n * t) + math.sinh((n + 1) * t)) / math.cosh(t)


def spectrum_recurrence_holds(k: int, n_max: int) -> bool:
    """E_{n+1} = L_k E_n + (-1)^(k-1) E_{n-1}, checked over the integers."""
    e = _levels(k, n_max, "boson")
    lk = lucas(k)
    sgn = 1 if k % 2 == 1 else -1
    return all(e[n + 1] == lk * e[n] + sgn * e[n - 1] for n in range(1, n_max))


def nonlinear_map_check(k: int, d: int) -> float:
    """Residual of b_k - b sqrt(F_N^(k)/N) over the safe rows.

    The n = 0 entry of sqrt(F_N/N) is 0/0; it multiplies the zero column of b
    and is set to 1.
    """
    _check_dim(d, 3)
    bk, _ = ladder_ops(k, d)
    b, _ = ladder_ops(0, d)
    ratio = [1.0] + [math.sqrt(Fraction(fib_divisor(k, n), n)) for n in range(1, d)]
    mapped = b.matrix @ np.diag(ratio)
    return max_residual(bk.matrix, mapped, bk.safe_rows)
