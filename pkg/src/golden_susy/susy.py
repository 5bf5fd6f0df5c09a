"""N=2 supersymmetric block operators on the fermion (x) boson space.

The fermion index is the outer (block) index: a vector of length 2d is
``[psi0, psi1]`` with psi0 the fermion-vacuum component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import CutoffError, FockOperator, _check_dim, ladder_ops
from .golden import PHI_FLOAT, SILVER_FLOAT, fib_divisor_table, lucas

__all__ = [
    "SuperOperator",
    "SuperState",
    "BlochPoint",
    "supercharges",
    "anticommutator",
    "super_hamiltonian",
    "super_number_op",
    "super_fib_binet",
    "super_fib_table",
    "partial_trace_fermion_op",
    "super_number_state",
    "energy_ratio_iter",
]


@dataclass(frozen=True)
class SuperOperator:
    """2d x 2d operator; ``blocks[i][j]`` acts from fermion sector j to i."""

    matrix: np.ndarray
    k: int
    safe_rows: int

    @classmethod
    def from_blocks(cls, ul, ur, ll, lr, k: int, safe_rows: int) -> SuperOperator:
        return cls(np.block([[ul, ur], [ll, lr]]).astype(complex), k, safe_rows)

    @property
    def d(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def block(self, i: int, j: int) -> np.ndarray:
        d = self.d
        return self.matrix[i * d:(i + 1) * d, j * d:(j + 1) * d]

    @property
    def H(self) -> SuperOperator:
        return SuperOperator(self.matrix.conj().T, self.k, self.safe_rows)

    def safe_index(self) -> np.ndarray:
        """Row indices that are trusted in both fermion sectors."""
        s = np.arange(self.safe_rows)
        return np.concatenate([s, s + self.d])

    def __matmul__(self, other):
        if isinstance(other, SuperOperator):
            lost = (self.d - self.safe_rows) + (other.d - other.safe_rows)
            return SuperOperator(self.matrix @ other.matrix, self.k, max(self.d - lost, 0))
        if isinstance(other, SuperState):
            v = self.matrix @ other.vector
            return SuperState(v[: self.d], v[self.d:], other.k)
        return self.matrix @ other

    def __add__(self, other: SuperOperator) -> SuperOperator:
        return SuperOperator(self.matrix + other.matrix, self.k, min(self.safe_rows, other.safe_rows))

    def __sub__(self, other: SuperOperator) -> SuperOperator:
        return SuperOperator(self.matrix - other.matrix, self.k, min(self.safe_rows, other.safe_rows))

    def __mul__(self, c) -> SuperOperator:
        return SuperOperator(c * self.matrix, self.k, self.safe_rows)

    __rmul__ = __mul__

    def is_block_diagonal(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.block(0, 1)) <= atol) and np.all(np.abs(self.block(1, 0)) <= atol))


@dataclass(frozen=True)
class SuperState:
    """|Psi> = |0>_f (x) psi0 + |1>_f (x) psi1."""

    psi0: np.ndarray
    psi1: np.ndarray
    k: int = 0

    def __post_init__(self):
        p0 = np.asarray(self.psi0, dtype=complex)
        p1 = np.asarray(self.psi1, dtype=complex)
        if p0.shape != p1.shape or p0.ndim != 1:
            raise ValueError("psi0 and psi1 must be 1-d vectors of equal length")
        object.__setattr__(self, "psi0", p0)
        object.__setattr__(self, "psi1", p1)

    @classmethod
    def from_vector(cls, v, k: int = 0) -> SuperState:
        v = np.asarray(v, dtype=complex)
        d = v.size // 2
        return cls(v[:d], v[d:], k)

    @property
    def d(self) -> int:
        return self.psi0.size

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.psi0, self.psi1])

    @property
    def coefficients(self) -> np.ndarray:
        """The 2 x d array c[f, n]."""
        return np.vstack([self.psi0, self.psi1])

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def normalized(self) -> SuperState:
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return SuperState(self.psi0 / nrm, self.psi1 / nrm, self.k)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= tol

    def __add__(self, other: SuperState) -> SuperState:
        return SuperState(self.psi0 + other.psi0, self.psi1 + other.psi1, self.k)

    def __sub__(self, other: SuperState) -> SuperState:
        return SuperState(self.psi0 - other.psi0, self.psi1 - other.psi1, self.k)

    def __mul__(self, c) -> SuperState:
        return SuperState(c * self.psi0, c * self.psi1, self.k)

    __rmul__ = __mul__

    def vdot(self, other: SuperState) -> complex:
        return complex(np.vdot(self.vector, other.vector))


@dataclass(frozen=True)
class BlochPoint:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phi={self.phi} outside [0, 2 pi)")

    @classmethod
    def from_stereographic(cls, xi: complex) -> BlochPoint:
        """Inverse of xi = tan(theta/2) e^{i phi}."""
        xi = complex(xi)
        theta = 2.0 * math.atan(abs(xi))
        phi = math.atan2(xi.imag, xi.real) % (2 * math.pi) if xi != 0 else 0.0
        return cls(theta, phi)

    def stereographic(self) -> complex:
        if self.theta == math.pi:
            return complex(math.inf, 0.0)
        return math.tan(self.theta / 2) * complex(math.cos(self.phi), math.sin(self.phi))


def supercharges(k: int, d: int) -> tuple[SuperOperator, SuperOperator]:
    """Q_k = [[0, 0], [b_k, 0]] and its adjoint; both square to zero exactly."""
    b, _ = ladder_ops(k, d)
    z = np.zeros((d, d))
    q = SuperOperator.from_blocks(z, z, b.matrix, z, k, b.safe_rows)
    return q, q.H


def anticommutator(x: SuperOperator, y: SuperOperator) -> SuperOperator:
    return x @ y + y @ x


def super_fib_table(k: int, d: int) -> np.ndarray:
    """Diagonal of blockdiag(F_N^(k), F_{N+1}^(k)) as floats."""
    f = [float(v) for v in fib_divisor_table(k, d)]
    return np.array(f[:d] + f[1:d + 1])


def super_hamiltonian(k: int, d: int, hbar_omega: float = 1.0) -> SuperOperator:
    """hbar*omega/2 blockdiag(F_N^(k), F_{N+1}^(k)), exact on all 2d rows."""
    _check_dim(d, 2)
    return SuperOperator(np.diag(0.5 * hbar_omega * super_fib_table(k, d)).astype(complex), k, d)


def super_number_op(d: int) -> SuperOperator:
    """blockdiag(N, N + 1) = N_f (x) 1 + 1 (x) N."""
    _check_dim(d, 1)
    n = np.arange(d, dtype=float)
    return SuperOperator(np.diag(np.concatenate([n, n + 1])).astype(complex), 0, d)


def super_fib_binet(k: int, d: int) -> SuperOperator:
    """Binet formula evaluated on the spectrum of the super-number operator.

    The super-number operator is diagonal, so the operator function is the
    scalar ``(p**m - q**m)/(p - q)`` applied entrywise; k = 0 is the limit m.
    """
    _check_dim(d, 2)
    m = np.diag(super_number_op(d).matrix).real
    if k == 0:
        vals = m
    else:
        p, q = PHI_FLOAT**k, SILVER_FLOAT**k
        vals = (p**m - q**m) / (p - q)
    return SuperOperator(np.diag(vals).astype(complex), k, d)


def partial_trace_fermion_op(h: SuperOperator) -> FockOperator:
    """Tr_f of a block-diagonal operator: the sum of the two diagonal blocks."""
    if not h.is_block_diagonal():
        raise ValueError("partial trace over fermions requires a block-diagonal operator")
    return FockOperator(h.block(0, 0) + h.block(1, 1), h.k, h.safe_rows)


def super_number_state(n: int, k: int, point: BlochPoint, d: int) -> SuperState:
    """cos(theta/2) |0>_f|n;k> + sin(theta/2) e^{i phi} |1>_f|n-1;k>."""
    if not 1 <= n <= d - 1:
        raise CutoffError(f"super-particle number n={n} needs 1 <= n <= d-1 (d={d})")
    psi0 = np.zeros(d, dtype=complex)
    psi1 = np.zeros(d, dtype=complex)
    psi0[n] = math.cos(point.theta / 2)
    psi1[n - 1] = math.sin(point.theta / 2) * complex(math.cos(point.phi), math.sin(point.phi))
    return SuperState(psi0, psi1, k)


def energy_ratio_iter(k: int, lambda0: float, steps: int) -> list[float]:
    """Iterates lambda_{n+1} = L_k + (-1)^(k-1) / lambda_n; returns all iterates."""
    lk = lucas(k)
    sgn = 1 if k % 2 == 1 else -1
    out = [float(lambda0)]
    for i in range(steps):
        if out[-1] == 0:
            raise ZeroDivisionError(f"energy ratio iterate hit zero at step {i}")
        out.append(lk + sgn / out[-1])
    return out

