"""Fermion-boson entanglement of pure states in C^2 (x) C^d.

A pure state is handled through its two boson components (psi0, psi1) or,
equivalently, its 2 x d coefficient array ``c[f, n]``.  Concurrence is
available from the Gram determinant of (psi0, psi1), from the 2x2 minors of
``c`` and from the purity of either reduced density matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .golden import PHI_FLOAT, SILVER_FLOAT
from .qcalc import golden_exp
from .susy import SuperState

__all__ = [
    "GramForm",
    "FrobeniusReport",
    "InvalidDensityMatrix",
    "ComplexAmplitudeError",
    "as_density",
    "reduce_boson",
    "reduce_fermion",
    "purity",
    "gram_form",
    "concurrence_gram",
    "concurrence_minors",
    "concurrence_from_purity",
    "concurrence_sq_principal_minors",
    "von_neumann",
    "entropy_from_concurrence",
    "reference_concurrence",
    "reference_concurrence_fibonacci",
    "reference_entropy",
    "c_max",
    "frobenius_classify",
    "parallelogram_area",
    "area_projections",
    "coherent_concurrence_closed",
]


class InvalidDensityMatrix(ValueError):
    pass


class ComplexAmplitudeError(TypeError):
    """The area interpretation of concurrence needs real amplitudes."""


def as_density(rho, tol: float = 1e-12) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity (eigenvalues >= -1e-10)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidDensityMatrix(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidDensityMatrix("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InvalidDensityMatrix(f"trace {np.trace(rho).real!r} != 1")
    if np.min(np.linalg.eigvalsh(rho)) < -1e-10:
        raise InvalidDensityMatrix("density matrix has a negative eigenvalue")
    return rho


def _components(s) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(s, SuperState):
        return s.psi0, s.psi1
    c = np.asarray(s, dtype=complex)
    if c.ndim != 2 or c.shape[0] != 2:
        raise ValueError("expected a SuperState or a 2 x d coefficient array")
    return c[0], c[1]


def _require_normalized(psi0, psi1, tol=1e-12):
    nrm = np.vdot(psi0, psi0).real + np.vdot(psi1, psi1).real
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"state is not normalized (norm^2 = {nrm!r})")


def reduce_boson(s) -> np.ndarray:
    """rho_b = |psi0><psi0| + |psi1><psi1| (d x d)."""
    psi0, psi1 = _components(s)
    _require_normalized(psi0, psi1)
    return np.outer(psi0, psi0.conj()) + np.outer(psi1, psi1.conj())


def reduce_fermion(s) -> np.ndarray:
    """rho_f = sum_n |phi_n><phi_n| with qubits phi_n = (c_0n, c_1n) (2 x 2)."""
    psi0, psi1 = _components(s)
    _require_normalized(psi0, psi1)
    c = np.vstack([psi0, psi1])
    return c @ c.conj().T


def purity(rho) -> float:
    """tr(rho**2)."""
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))


@dataclass(frozen=True)
class GramForm:
    g00: float
    g01: complex
    g10: complex
    g11: float

    @property
    def det(self) -> float:
        return float(self.g00 * self.g11 - abs(self.g01) ** 2)


def gram_form(psi0, psi1) -> GramForm:
    psi0 = np.asarray(psi0, dtype=complex)
    psi1 = np.asarray(psi1, dtype=complex)
    g01 = complex(np.vdot(psi0, psi1))
    return GramForm(float(np.vdot(psi0, psi0).real), g01, g01.conjugate(), float(np.vdot(psi1, psi1).real))


def _clamped_sqrt(x: float) -> float:
    # Cauchy-Schwarz makes x >= 0 analytically; only round-off can push it below
    return math.sqrt(max(x, 0.0))


def concurrence_gram(psi0, psi1=None) -> float:
    """C = 2 sqrt(det <psi_i|psi_j>)."""
    if psi1 is None:
        psi0, psi1 = _components(psi0)
    return min(2.0 * _clamped_sqrt(gram_form(psi0, psi1).det), math.sqrt(2.0))


def concurrence_minors(c) -> float:
    """C = 2 sqrt(sum_{n<m} |c_0n c_1m - c_0m c_1n|**2) from all 2x2 minors."""
    c0, c1 = _components(c)
    minors = np.outer(c0, c1) - np.outer(c1, c0)
    iu = np.triu_indices(c0.size, 1)
    return 2.0 * math.sqrt(float(np.sum(np.abs(minors[iu]) ** 2)))


def concurrence_from_purity(rho) -> float:
    """C = sqrt(2) sqrt(1 - tr rho**2) (linear-entropy form)."""
    rho = as_density(rho)
    return math.sqrt(2.0) * _clamped_sqrt(1.0 - purity(rho))


def concurrence_sq_principal_minors(rho) -> float:
    """C**2 = 4 sum_{i<j} (rho_ii rho_jj - |rho_ij|**2)."""
    rho = np.asarray(rho, dtype=complex)
    dg = np.real(np.diag(rho))
    iu = np.triu_indices(dg.size, 1)
    return float(4.0 * np.sum(dg[iu[0]] * dg[iu[1]] - np.abs(rho[iu]) ** 2))


def von_neumann(rho) -> float:
    """-sum lambda log2 lambda over the spectrum of rho, with 0 log 0 = 0."""
    rho = np.asarray(rho, dtype=complex)
    lam = np.linalg.eigvalsh(rho)
    if np.min(lam) < -1e-10:
        raise InvalidDensityMatrix(f"invalid spectrum: eigenvalue {np.min(lam)!r} < 0")
    lam = lam[lam > 1e-12]
    return float(-np.sum(lam * np.log2(lam)))


def entropy_from_concurrence(c: float) -> float:
    """Binary entropy of (1 +- sqrt(1 - C**2))/2, valid for a qubit reduction."""
    if not -1e-12 <= c <= 1 + 1e-12:
        raise ValueError(f"concurrence {c!r} outside [0, 1] for a qubit reduction")
    r = math.sqrt(max(0.0, 1.0 - c * c))
    out = 0.0
    for p in ((1 + r) / 2, (1 - r) / 2):
        if p > 0:
            out -= p * math.log2(p)
    return out


def reference_concurrence(k: int) -> float:
    """2 phi**k / (1 + phi**(2k)), shared by the four reference states."""
    p = PHI_FLOAT**k
    return 2.0 * p / (1.0 + p * p)


def reference_concurrence_fibonacci(k: int) -> float:
    """The same value written as 2 (phi F_k + F_{k-1}) / (phi F_2k + F_{2k-1} + 1)."""
    from .golden import fibonacci

    def f(n):  # F_{-1} = 1
        return 1 if n == -1 else fibonacci(n)

    return 2.0 * (PHI_FLOAT * f(k) + f(k - 1)) / (PHI_FLOAT * f(2 * k) + f(2 * k - 1) + 1)


def reference_entropy(k: int) -> float:
    """log2(phi**2k + 1) - 2 phi**2k / (phi**2k + 1) log2(phi**k)."""
    p2 = PHI_FLOAT ** (2 * k)
    return math.log2(p2 + 1) - 2 * p2 / (p2 + 1) * k * math.log2(PHI_FLOAT)


def c_max(n: int) -> float:
    """Largest concurrence for a qubit (x) n-level pure state: sqrt(2 (n-1)/n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.sqrt(2.0 * (n - 1) / n)


@dataclass(frozen=True)
class FrobeniusReport:
    frobenius_norm_sq: float
    concurrence: float
    c_max: float
    shell_position: float
    concurrence_sq_minors: float

    @property
    def separable(self) -> bool:
        return self.concurrence < 1e-12

    def as_dict(self) -> dict:
        return {
            "frobenius_norm_sq": self.frobenius_norm_sq,
            "concurrence": self.concurrence,
            "c_max": self.c_max,
            "shell_position": self.shell_position,
            "concurrence_sq_minors": self.concurrence_sq_minors,
        }


def frobenius_classify(rho) -> FrobeniusReport:
    """Place a reduced density matrix in the shell 1/sqrt(n) <= ||rho||_F <= 1."""
    rho = as_density(rho)
    fn2 = float(np.sum(np.abs(rho) ** 2))
    c = math.sqrt(2.0) * _clamped_sqrt(1.0 - fn2)
    return FrobeniusReport(fn2, c, c_max(rho.shape[0]), math.sqrt(fn2), concurrence_sq_principal_minors(rho))


def _real_vector(v) -> np.ndarray:
    arr = np.asarray(v)
    if np.iscomplexobj(arr):
        if np.any(arr.imag != 0):
            raise ComplexAmplitudeError("parallelogram area needs real amplitudes")
        arr = arr.real
    return arr.astype(float)


def parallelogram_area(a, b) -> float:
    """Area sqrt(|a|^2 |b|^2 - (a.b)^2) spanned by two real vectors."""
    a, b = _real_vector(a), _real_vector(b)
    return _clamped_sqrt(float(a @ a) * float(b @ b) - float(a @ b) ** 2)


def area_projections(a, b) -> np.ndarray:
    """Signed areas A_nm = a_n b_m - a_m b_n of the projections onto (X_n, X_m)."""
    a, b = _real_vector(a), _real_vector(b)
    return np.outer(a, b) - np.outer(b, a)


def coherent_concurrence_closed(k: int, beta: complex, family: str) -> float:
    """Closed-form concurrence of the L (or B) super-coherent states.

    Only |beta| <= 1.5 (k = 0) or |beta| <= 3 (k >= 1) is supported; outside
    that range double-precision cancellation is not controlled.
    """
    limit = 1.5 if k == 0 else 3.0
    if abs(beta) > limit:
        raise ValueError(f"|beta| = {abs(beta)} outside the supported range |beta| <= {limit} for k = {k}")
    x = abs(beta) ** 2
    if family.startswith("L"):
        p, q = PHI_FLOAT**k, SILVER_FLOAT**k
    elif family.startswith("B"):
        p, q = SILVER_FLOAT**k, PHI_FLOAT**k
    else:
        raise ValueError(f"family must be L or B, got {family!r}")
    e = lambda z: golden_exp(k, z)  # noqa: E731
    e_p, e_pp, e_1 = e(p * x), e(p * p * x), e(x)
    num = e_p * e_pp + q * x * e_1 * e_pp - p * p * x * e_p**2
    den = p * p * e_pp + p * x * e_1 + e(q * x)
    return 2.0 * abs(p) * _clamped_sqrt(num) / den
