"""Golden coherent states and supersymmetric Golden coherent states.

Bosonic states are built from their amplitude laws in the deformed Fock
basis::

    |beta/lam>   : amp_n = (beta/lam)**n / sqrt(F_n^(k)!)
    |beta'/lam>  : amp_n = F_n^(k) beta**(n-1) / (lam**n sqrt(F_n^(k)!)),  amp_0 = 0

and truncated at the smallest cutoff whose trailing amplitudes are
negligible.  Super-coherent states are assembled from these blocks and
checked against the matching block annihilation operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import CutoffError, _check_dim, ladder_ops
from .golden import PHI_FLOAT, SILVER_FLOAT, fib_divisor, fib_divisor_table
from .qcalc import golden_exp
from .susy import SuperOperator, SuperState

__all__ = [
    "CoherentVector",
    "SuperCoherentFamily",
    "NormalizerMismatch",
    "FAMILIES",
    "TAIL_EPS",
    "SUPER_TAIL_EPS",
    "MAX_DIM",
    "coherent_state",
    "derived_state",
    "adaptive_dim",
    "inner_closed",
    "scaled_inner_closed",
    "derived_plain_inner_closed",
    "derived_inner_closed",
    "super_annihilator",
    "super_annihilator_power",
    "symmetry_operator",
    "symmetry_power",
    "family_operator",
    "family_components",
    "family_norm_sq_closed",
    "super_coherent",
    "reference_states",
    "reference_combination",
]

TAIL_EPS = 5e-12
SUPER_TAIL_EPS = 1e-10
MAX_DIM = 64
FAMILIES = ("sep_up", "sep_down", "L+", "L-", "B+", "B-")


class NormalizerMismatch(ArithmeticError):
    """A closed-form normalizer disagrees with the directly summed norm."""


@dataclass(frozen=True)
class CoherentVector:
    k: int
    beta: complex
    scale: float
    derived: bool
    amps: np.ndarray
    normalized: bool = False

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm_sq_closed(self) -> float:
        """<v|v> from the Golden-exponential closed forms (unnormalized vector)."""
        if self.derived:
            return float(derived_inner_closed(self.k, self.beta, self.scale, self.scale).real)
        return float(scaled_inner_closed(self.k, self.beta, self.scale, self.scale))

    def tail_ok(self) -> bool:
        a = np.abs(self.amps) ** 2
        return bool(a[-1] < 1e-16 * a.sum())


def _plain_amps(k: int, z: complex, n: int) -> np.ndarray:
    fk = fib_divisor_table(k, n)
    out = np.zeros(n, dtype=complex)
    out[0] = 1.0
    for i in range(1, n):
        out[i] = out[i - 1] * z / math.sqrt(fk[i])
    return out


def _derived_amps(k: int, beta: complex, lam: float, n: int) -> np.ndarray:
    fk = fib_divisor_table(k, n)
    out = np.zeros(n, dtype=complex)
    if n < 2:
        return out
    g = 1.0 + 0j  # (beta/lam)**(i-1) / sqrt(F_i!)
    out[1] = fk[1] * g / lam
    for i in range(2, n):
        g = g * (beta / lam) / math.sqrt(fk[i])
        out[i] = fk[i] * g / lam
    return out


def adaptive_dim(amps: np.ndarray, eps: float) -> int:
    """Smallest d >= 2 with every amplitude from index d-1 on below eps*||amps||."""
    mag = np.abs(amps)
    nrm = float(np.linalg.norm(mag))
    if nrm == 0:
        return 2
    bad = np.nonzero(mag > eps * nrm)[0]
    if bad.size and bad[-1] >= mag.size - 1:
        raise CutoffError(f"amplitudes not negligible at the cap d={mag.size}; raise max_dim")
    last = int(bad[-1]) if bad.size else 0
    return max(2, last + 2)


def _build(k, beta, scale, derived, dim, max_dim, eps) -> np.ndarray:
    if scale == 0:
        raise ValueError("scale must be nonzero")
    make = (lambda n: _derived_amps(k, beta, scale, n)) if derived else (lambda n: _plain_amps(k, beta / scale, n))
    if dim is not None:
        _check_dim(dim, 2)
        return make(dim)
    full = make(max_dim)
    return full[: adaptive_dim(full, eps)].copy()


def coherent_state(k: int, beta: complex, normalize: bool = False, *, scale: float = 1.0,
                   dim: int | None = None, max_dim: int = MAX_DIM, eps: float = TAIL_EPS) -> CoherentVector:
    """Eigenstate |beta/scale> of b_k with eigenvalue beta/scale.

    With ``normalize`` the amplitudes are divided by sqrt(e_k(|beta/scale|**2)).
    """
    beta = complex(beta)
    amps = _build(k, beta, scale, False, dim, max_dim, eps)
    if normalize:
        amps = amps / math.sqrt(golden_exp(k, abs(beta / scale) ** 2))
    return CoherentVector(k, beta, float(scale), False, amps, normalize)


def derived_state(k: int, beta: complex, scale: float = 1.0, *, dim: int | None = None,
                  max_dim: int = MAX_DIM, eps: float = TAIL_EPS) -> CoherentVector:
    """The primed state |beta'/scale> = D_k |beta/scale> (unnormalized)."""
    beta = complex(beta)
    return CoherentVector(k, beta, float(scale), True, _build(k, beta, scale, True, dim, max_dim, eps))


# closed-form inner products -------------------------------------------------

def inner_closed(k: int, beta: complex, alpha: complex) -> complex:
    """<beta|alpha> = e_k(conj(beta) alpha)."""
    return golden_exp(k, complex(beta).conjugate() * complex(alpha))


def scaled_inner_closed(k: int, beta: complex, lam: float, mu: float) -> float:
    """<beta/lam|beta/mu> = e_k(|beta|**2 / (lam mu))."""
    return golden_exp(k, abs(beta) ** 2 / (lam * mu))


def derived_plain_inner_closed(k: int, beta: complex, lam: float, mu: float) -> complex:
    """<beta'/lam|beta/mu> = beta/(lam mu) e_k(|beta|**2/(lam mu))."""
    x = lam * mu
    return complex(beta) / x * golden_exp(k, abs(beta) ** 2 / x)


def derived_inner_closed(k: int, beta: complex, lam: float, mu: float, form: str = "golden") -> float:
    """<beta'/lam|beta'/mu> in either of its two equivalent closed forms.

    golden: (1/(lam mu)) (phi**k x e_k(x) + e_k(phi'**k x))
    silver: (1/(lam mu)) (phi'**k x e_k(x) + e_k(phi**k x)),  x = |beta|**2/(lam mu)
    """
    lm = lam * mu
    x = abs(beta) ** 2 / lm
    p, q = PHI_FLOAT**k, SILVER_FLOAT**k
    if form == "golden":
        return (p * x * golden_exp(k, x) + golden_exp(k, q * x)) / lm
    if form == "silver":
        return (q * x * golden_exp(k, x) + golden_exp(k, p * x)) / lm
    raise ValueError(f"unknown form {form!r}")


# block operators ------------------------------------------------------------

def _sign(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be +1/-1 or '+'/'-', got {sign!r}")


def super_annihilator(k: int, sign, transposed: bool = False, d: int = 16) -> SuperOperator:
    """A_{sign k} = [[phi**k b_k, sign], [0, phi'**k b_k]]; ``transposed`` moves
    the identity block below the diagonal."""
    s = _sign(sign)
    b, _ = ladder_ops(k, d)
    p, q = PHI_FLOAT**k, SILVER_FLOAT**k
    eye, z = s * np.eye(d), np.zeros((d, d))
    if transposed:
        return SuperOperator.from_blocks(p * b.matrix, z, eye, q * b.matrix, k, b.safe_rows)
    return SuperOperator.from_blocks(p * b.matrix, eye, z, q * b.matrix, k, b.safe_rows)


def _power_blocks(k, s, n, d, top, bottom, form, transposed):
    # top/bottom: bases (phi**k or phi'**k) of the diagonal blocks
    if n < 1:
        raise ValueError("power n must be >= 1")
    b, _ = ladder_ops(k, d)
    bn = np.linalg.matrix_power(b.matrix, n)
    bn1 = np.linalg.matrix_power(b.matrix, n - 1)
    fn, fn1 = fib_divisor(k, n), fib_divisor(k, n - 1)
    if form == "closed":
        ul, lr = top**n * bn, bottom**n * bn
        off = s * fn * bn1
    elif form == "split":
        c = (-1) ** (k + 1) * fn1
        ul = fn * top * bn + c * bn
        lr = fn * bottom * bn + c * bn
        off = s * fn * bn1
    else:
        raise ValueError(f"unknown form {form!r}")
    z = np.zeros((d, d))
    safe = max(d - n, 0)
    if transposed:
        return SuperOperator.from_blocks(ul, z, off, lr, k, safe)
    return SuperOperator.from_blocks(ul, off, z, lr, k, safe)


def super_annihilator_power(k: int, sign, n: int, d: int = 16, form: str = "closed",
                            transposed: bool = False) -> SuperOperator:
    """A_{sign k}**n from its closed form.

    closed: [[phi**(kn) b**n, sign F_n b**(n-1)], [0, phi'**(kn) b**n]]
    split:  F_n [[phi**k b**n, sign b**(n-1)], [0, phi'**k b**n]]
            + (-1)**(k+1) F_{n-1} [[b**n, 0], [0, b**n]]
    """
    return _power_blocks(k, _sign(sign), n, d, PHI_FLOAT**k, SILVER_FLOAT**k, form, transposed)


def symmetry_operator(k: int, sign, d: int = 16) -> SuperOperator:
    """S_{sign k} = [[phi'**k b_k, sign], [0, phi**k b_k]]; commutes with A_{-sign k}."""
    s = _sign(sign)
    b, _ = ladder_ops(k, d)
    p, q = PHI_FLOAT**k, SILVER_FLOAT**k
    return SuperOperator.from_blocks(q * b.matrix, s * np.eye(d), np.zeros((d, d)), p * b.matrix, k, b.safe_rows)


def symmetry_power(k: int, sign, n: int, d: int = 16, form: str = "closed") -> SuperOperator:
    """S_{sign k}**n; same two forms as ``super_annihilator_power`` with phi, phi' swapped."""
    return _power_blocks(k, _sign(sign), n, d, SILVER_FLOAT**k, PHI_FLOAT**k, form, False)


def family_operator(family: str, k: int, d: int) -> SuperOperator:
    """The block annihilator whose eigenstates form ``family``.

    L+/L- are eigenstates of A_{-k}/A_{+k}, B+/B- of the transposed
    A^T_{-k}/A^T_{+k}; sep_up uses A_{+k}, sep_down A^T_{+k}.
    """
    if family == "sep_up":
        return super_annihilator(k, +1, False, d)
    if family == "sep_down":
        return super_annihilator(k, +1, True, d)
    if family in ("L+", "L-", "B+", "B-"):
        s = 1 if family[1] == "+" else -1
        return super_annihilator(k, -s, family[0] == "B", d)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


# super-coherent families ----------------------------------------------------

def family_norm_sq_closed(family: str, k: int, beta: complex) -> float:
    """Closed-form squared norm of the unnormalized family vector."""
    x = abs(beta) ** 2
    p, q = PHI_FLOAT**k, SILVER_FLOAT**k
    if family == "sep_up":
        return golden_exp(k, x / p**2)
    if family == "sep_down":
        return golden_exp(k, x / q**2)
    if family in ("L+", "L-"):
        return p**2 * golden_exp(k, p**2 * x) + p * x * golden_exp(k, x) + golden_exp(k, q * x)
    if family in ("B+", "B-"):
        return q**2 * golden_exp(k, q**2 * x) + q * x * golden_exp(k, x) + golden_exp(k, p * x)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def family_components(family: str, k: int, beta: complex, d: int | None = None,
                      max_dim: int = MAX_DIM, eps: float = SUPER_TAIL_EPS) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized (psi0, psi1) of a family; adaptive common cutoff if d is None."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    beta = complex(beta)
    p, q = PHI_FLOAT**k, SILVER_FLOAT**k
    lam = (-1.0) ** k
    sgn = -1.0 if family.endswith("-") else 1.0

    def parts(n):
        zero = np.zeros(n, dtype=complex)
        if family == "sep_up":
            return _plain_amps(k, beta / p, n), zero
        if family == "sep_down":
            return zero, _plain_amps(k, beta / q, n)
        if family[0] == "L":
            return lam * _derived_amps(k, beta, lam, n), sgn * p * _plain_amps(k, beta / q, n)
        return sgn * q * _plain_amps(k, beta / p, n), lam * _derived_amps(k, beta, lam, n)

    if d is None:
        full0, full1 = parts(max_dim)
        d = max(adaptive_dim(full0, eps), adaptive_dim(full1, eps))
    else:
        _check_dim(d, 2)
    return parts(d)


@dataclass(frozen=True)
class SuperCoherentFamily:
    family: str
    k: int
    beta: complex
    state: SuperState
    norm_sq_closed: float
    norm_sq_direct: float
    residual: float

    @property
    def dim(self) -> int:
        return self.state.d


def super_coherent(family: str, k: int, beta: complex, d: int | None = None, *,
                   max_dim: int = MAX_DIM, eps: float = SUPER_TAIL_EPS,
                   rtol: float = 1e-8) -> SuperCoherentFamily:
    """Normalized super-coherent state of ``family`` with eigenvalue ``beta``.

    Raises NormalizerMismatch if the closed-form normalizer and the direct
    norm differ by more than ``rtol`` (relative), and CutoffError if an
    explicit ``d`` leaves a non-negligible last amplitude.
    """
    psi0, psi1 = family_components(family, k, beta, d, max_dim, eps)
    if d is not None:
        tail = max(abs(psi0[-1]), abs(psi1[-1]))
        if tail > eps * math.sqrt(np.vdot(psi0, psi0).real + np.vdot(psi1, psi1).real):
            raise CutoffError(f"cutoff d={d} fails the tail criterion for {family} at |beta|={abs(beta):g}")
    direct = float(np.vdot(psi0, psi0).real + np.vdot(psi1, psi1).real)
    closed = family_norm_sq_closed(family, k, beta)
    if abs(closed - direct) > rtol * abs(direct):
        raise NormalizerMismatch(
            f"{family} k={k} beta={beta}: closed-form norm^2 {closed!r} != direct {direct!r}")
    nrm = math.sqrt(direct)
    state = SuperState(psi0 / nrm, psi1 / nrm, k)
    op = family_operator(family, k, state.d)
    resid = float(np.linalg.norm(op.matrix @ state.vector - complex(beta) * state.vector))
    return SuperCoherentFamily(family, k, complex(beta), state, closed, direct, resid)


def reference_states(k: int, d: int = 2) -> dict[str, SuperState]:
    """The four beta -> 0 reference states L+, L-, B+, B-."""
    _check_dim(d, 2)
    p, q = PHI_FLOAT**k, SILVER_FLOAT**k
    out = {}
    for s, tag in ((1, "+"), (-1, "-")):
        psi0 = np.zeros(d, dtype=complex)
        psi1 = np.zeros(d, dtype=complex)
        psi0[1], psi1[0] = 1.0, s * p
        nl = math.sqrt(1 + p * p)
        out["L" + tag] = SuperState(psi0 / nl, psi1 / nl, k)
        psi0 = np.zeros(d, dtype=complex)
        psi1 = np.zeros(d, dtype=complex)
        psi0[0], psi1[1] = s * q, 1.0
        nb = math.sqrt(1 + q * q)
        out["B" + tag] = SuperState(psi0 / nb, psi1 / nb, k)
    return out


def reference_combination(c0: complex, c1: complex, k: int, d: int = 2, family: str = "L-") -> SuperState:
    """Normalized c0 |0, sep> + c1 |family>, annihilated by the family's operator.

    L families pair with |0, sep_up> = |0>_f|0;k>, B families with
    |0, sep_down> = |1>_f|0;k>.
    """
    if family not in ("L+", "L-", "B+", "B-"):
        raise ValueError(f"family must be one of L+, L-, B+, B-; got {family!r}")
    if c0 == 0 and c1 == 0:
        raise ValueError("(c0, c1) must not both vanish")
    ref = reference_states(k, d)[family]
    sep = np.zeros(d, dtype=complex)
    sep[0] = 1.0
    zero = np.zeros(d, dtype=complex)
    base = SuperState(sep, zero, k) if family[0] == "L" else SuperState(zero, sep, k)
    return (c0 * base + c1 * ref).normalized()

