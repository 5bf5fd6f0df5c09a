"""Registry of named identity checks run by ``golden-susy verify``.

Every check returns its worst residual, the threshold it is judged against and
the number of trusted rows it looked at.  Exact (integer or Z[phi]) checks use
a zero threshold.  Float thresholds are ``base * tol / 1e-10``, so tightening
``tol`` shows which floating-point identities lose accuracy first.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import coherent as co
from . import entangle as en
from . import fock, susy
from .golden import PHI, SILVER, GoldenNumber, binet_quotient, fib_divisor, fib_divisor_table, fibonacci, gpow, lucas
from .golden import PHI_FLOAT, SILVER_FLOAT
from .qcalc import golden_derivative_point, golden_exp, golden_exp_series

__all__ = ["VerifyConfig", "CheckResult", "CHECKS", "run_checks", "report"]

DEFAULT_TOL = 1e-10
FAULTS = ("fib-table",)


@dataclass(frozen=True)
class VerifyConfig:
    tol: float = DEFAULT_TOL
    seed: int = 0
    k_max: int = 4
    d: int = 16
    hbar_omega: float = 1.0
    fault: str | None = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if self.fault is not None and self.fault not in FAULTS:
            raise ValueError(f"unknown fault {self.fault!r}; expected one of {FAULTS}")

    @property
    def scale(self) -> float:
        return self.tol / DEFAULT_TOL

    def fib_table(self, k: int, n_max: int) -> tuple[int, ...]:
        """Fibonacci-divisor table, optionally perturbed for harness testing."""
        t = list(fib_divisor_table(k, n_max))
        if self.fault == "fib-table" and k == 2 and n_max >= 5:
            t[5] += 1
        return tuple(t)

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_residual: float
    threshold: float
    safe_rows: int | None
    exact: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "exact": self.exact,
            "max_residual": self.max_residual,
            "threshold": self.threshold,
            "safe_rows": self.safe_rows,
        }


@dataclass(frozen=True)
class _Check:
    name: str
    fn: Callable
    base: float | None  # None marks an exact check
    salt: int = field(default=0)


CHECKS: dict[str, _Check] = {}


def _check(name: str, base: float | None = None):
    def deco(fn):
        CHECKS[name] = _Check(name, fn, base, len(CHECKS))
        return fn

    return deco


def _rel(a, b, rows=None) -> float:
    return fock.max_residual(a, b, rows, relative=True)


def _random_states(rng, count, d_max=12, real=False):
    out = []
    for _ in range(count):
        d = int(rng.integers(2, d_max + 1))
        c = rng.normal(size=(2, d))
        if not real:
            c = c + 1j * rng.normal(size=(2, d))
        out.append(c / np.linalg.norm(c))
    return out


def _beta_grid(rng, k, count):
    bmax = 1.5 if k == 0 else 1.0
    r = bmax * np.sqrt(rng.uniform(0, 1, count))
    return r * np.exp(1j * rng.uniform(0, 2 * np.pi, count))


# golden ring and sequences ---------------------------------------------------

@_check("triple-recurrence")
def _triple(cfg):
    worst = 0
    for k in range(9):
        f = cfg.fib_table(k, 64)
        lk, sgn = lucas(k), (-1) ** (k - 1) if k else -1
        for n in range(1, 64):
            worst = max(worst, abs(f[n + 1] - lk * f[n] - sgn * f[n - 1]))
    return worst, 65


@_check("binet-exactness")
def _binet(cfg):
    bad = 0
    for k in range(9):
        f = cfg.fib_table(k, 64)
        for n in range(65):
            bad += binet_quotient(k, n) != GoldenNumber(f[n], 0)
            if k:
                bad += fibonacci(k * n) % fibonacci(k) != 0
    return bad, 65


@_check("golden-rectangle")
def _rectangle(cfg):
    bad = 0
    for k in range(1, 13):
        bad += gpow(PHI, k) != PHI * fibonacci(k) + fibonacci(k - 1)
        bad += gpow(PHI, k) * gpow(SILVER, k) != GoldenNumber((-1) ** k, 0)
    return bad, None


# spectra --------------------------------------------------------------------

_REFERENCE_SPECTRA = {
    1: (1, 1, 2, 3, 5),
    2: (1, 3, 8, 21, 55),
    3: (1, 4, 17, 72, 305),
    4: (1, 7, 48, 329, 2255),
    5: (1, 11, 122, 1353, 15005),
}


@_check("spectra-table")
def _spectra(cfg):
    bad = 0
    for k, row in _REFERENCE_SPECTRA.items():
        bad += fock.spectrum_table(k, 5, "susy").exact[1:] != row
    return bad, None


@_check("spectrum-recurrence")
def _spectrum_rec(cfg):
    return sum(not fock.spectrum_recurrence_holds(k, 40) for k in range(9)), 41


@_check("spectrum-closed-form", 1e-12)
def _spectrum_closed(cfg):
    worst = 0.0
    for k in range(6):
        t = fock.spectrum_table(k, 20, "boson", cfg.hbar_omega)
        cf = [fock.spectrum_closed_form(k, n, cfg.hbar_omega) for n in range(21)]
        worst = max(worst, float(np.max(np.abs(np.array(cf) / t.levels - 1))))
    return worst, 21


@_check("energy-ratio-limit", 1e-10)
def _ratio(cfg):
    worst = 0.0
    for k in range(1, 7):
        lam = susy.energy_ratio_iter(k, 1.0, 80)[-1]
        worst = max(worst, abs(lam / PHI_FLOAT**k - 1))
    return worst, None


# golden calculus ------------------------------------------------------------

@_check("golden-exp-series", 1e-13)
def _gexp(cfg):
    worst = 0.0
    for z in (0.3, 1.0, -2.0, 2.5, 0.8 + 1.1j):
        worst = max(worst, abs(golden_exp(0, z) / cmath.exp(z) - 1))
    for k in range(1, 5):
        s = golden_exp_series(k, 40)
        for z in (Fraction(3, 10), Fraction(1), Fraction(-5, 2), Fraction(3)):
            ref = float(s(z))
            worst = max(worst, abs(golden_exp(k, float(z)) / ref - 1))
    return worst, None


@_check("golden-derivative-monomial", 1e-12)
def _dmono(cfg):
    worst = 0.0
    for k in range(1, 5):
        for n in range(11):
            for x in (0.7, -1.3):
                got = golden_derivative_point(k, lambda t: t**n, x)
                ref = fib_divisor(k, n) * x ** (n - 1) if n else 0.0
                worst = max(worst, abs(got - ref) / max(1.0, abs(ref)))
    return worst, None


@_check("golden-derivative-exp", 1e-12)
def _dexp(cfg):
    worst = 0.0
    for k in range(1, 5):
        for x in (0.4, 1.0, -1.7):
            got = golden_derivative_point(k, lambda t: golden_exp(k, t), x)
            worst = max(worst, abs(got / golden_exp(k, x) - 1))
    return worst, None


# Fock operators -------------------------------------------------------------

@_check("ladder-products", 1e-12)
def _ladder(cfg):
    worst, safe = 0.0, cfg.d
    for k in range(cfg.k_max + 1):
        b, bd = fock.ladder_ops(k, cfg.d)
        fn = fock.fib_divisor_op(k, cfg.d).matrix
        fn1 = np.diag([float(f) for f in fib_divisor_table(k, cfg.d)[1:]])
        worst = max(worst, _rel(bd.matrix @ b.matrix, fn), _rel((b @ bd).matrix, fn1, (b @ bd).safe_rows))
        safe = min(safe, (b @ bd).safe_rows)
    return worst, safe


@_check("nonlinear-map", 1e-12)
def _nlmap(cfg):
    worst = 0.0
    for k in range(cfg.k_max + 1):
        b, _ = fock.ladder_ops(k, cfg.d)
        worst = max(worst, fock.nonlinear_map_check(k, cfg.d) / max(1.0, float(np.max(np.abs(b.matrix)))))
    return worst, cfg.d - 1


# supersymmetry --------------------------------------------------------------

@_check("supercharge-nilpotency")
def _nilp(cfg):
    worst = 0.0
    for k in range(cfg.k_max + 1):
        q, qd = susy.supercharges(k, cfg.d)
        worst = max(worst, float(np.max(np.abs((q @ q).matrix))), float(np.max(np.abs((qd @ qd).matrix))))
    return worst, 2 * cfg.d


@_check("super-hamiltonian", 1e-12)
def _shamil(cfg):
    worst, safe = 0.0, cfg.d
    for k in range(cfg.k_max + 1):
        q, qd = susy.supercharges(k, cfg.d)
        ac = susy.anticommutator(q, qd)
        h = susy.super_hamiltonian(k, cfg.d, cfg.hbar_omega)
        rows = ac.safe_index()
        worst = max(worst, _rel((0.5 * cfg.hbar_omega * ac.matrix)[rows], h.matrix[rows]))
        safe = min(safe, ac.safe_rows)
        tr = susy.partial_trace_fermion_op(h)
        hb = fock.hamiltonian_boson(k, cfg.d, cfg.hbar_omega)
        worst = max(worst, _rel(tr.matrix, hb.matrix))
    return worst, safe


@_check("super-fib-binet", 1e-12)
def _sbinet(cfg):
    worst = 0.0
    for k in range(cfg.k_max + 1):
        got = np.diag(susy.super_fib_binet(k, cfg.d).matrix).real
        worst = max(worst, _rel(got, susy.super_fib_table(k, cfg.d)))
    return worst, 2 * cfg.d


def _bloch_points(cfg, salt):
    rng = cfg.rng(salt)
    return [susy.BlochPoint(float(t), float(p)) for t, p in zip(rng.uniform(0, np.pi, 10), rng.uniform(0, 2 * np.pi, 10))]


@_check("super-number-eigen", 1e-10)
def _sneigen(cfg):
    worst, d = 0.0, 8
    for k in range(5):
        fop = np.diag(susy.super_fib_table(k, d))
        nop = susy.super_number_op(d).matrix
        for n in range(1, 7):
            for pt in _bloch_points(cfg, 100 + 10 * k + n):
                v = susy.super_number_state(n, k, pt, d).vector
                worst = max(worst, float(np.linalg.norm(fop @ v - fib_divisor(k, n) * v)) / max(1, fib_divisor(k, n)),
                            float(np.linalg.norm(nop @ v - n * v)))
    return worst, d


@_check("super-number-concurrence", 1e-12)
def _snconc(cfg):
    worst = 0.0
    for k in range(5):
        for n in range(1, 7):
            for pt in _bloch_points(cfg, 200 + 10 * k + n):
                s = susy.super_number_state(n, k, pt, 8)
                worst = max(worst, abs(en.concurrence_gram(s) - math.sin(pt.theta)))
    return worst, None


# coherent states ------------------------------------------------------------

@_check("coherent-eigen", 1e-10)
def _coh(cfg):
    worst, dmax = 0.0, 0
    rng = cfg.rng(300)
    for k in range(4):
        for beta in _beta_grid(rng, k, 8):
            for lam in (1.0, float(rng.uniform(0.5, 2.0)) * rng.choice([-1, 1])):
                v = co.coherent_state(k, beta, scale=lam)
                b, _ = fock.ladder_ops(k, v.dim)
                r = np.linalg.norm(b.matrix @ v.amps - (beta / lam) * v.amps) / np.linalg.norm(v.amps)
                worst, dmax = max(worst, float(r)), max(dmax, v.dim)
    return worst, dmax


@_check("inner-product-closed-forms", 1e-10)
def _inner(cfg):
    worst = 0.0
    rng = cfg.rng(400)
    for k in range(5):
        for beta in _beta_grid(rng, k, 5):
            alpha = beta * 0.8 * np.exp(0.3j)
            lam, mu = float(rng.uniform(0.8, 1.6)), float(rng.uniform(0.8, 1.6)) * rng.choice([-1, 1])
            d = 48
            pb, pa = co.coherent_state(k, beta, dim=d), co.coherent_state(k, alpha, dim=d)
            sl, sm = co.coherent_state(k, beta, scale=lam, dim=d), co.coherent_state(k, beta, scale=mu, dim=d)
            dl, dm = co.derived_state(k, beta, lam, dim=d), co.derived_state(k, beta, mu, dim=d)
            pairs = [
                (np.vdot(pb.amps, pa.amps), co.inner_closed(k, beta, alpha)),
                (np.vdot(sl.amps, sm.amps), co.scaled_inner_closed(k, beta, lam, mu)),
                (np.vdot(dl.amps, sm.amps), co.derived_plain_inner_closed(k, beta, lam, mu)),
                (np.vdot(dl.amps, dm.amps), co.derived_inner_closed(k, beta, lam, mu, "golden")),
                (np.vdot(dl.amps, dm.amps), co.derived_inner_closed(k, beta, lam, mu, "silver")),
            ]
            for direct, closed in pairs:
                worst = max(worst, abs(direct - closed) / max(1.0, abs(closed)))
    return worst, 48


@_check("derived-two-term", 1e-10)
def _twoterm(cfg):
    worst, d = 0.0, 40
    rng = cfg.rng(450)
    for k in range(5):
        lam = (-1.0) ** k
        b, _ = fock.ladder_ops(k, d)
        for beta in _beta_grid(rng, k, 5):
            dv = co.derived_state(k, beta, lam, dim=d).amps
            for top, bottom in ((PHI_FLOAT**k, SILVER_FLOAT**k), (SILVER_FLOAT**k, PHI_FLOAT**k)):
                rhs = (beta / top) * dv + lam * co.coherent_state(k, beta, scale=bottom, dim=d).amps
                worst = max(worst, _rel(b.matrix @ dv, rhs, b.safe_rows))
    return worst, d - 1


@_check("super-coherent-eigen", 1e-8)
def _scoh(cfg):
    worst, dmax = 0.0, 0
    rng = cfg.rng(500)
    for k in range(4):
        for fam in co.FAMILIES:
            for beta in _beta_grid(rng, k, 6):
                try:
                    sc = co.super_coherent(fam, k, beta)
                except co.NormalizerMismatch:
                    return math.inf, None
                worst, dmax = max(worst, sc.residual), max(dmax, sc.dim)
    return worst, dmax


@_check("normalizer-closed-forms", 1e-10)
def _norms(cfg):
    worst = 0.0
    rng = cfg.rng(600)
    for k in range(4):
        for fam in co.FAMILIES:
            for beta in _beta_grid(rng, k, 6):
                sc = co.super_coherent(fam, k, beta)
                worst = max(worst, abs(sc.norm_sq_closed / sc.norm_sq_direct - 1))
    return worst, None


# block operator algebra -----------------------------------------------------

@_check("annihilator-power", 1e-9)
def _apow(cfg):
    worst, safe = 0.0, cfg.d
    for k in range(cfg.k_max + 1):
        for sign in (1, -1):
            for tr in (False, True):
                a = co.super_annihilator(k, sign, tr, cfg.d)
                it = a
                for n in range(1, 6):
                    if n > 1:
                        it = it @ a
                    rows = it.safe_index()
                    for form in ("closed", "split"):
                        cf = co.super_annihilator_power(k, sign, n, cfg.d, form, tr)
                        worst = max(worst, _rel(cf.matrix[rows], it.matrix[rows]))
                    safe = min(safe, it.safe_rows)
    return worst, safe


@_check("symmetry-commutator", 1e-10)
def _scomm(cfg):
    worst, safe = 0.0, cfg.d
    for k in range(cfg.k_max + 1):
        for sign in (1, -1):
            a, s = co.super_annihilator(k, sign, False, cfg.d), co.symmetry_operator(k, -sign, cfg.d)
            c = a @ s - s @ a
            rows = c.safe_index()
            worst = max(worst, _rel(c.matrix[rows], np.zeros_like(c.matrix[rows])) / max(1.0, float(np.max(np.abs((a @ s).matrix)))))
            safe = min(safe, c.safe_rows)
    return worst, safe


@_check("symmetry-power", 1e-9)
def _spow(cfg):
    worst, safe = 0.0, cfg.d
    for k in range(cfg.k_max + 1):
        for sign in (1, -1):
            s = co.symmetry_operator(k, sign, cfg.d)
            it = s
            for n in range(1, 6):
                if n > 1:
                    it = it @ s
                rows = it.safe_index()
                for form in ("closed", "split"):
                    cf = co.symmetry_power(k, sign, n, cfg.d, form)
                    worst = max(worst, _rel(cf.matrix[rows], it.matrix[rows]))
                safe = min(safe, it.safe_rows)
    return worst, safe


@_check("symmetry-eigen", 1e-8)
def _seig(cfg):
    worst, d = 0.0, 40
    rng = cfg.rng(700)
    for k in range(4):
        for fam in ("L+", "L-"):
            sign = -1 if fam == "L+" else 1  # L+ is an eigenstate of A_{-k}
            a = co.super_annihilator(k, sign, False, d)
            s = co.symmetry_operator(k, -sign, d)
            for beta in _beta_grid(rng, k, 4):
                psi = co.super_coherent(fam, k, beta, d).state
                v = s.matrix @ psi.vector
                r = a.matrix @ v - beta * v
                rows = np.concatenate([np.arange(d - 2), d + np.arange(d - 2)])
                worst = max(worst, float(np.linalg.norm(r[rows])) / max(1e-300, float(np.linalg.norm(v))))
    return worst, d - 2


@_check("reference-annihilation", 1e-10)
def _refann(cfg):
    worst = 0.0
    for k in range(cfg.k_max + 1):
        d = 4
        for fam, st in co.reference_states(k, d).items():
            op = co.family_operator(fam, k, d)
            worst = max(worst, float(np.linalg.norm(op.matrix @ st.vector)))
            for c0, c1 in ((1, 0), (0, 1), (1, 1), (0.3, -0.7j)):
                v = co.reference_combination(c0, c1, k, d, fam).vector
                worst = max(worst, float(np.linalg.norm(op.matrix @ v)))
            xi = complex(st.psi1[0] / st.psi0[1]) if fam[0] == "L" else None
            if xi is not None:
                worst = max(worst, abs(xi - (1 if fam[1] == "+" else -1) * PHI_FLOAT**k) / PHI_FLOAT**k)
    return worst, 4


# entanglement ---------------------------------------------------------------

@_check("concurrence-triangle", 1e-10)
def _tri(cfg):
    worst = 0.0
    for c in _random_states(cfg.rng(800), 200):
        cg, cm = en.concurrence_gram(c[0], c[1]), en.concurrence_minors(c)
        cp = en.concurrence_from_purity(en.reduce_boson(c))
        worst = max(worst, abs(cg - cm), abs(cg - cp), abs(cm - cp))
    return worst, None


@_check("purity-symmetry", 1e-12)
def _pur(cfg):
    worst = 0.0
    for c in _random_states(cfg.rng(800), 200):
        worst = max(worst, abs(en.purity(en.reduce_boson(c)) - en.purity(en.reduce_fermion(c))))
    return worst, None


@_check("gram-fermion-minors", 1e-12)
def _gfm(cfg):
    worst = 0.0
    for c in _random_states(cfg.rng(800), 200):
        det = en.gram_form(c[0], c[1]).det
        worst = max(worst, abs(4 * det - en.concurrence_sq_principal_minors(en.reduce_fermion(c))))
    return worst, None


@_check("entropy-consistency", 1e-10)
def _ent(cfg):
    worst = 0.0
    for c in _random_states(cfg.rng(850), 100):
        e1 = en.von_neumann(en.reduce_fermion(c))
        e2 = en.entropy_from_concurrence(min(en.concurrence_gram(c[0], c[1]), 1.0))
        worst = max(worst, abs(e1 - e2))
    return worst, None


@_check("reference-concurrence", 1e-12)
def _refc(cfg):
    worst, prev = 0.0, math.inf
    for k in range(13):
        for st in co.reference_states(k).values():
            c = en.concurrence_gram(st)
            worst = max(worst, abs(c - en.reference_concurrence(k)), abs(c - en.reference_concurrence_fibonacci(k)))
        ck = en.reference_concurrence(k)
        if ck >= prev:
            return math.inf, None
        prev = ck
    return worst, None


@_check("reference-entropy", 1e-10)
def _refe(cfg):
    worst = 0.0
    for k in range(7):
        for st in co.reference_states(k).values():
            worst = max(worst, abs(en.von_neumann(en.reduce_fermion(st)) - en.reference_entropy(k)))
    return worst, None


@_check("coherent-concurrence-closed", 1e-8)
def _cohc(cfg):
    worst = 0.0
    for k in range(4):
        bmax = 1.5 if k == 0 else 1.0
        for fam in ("L", "B"):
            for r in np.linspace(0.0, bmax, 20):
                c_gram = en.concurrence_gram(co.super_coherent(fam + "+", k, r).state)
                worst = max(worst, abs(en.coherent_concurrence_closed(k, r, fam) - c_gram))
            worst = max(worst, abs(en.coherent_concurrence_closed(k, 0.0, fam) - en.reference_concurrence(k)))
    return worst, None


@_check("frobenius-extremum", 1e-12)
def _frob(cfg):
    worst = 0.0
    rng = cfg.rng(900)
    for n in (2, 3, 4, 16):
        cm = en.c_max(n)
        lam = rng.dirichlet(np.ones(n), 1000)
        c = np.sqrt(2 * np.clip(1 - np.sum(lam**2, axis=1), 0, None))
        worst = max(worst, float(np.max(c - cm)), 0.0)
        rep = en.frobenius_classify(np.diag(np.full(n, 1.0 / n)))
        worst = max(worst, abs(rep.concurrence - cm), abs(rep.concurrence**2 - rep.concurrence_sq_minors))
    worst = max(worst, abs(en.c_max(2) - 1), abs(en.c_max(3) - 2 / math.sqrt(3)))
    return worst, None


@_check("parallelogram-area", 1e-10)
def _area(cfg):
    worst = 0.0
    for c in _random_states(cfg.rng(1000), 100, real=True):
        a, b = c[0].real, c[1].real
        area = en.parallelogram_area(a, b)
        pyth = math.sqrt(float(np.sum(np.triu(en.area_projections(a, b), 1) ** 2)))
        worst = max(worst, abs(2 * area - en.concurrence_gram(a, b)), abs(area - pyth))
    for k in range(7):
        st = co.reference_states(k)["L+"]
        ratio = np.linalg.norm(st.psi1.real) / np.linalg.norm(st.psi0.real)
        worst = max(worst, abs(ratio / PHI_FLOAT**k - 1))
    return worst, None


# runner ---------------------------------------------------------------------

def run_checks(cfg: VerifyConfig | None = None, names=None) -> list[CheckResult]:
    cfg = cfg or VerifyConfig()
    out = []
    for name in names or CHECKS:
        chk = CHECKS[name]
        try:
            resid, safe = chk.fn(cfg)
        except Exception:  # a crashing check is a failing check
            resid, safe = math.inf, None
        resid = float(resid)
        thr = 0.0 if chk.base is None else chk.base * cfg.scale
        out.append(CheckResult(name, bool(resid <= thr), resid, thr, safe, chk.base is None))
    return out


def report(results: list[CheckResult], cfg: VerifyConfig) -> dict:
    failed = [r.name for r in results if not r.passed]
    return {
        "tol": cfg.tol,
        "seed": cfg.seed,
        "passed": not failed,
        "n_checks": len(results),
        "failures": failed,
        "checks": [r.as_dict() for r in results],
    }
