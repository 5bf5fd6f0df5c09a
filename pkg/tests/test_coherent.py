"""Golden coherent states, block annihilators and super-coherent families."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from golden_susy import coherent as co
from golden_susy.fock import CutoffError, ladder_ops, max_residual
from golden_susy.golden import PHI_FLOAT, SILVER_FLOAT, fib_divisor
from golden_susy.qcalc import golden_exp
from golden_susy.susy import super_fib_binet


def beta_strategy(kmax=3):
    @st.composite
    def draw(draw_):
        k = draw_(st.integers(0, kmax))
        r = draw_(st.floats(0, 1.5 if k == 0 else 1.0))
        a = draw_(st.floats(0, 2 * math.pi))
        return k, complex(r * math.cos(a), r * math.sin(a))

    return draw()


def residual(v, z):
    b, _ = ladder_ops(v.k, v.dim)
    return np.linalg.norm(b.matrix @ v.amps - z * v.amps) / np.linalg.norm(v.amps)


def test_vacuum():
    v = co.coherent_state(2, 0.0)
    assert v.amps[0] == 1 and not v.amps[1:].any()


def test_glauber_mean_number():
    v = co.coherent_state(0, 1.0, normalize=True, dim=40)
    n = np.arange(40)
    assert np.sum(n * np.abs(v.amps) ** 2) == pytest.approx(1.0, rel=1e-12)
    assert np.linalg.norm(v.amps) == pytest.approx(1.0, rel=1e-12)


def test_k2_example():
    v = co.coherent_state(2, 0.7)
    assert v.dim <= 12
    assert residual(v, 0.7) < 1e-10


@settings(max_examples=60)
@given(beta_strategy(), st.floats(0.5, 2.0), st.booleans())
def test_scaled_eigenstate_law(kb, lam, neg):
    k, beta = kb
    lam = -lam if neg else lam
    v = co.coherent_state(k, beta, scale=lam)
    assert residual(v, beta / lam) < 1e-10


@settings(max_examples=60)
@given(beta_strategy())
def test_plain_state_cutoff(kb):
    k, beta = kb
    v = co.coherent_state(k, beta)
    assert v.dim <= 32
    assert residual(v, beta) < 1e-10


def test_cutoff_cap():
    with pytest.raises(CutoffError):
        co.coherent_state(0, 6.0, max_dim=16)


def test_adaptive_dim_rule():
    amps = np.array([1.0, 0.5, 1e-3, 1e-20, 0.0])
    assert co.adaptive_dim(amps, 1e-6) == 4
    assert co.adaptive_dim(np.zeros(5), 1e-6) == 2


def test_derived_state_limit():
    v = co.derived_state(1, 0.0, -1.0, dim=5)
    assert np.allclose(v.amps, [0, -1, 0, 0, 0])


@pytest.mark.parametrize("k", range(5))
def test_inner_products(k):
    rng = np.random.default_rng(k)
    d = 48
    for _ in range(4):
        beta = complex(*rng.uniform(-0.7, 0.7, 2))
        alpha = complex(*rng.uniform(-0.7, 0.7, 2))
        lam, mu = rng.uniform(0.8, 1.5), -rng.uniform(0.8, 1.5)
        pb, pa = co.coherent_state(k, beta, dim=d), co.coherent_state(k, alpha, dim=d)
        assert np.vdot(pb.amps, pa.amps) == pytest.approx(co.inner_closed(k, beta, alpha), rel=1e-10)
        sl, sm = co.coherent_state(k, beta, scale=lam, dim=d), co.coherent_state(k, beta, scale=mu, dim=d)
        assert np.vdot(sl.amps, sm.amps).real == pytest.approx(co.scaled_inner_closed(k, beta, lam, mu), rel=1e-10)
        dl, dm = co.derived_state(k, beta, lam, dim=d), co.derived_state(k, beta, mu, dim=d)
        assert np.vdot(dl.amps, sm.amps) == pytest.approx(co.derived_plain_inner_closed(k, beta, lam, mu), rel=1e-10)
        direct = np.vdot(dl.amps, dm.amps).real
        assert direct == pytest.approx(co.derived_inner_closed(k, beta, lam, mu, "golden"), rel=1e-10)
        assert direct == pytest.approx(co.derived_inner_closed(k, beta, lam, mu, "silver"), rel=1e-10)


def test_norm_sq_closed():
    v = co.coherent_state(2, 0.8 + 0.3j, scale=1.4)
    assert np.linalg.norm(v.amps) ** 2 == pytest.approx(v.norm_sq_closed(), rel=1e-12)
    w = co.derived_state(1, 0.6, -1.0)
    assert np.linalg.norm(w.amps) ** 2 == pytest.approx(w.norm_sq_closed(), rel=1e-10)


def test_derived_inner_bad_form():
    with pytest.raises(ValueError):
        co.derived_inner_closed(1, 0.5, 1.0, 1.0, "bronze")


@pytest.mark.parametrize("k", range(5))
def test_two_term_relations(k):
    d, lam = 40, (-1.0) ** k
    b, _ = ladder_ops(k, d)
    beta = 0.6 - 0.3j
    dv = co.derived_state(k, beta, lam, dim=d).amps
    for top, bottom in ((PHI_FLOAT**k, SILVER_FLOAT**k), (SILVER_FLOAT**k, PHI_FLOAT**k)):
        rhs = (beta / top) * dv + lam * co.coherent_state(k, beta, scale=bottom, dim=d).amps
        assert max_residual(b.matrix @ dv, rhs, d - 1, relative=True) < 1e-10


@pytest.mark.parametrize("k", range(5))
def test_normalizer_exponent_identity(k):
    assert 1 / SILVER_FLOAT ** (2 * k) == pytest.approx(PHI_FLOAT ** (2 * k), rel=1e-14)


@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("sign", [1, -1])
def test_super_annihilator_blocks(k, sign):
    d = 8
    a = co.super_annihilator(k, sign, d=d)
    b, _ = ladder_ops(k, d)
    assert np.allclose(a.block(0, 0) + a.block(1, 1), fib_lucas(k) * b.matrix, rtol=1e-14, atol=1e-14)
    assert np.array_equal(a.block(0, 1), sign * np.eye(d))
    at = co.super_annihilator(k, sign, True, d)
    assert np.array_equal(at.block(1, 0), sign * np.eye(d)) and not at.block(0, 1).any()


def fib_lucas(k):
    return PHI_FLOAT**k + SILVER_FLOAT**k


def test_k0_annihilator():
    b, _ = ladder_ops(0, 5)
    a = co.super_annihilator(0, -1, d=5)
    assert np.array_equal(a.matrix, np.block([[b.matrix, -np.eye(5)], [np.zeros((5, 5)), b.matrix]]))


def test_power_examples():
    d = 10
    b, _ = ladder_ops(2, d)
    a2 = co.super_annihilator_power(2, 1, 2, d)
    assert np.allclose(a2.block(0, 1), fib_divisor(2, 2) * b.matrix)
    a3 = co.super_annihilator_power(2, 1, 3, d)
    assert np.allclose(a3.block(0, 1), 8 * b.matrix @ b.matrix)
    a1 = co.super_annihilator_power(3, -1, 1, d)
    assert np.allclose(a1.matrix, co.super_annihilator(3, -1, d=d).matrix)


@pytest.mark.parametrize("k", range(5))
@pytest.mark.parametrize("transposed", [False, True])
def test_power_closed_forms(k, transposed):
    d = 16
    for sign in (1, -1):
        a = co.super_annihilator(k, sign, transposed, d)
        it = a
        for n in range(1, 6):
            if n > 1:
                it = it @ a
            rows = it.safe_index()
            for form in ("closed", "split"):
                cf = co.super_annihilator_power(k, sign, n, d, form, transposed)
                assert max_residual(cf.matrix[rows], it.matrix[rows], relative=True) < 1e-9


@pytest.mark.parametrize("k", range(5))
def test_symmetry_commutes(k):
    d = 16
    for sign in (1, -1):
        a, s = co.super_annihilator(k, sign, d=d), co.symmetry_operator(k, -sign, d)
        c = a @ s - s @ a
        assert np.max(np.abs(c.matrix[c.safe_index()])) < 1e-10 * max(1, np.max(np.abs((a @ s).matrix)))


@pytest.mark.parametrize("k", range(5))
def test_symmetry_powers(k):
    d = 16
    for sign in (1, -1):
        s = co.symmetry_operator(k, sign, d)
        it = s
        for n in range(1, 6):
            if n > 1:
                it = it @ s
            for form in ("closed", "split"):
                cf = co.symmetry_power(k, sign, n, d, form)
                rows = it.safe_index()
                assert max_residual(cf.matrix[rows], it.matrix[rows], relative=True) < 1e-9


@pytest.mark.parametrize("k", range(4))
def test_symmetry_generates_eigenstates(k):
    d = 40
    for fam, sign in (("L+", -1), ("L-", 1)):
        a = co.super_annihilator(k, sign, d=d)
        s = co.symmetry_operator(k, -sign, d)
        beta = 0.5 + 0.2j
        v = s.matrix @ co.super_coherent(fam, k, beta, d).state.vector
        r = a.matrix @ v - beta * v
        rows = np.r_[0:d - 2, d:2 * d - 2]
        assert np.linalg.norm(r[rows]) < 1e-8 * np.linalg.norm(v)


def test_bad_sign_and_form():
    with pytest.raises(ValueError):
        co.super_annihilator(1, 0)
    with pytest.raises(ValueError):
        co.super_annihilator_power(1, 1, 2, 4, "weird")
    with pytest.raises(ValueError):
        co.super_annihilator_power(1, 1, 0, 4)


@settings(max_examples=40, deadline=None)
@given(beta_strategy(), st.sampled_from(co.FAMILIES))
def test_super_coherent_families(kb, family):
    k, beta = kb
    sc = co.super_coherent(family, k, beta)
    assert sc.residual < 1e-8
    assert sc.dim <= 32
    assert sc.state.is_normalized()
    assert sc.norm_sq_closed == pytest.approx(sc.norm_sq_direct, rel=1e-10)


@pytest.mark.parametrize("family", co.FAMILIES)
def test_family_operators(family):
    # eigenstates of the operator named in the family table
    sc = co.super_coherent(family, 2, 0.4 - 0.1j, d=30)
    op = co.family_operator(family, 2, 30)
    assert np.linalg.norm(op.matrix @ sc.state.vector - sc.beta * sc.state.vector) < 1e-8


def test_l_normalizer_closed_form():
    k, beta = 1, 0.9
    x = beta**2
    closed = PHI_FLOAT**2 * golden_exp(k, PHI_FLOAT**2 * x) + PHI_FLOAT * x * golden_exp(k, x) + golden_exp(k, SILVER_FLOAT * x)
    assert co.family_norm_sq_closed("L+", k, beta) == pytest.approx(closed, rel=1e-15)
    assert co.super_coherent("L+", k, beta).norm_sq_direct == pytest.approx(closed, rel=1e-10)


def test_normalizer_mismatch_is_raised(monkeypatch):
    monkeypatch.setattr(co, "family_norm_sq_closed", lambda *a: 123.0)
    with pytest.raises(co.NormalizerMismatch):
        co.super_coherent("L+", 1, 0.5)


def test_explicit_cutoff_too_small():
    with pytest.raises(CutoffError):
        co.super_coherent("L+", 0, 1.5, d=4)


def test_unknown_family():
    with pytest.raises(ValueError):
        co.super_coherent("X", 1, 0.5)
    with pytest.raises(ValueError):
        co.family_operator("X", 1, 4)


@pytest.mark.parametrize("k", range(4))
def test_small_beta_limit_is_reference(k):
    refs = co.reference_states(k, 4)
    for fam in ("L+", "L-", "B+", "B-"):
        sc = co.super_coherent(fam, k, 1e-9, d=4).state
        ref = refs[fam]
        assert abs(np.vdot(ref.vector, sc.vector)) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("k", range(5))
def test_reference_states_annihilated(k):
    d = 4
    for fam, st_ in co.reference_states(k, d).items():
        assert st_.is_normalized()
        assert np.linalg.norm(co.family_operator(fam, k, d).matrix @ st_.vector) < 1e-12


@pytest.mark.parametrize("k", range(5))
def test_reference_one_superparticle(k):
    d = 4
    f = super_fib_binet(k, d).matrix
    for fam in ("L+", "L-"):
        v = co.reference_states(k, d)[fam].vector
        assert np.linalg.norm(f @ v - v) < 1e-12


@pytest.mark.parametrize("k", range(5))
def test_reference_bloch_point(k):
    for fam, sgn in (("L+", 1), ("L-", -1)):
        s = co.reference_states(k)[fam]
        xi = s.psi1[0] / s.psi0[1]
        assert xi == pytest.approx(sgn * PHI_FLOAT**k, rel=1e-14)
        theta = 2 * math.atan(abs(xi))
        assert math.tan(theta / 2) == pytest.approx(PHI_FLOAT**k, rel=1e-14)


@pytest.mark.parametrize("family", ["L+", "L-", "B+", "B-"])
def test_reference_combinations(family):
    k, d = 2, 4
    op = co.family_operator(family, k, d).matrix
    for c0, c1 in ((1, 0), (0, 1), (1 / math.sqrt(2), 1 / math.sqrt(2)), (0.2j, -0.9)):
        s = co.reference_combination(c0, c1, k, d, family)
        assert s.is_normalized()
        assert np.linalg.norm(op @ s.vector) < 1e-10
    assert np.allclose(co.reference_combination(0, 1, k, d, family).vector, co.reference_states(k, d)[family].vector)
    with pytest.raises(ValueError):
        co.reference_combination(0, 0, k, d, family)
