"""Supersymmetric block operators and super-number states."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from golden_susy.fock import CutoffError, hamiltonian_boson, ladder_ops, max_residual
from golden_susy.golden import PHI_FLOAT, SILVER_FLOAT, fib_divisor, lucas
from golden_susy.susy import (
    BlochPoint, SuperOperator, SuperState, anticommutator, energy_ratio_iter, partial_trace_fermion_op,
    super_fib_binet, super_fib_table, super_hamiltonian, super_number_op, super_number_state, supercharges,
)

thetas = st.floats(0, math.pi)
phis = st.floats(0, 2 * math.pi, exclude_max=True)


@pytest.mark.parametrize("k", range(5))
def test_supercharges_nilpotent(k):
    q, qd = supercharges(k, 6)
    assert np.count_nonzero((q @ q).matrix) == 0
    assert np.count_nonzero((qd @ qd).matrix) == 0
    assert np.array_equal(qd.matrix, q.matrix.conj().T)


def test_supercharge_blocks():
    q, _ = supercharges(0, 3)
    b, _ = ladder_ops(0, 3)
    assert np.array_equal(q.block(1, 0), b.matrix)
    for i, j in ((0, 0), (0, 1), (1, 1)):
        assert np.count_nonzero(q.block(i, j)) == 0


@pytest.mark.parametrize("k", range(5))
def test_anticommutator_is_hamiltonian(k):
    d, hw = 10, 0.8
    q, qd = supercharges(k, d)
    ac = anticommutator(q, qd)
    h = super_hamiltonian(k, d, hw)
    rows = ac.safe_index()
    assert max_residual((0.5 * hw * ac.matrix)[rows], h.matrix[rows], relative=True) < 1e-10


def test_super_hamiltonian_spectra():
    e1 = np.sort(np.diag(super_hamiltonian(1, 6).matrix).real) / 0.5
    # each F_n doubly degenerate; F_1 = F_2 makes 1 four-fold
    assert np.array_equal(e1[:11], [0, 1, 1, 1, 1, 2, 2, 3, 3, 5, 5])
    e4 = sorted(set(np.diag(super_hamiltonian(4, 6).matrix).real / 0.5))
    assert e4[1:6] == [1, 7, 48, 329, 2255]
    e0 = np.sort(np.diag(super_hamiltonian(0, 5).matrix).real) / 0.5
    assert np.array_equal(e0, [0, 1, 1, 2, 2, 3, 3, 4, 4, 5])


def test_super_hamiltonian_safe_rows():
    assert super_hamiltonian(2, 7).safe_rows == 7


def test_super_fib_binet_entries():
    s1 = super_fib_binet(1, 5)
    assert s1.block(1, 1)[0, 0].real == pytest.approx(1.0, rel=1e-14)
    s3 = super_fib_binet(3, 6)
    assert s3.block(0, 0)[4, 4].real == pytest.approx(72.0, rel=1e-13)


@pytest.mark.parametrize("k", range(6))
def test_super_fib_binet_matches_table(k):
    got = np.diag(super_fib_binet(k, 20).matrix).real
    ref = super_fib_table(k, 20)
    assert np.max(np.abs(got / np.where(ref == 0, 1, ref) - np.where(ref == 0, 0, 1))) < 1e-10


@pytest.mark.parametrize("k", [0, 1, 2, 5])
def test_partial_trace(k):
    d = 8
    tr = partial_trace_fermion_op(super_hamiltonian(k, d))
    assert np.array_equal(tr.matrix, hamiltonian_boson(k, d).matrix)


def test_partial_trace_of_anticommutator():
    d = 8
    q, qd = supercharges(2, d)
    ac = anticommutator(q, qd)
    tr = partial_trace_fermion_op(0.5 * ac)
    assert max_residual(tr.matrix, hamiltonian_boson(2, d).matrix, ac.safe_rows, relative=True) < 1e-12


def test_partial_trace_rejects_off_diagonal():
    q, _ = supercharges(1, 4)
    with pytest.raises(ValueError):
        partial_trace_fermion_op(q)


@given(st.integers(0, 4), st.integers(1, 6), thetas, phis)
def test_super_number_state_eigen(k, n, theta, phi):
    d = 8
    s = super_number_state(n, k, BlochPoint(theta, phi), d)
    assert s.is_normalized()
    v = s.vector
    fop = super_fib_binet(k, d).matrix
    assert np.linalg.norm(fop @ v - fib_divisor(k, n) * v) <= 1e-10 * max(1, fib_divisor(k, n))
    nop = super_number_op(d).matrix
    assert np.vdot(v, nop @ v).real == pytest.approx(n, abs=1e-12)


def test_super_number_state_poles():
    north = super_number_state(2, 1, BlochPoint(0.0), 4)
    assert np.array_equal(north.psi0, [0, 0, 1, 0]) and not north.psi1.any()
    south = super_number_state(2, 1, BlochPoint(math.pi), 4)
    assert abs(south.psi1[1]) == pytest.approx(1.0) and np.allclose(south.psi0, 0)


def test_super_number_state_range():
    with pytest.raises(CutoffError):
        super_number_state(4, 1, BlochPoint(0.3), 4)
    with pytest.raises(CutoffError):
        super_number_state(0, 1, BlochPoint(0.3), 4)


@pytest.mark.parametrize("k", range(4))
def test_double_degeneracy(k):
    d = 6
    f = np.diag(super_fib_binet(k, d).matrix).real
    for n in range(1, d):
        # |0>_f|n> and |1>_f|n-1> share F_n
        assert f[n] == pytest.approx(f[d + n - 1], rel=1e-12)


def test_bloch_point_validation():
    with pytest.raises(ValueError):
        BlochPoint(-0.1)
    with pytest.raises(ValueError):
        BlochPoint(1.0, 2 * math.pi)


@given(thetas.filter(lambda t: t < 3.1), phis)
def test_stereographic_roundtrip(theta, phi):
    p = BlochPoint(theta, phi)
    q = BlochPoint.from_stereographic(p.stereographic())
    assert q.theta == pytest.approx(theta, abs=1e-12)
    if theta > 1e-6:
        assert math.cos(q.phi - phi) == pytest.approx(1.0, abs=1e-9)


def test_energy_ratio_examples():
    assert energy_ratio_iter(1, 1.0, 60)[-1] == pytest.approx(PHI_FLOAT, abs=1e-12)
    assert energy_ratio_iter(2, 3.0, 60)[-1] == pytest.approx(PHI_FLOAT**2, abs=1e-12)


@pytest.mark.parametrize("k", range(1, 6))
def test_energy_ratio_fixed_point(k):
    lam = energy_ratio_iter(k, 1.0, 40)[-1]
    assert lam == pytest.approx(PHI_FLOAT**k, abs=1e-8)
    assert lam**2 == pytest.approx(lucas(k) * lam + (-1) ** (k - 1), abs=1e-10 * lam**2)


def test_energy_ratio_zero():
    with pytest.raises(ZeroDivisionError, match="step 0"):
        energy_ratio_iter(1, 0.0, 3)


def test_asymptotic_growth():
    # F_n^(k) ~ phi^(kn) / (phi^k - phi'^k); the phi^(-k) prefactor is only its large-k limit
    k, n = 2, 30
    e = float(fib_divisor(k, n))
    assert e == pytest.approx(PHI_FLOAT ** (k * n) / (PHI_FLOAT**k - SILVER_FLOAT**k), rel=1e-12)
    for k in (8, 10, 12):
        ratio = fib_divisor(k, 30) / (PHI_FLOAT ** (-k) * math.exp(k * 30 * math.log(PHI_FLOAT)))
        assert ratio == pytest.approx(1.0, rel=0.01)


def test_super_state_algebra():
    s = SuperState([1, 0], [0, 1], 1)
    assert s.norm() == pytest.approx(math.sqrt(2))
    assert s.normalized().is_normalized()
    assert np.array_equal(SuperState.from_vector(s.vector, 1).coefficients, s.coefficients)
    assert (2 * s - s).vdot(s) == pytest.approx(2)
    with pytest.raises(ValueError):
        SuperState([0, 0], [0, 0]).normalized()
    with pytest.raises(ValueError):
        SuperState([1, 0], [1])


def test_super_operator_matmul_variants():
    q, qd = supercharges(1, 4)
    s = SuperState([1, 0, 0, 0], [0, 1, 0, 0], 1)
    assert isinstance(qd @ s, SuperState)
    assert isinstance(q @ s.vector, np.ndarray)
    assert isinstance(q + qd, SuperOperator)
    assert (q @ qd).safe_rows == 2
    assert super_hamiltonian(1, 4).is_block_diagonal()
