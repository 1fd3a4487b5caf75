from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdirac.dirac import (N_KOSTANT, build_dirac, classical_cubic_image, cubic_term, growth_ratio, kostant_constant,
                          naive_invariance, negative_control_naive, quantum_lie_basis, realize, spectrum,
                          verify_spectrum)
from qdirac.qscalar import QField, QValue, limit_array, qint

from conftest import HALF, Q_SAMPLES

EX = QField.exact()
SPINS = [Fraction(n, 2) for n in range(1, 9)]


def test_lie_basis_covariance():
    b = quantum_lie_basis(EX)
    assert all(b.covariance_symbolic().values())
    for l in (HALF, 1, 2):
        assert max(b.covariance_residuals(l).values()) == 0.0


def test_lie_basis_weights_and_limit():
    z1, z0, zm = quantum_lie_basis(EX).matrices(HALF)
    assert z0[0, 1].is_zero() and z0[1, 0].is_zero()
    cl = quantum_lie_basis(QField.classical()).matrices(HALF)
    e = np.array([[0.0, 1.0], [0.0, 0.0]])
    h = np.diag([1.0, -1.0])
    np.testing.assert_allclose(cl[0], e)
    np.testing.assert_allclose(cl[1], -h / np.sqrt(2))
    np.testing.assert_allclose(cl[2], -e.T)


def test_alpha_table():
    a = build_dirac(EX).alpha
    q = QValue.q
    assert a[0, 2] == -q(1) * qint(2)
    assert a[1, 1] == qint(2)
    assert a[2, 0] == -q(-1) * qint(2)
    assert sum(not a[i, j].is_zero() for i in range(3) for j in range(3)) == 3


def test_invariance_symbolic():
    assert all(build_dirac(EX).invariance_symbolic().values())


def test_kernel_on_trivial_module():
    assert EX.is_zero(realize(0, EX))
    assert spectrum(0, EX) == [(QValue.exact(0), 2)]


def test_spin_half_spectrum():
    assert spectrum(HALF, EX) == [(QValue.exact(1), 3), (-qint(3), 1)]


def test_spin_one_spectrum():
    assert spectrum(1, EX) == [(qint(2), 4), (-qint(4), 2)]


@pytest.mark.parametrize("l", SPINS)
def test_spectrum_exact(l):
    assert verify_spectrum(l, EX)["ok"]


@pytest.mark.parametrize("q0", Q_SAMPLES)
def test_spectrum_numeric(q0):
    for l in SPINS:
        r = verify_spectrum(l, QField.numeric(q0))
        assert r["ok"] and r["max_error"] < 1e-10


def test_spectrum_numeric_eigensolve():
    m = realize(Fraction(3, 2), QField.numeric(1.2))
    ev = np.sort(np.linalg.eigvals(m).real)
    want = np.sort([QField.numeric(1.2).qint(3)] * 5 + [-QField.numeric(1.2).qint(5)] * 3)
    np.testing.assert_allclose(ev, want, atol=1e-10)


@pytest.mark.parametrize("q0", Q_SAMPLES)
def test_commutes_with_action(q0):
    op = build_dirac(QField.numeric(q0))
    for l in SPINS:
        assert max(op.commutator_norms(l).values()) < 1e-10


def test_commutes_exact():
    op = build_dirac(EX)
    for l in SPINS[:4]:
        assert max(op.commutator_norms(l).values()) == 0.0


def test_naive_operator_control():
    r = negative_control_naive(HALF, 1.5)
    assert r["naive_commutators"]["e"] > 0.01
    assert r["dirac_commutators"]["e"] < 1e-10
    near = negative_control_naive(HALF, 1 + 1e-6)
    assert near["naive_commutators"]["e"] < 1e-4
    assert all(naive_invariance(EX).values())


def test_cubic_term():
    c = cubic_term(EX)
    assert all(c.invariance().values())
    img = c.spin_image()
    assert img[0, 1].is_zero() and img[1, 0].is_zero() and img[0, 0] == img[1, 1]
    for l in (HALF, 1, Fraction(3, 2)):
        assert max(c.commutator_norms(l).values()) == 0.0
    # first tensor leg is the unit: Γ realizes as 1 ⊗ s(Γ)
    d = 3
    assert EX.is_zero(c.realize(1) - np.kron(EX.eye(d), img))


def test_cubic_classical_oracle():
    cl = cubic_term(QField.classical()).spin_image()
    np.testing.assert_allclose(cl, classical_cubic_image(), atol=1e-12)
    np.testing.assert_allclose(classical_cubic_image(), 3 * np.eye(2), atol=1e-12)
    assert kostant_constant() == pytest.approx(float(N_KOSTANT))
    near = cubic_term(QField.numeric(1 + 1e-4)).spin_image()
    assert np.max(np.abs(near - cl)) < 1e-3


def test_combined_operator_commutes():
    c = cubic_term(QField.numeric(1.3))
    m = c.combined(1, N_KOSTANT)
    assert m.shape == (6, 6)
    ex = cubic_term(EX).combined(HALF, N_KOSTANT)
    assert ex.shape == (4, 4)


def test_eigenvalue_growth():
    # [2l]/q^(2l-1) -> q/(q - q^-1), with error of order q^(-4l)
    limit = 1.5 / (1.5 - 1 / 1.5)
    err = [abs(growth_ratio(Fraction(n, 2), 1.5) - limit) for n in range(2, 25)]
    assert all(b < a for a, b in zip(err, err[1:]))
    assert err[-1] < 1.5 ** -24


@given(n=st.integers(1, 8), q0=st.floats(0.3, 3.0).filter(lambda q: abs(q - 1) > 1e-3))
@settings(max_examples=25)
def test_spectrum_property(n, q0):
    l = Fraction(n, 2)
    assert verify_spectrum(l, QField.numeric(q0))["ok"]


def test_classical_limit():
    near, one = QField.numeric(1 + 1e-4), QField.classical()
    for l in (HALF, 1, Fraction(3, 2)):
        assert np.max(np.abs(realize(l, near) - realize(l, one))) < 1e-3
    np.testing.assert_allclose(limit_array(realize(1, EX)), realize(1, one), atol=1e-12)
