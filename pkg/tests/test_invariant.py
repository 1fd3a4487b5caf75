import numpy as np
import pytest

from qdirac.invariant import (adjoint_form, form_solution_space, intertwiner_space, invariant_form, invariant_vector,
                              invariant_vector_residuals, killing_gram, solve_intertwiner, tau_matrix)
from qdirac.qscalar import QField, QValue, limit_array, qint
from qdirac.representation import build_irrep, dual_rep, tensor_rep

from conftest import HALF

EX = QField.exact()


def test_schur_identity():
    v = build_irrep(1, EX)
    t = solve_intertwiner(v, v)
    assert EX.is_zero(t.matrix - EX.eye(3))
    assert len(intertwiner_space(v, v)) == 1


def test_dimension_mismatch():
    assert solve_intertwiner(build_irrep(HALF, EX), build_irrep(1, EX)) is None


def test_tau_ratios():
    """The module map V* -> V agrees with the closed-form tau up to one scalar."""
    v = build_irrep(1, EX)
    t = solve_intertwiner(dual_rep(v), v).matrix
    ref = tau_matrix(EX)
    # tau(v_1*) = -q[2] v_-1, tau(v_0*) = [2] v_0, tau(v_-1*) = -q^-1[2] v_1
    assert ref[2, 0] == -QValue.q(1) * qint(2)
    assert ref[1, 1] == qint(2)
    assert ref[0, 2] == -QValue.q(-1) * qint(2)
    c = ref[0, 2] * t[0, 2].inverse()
    assert EX.is_zero(ref - t * c)


def test_form_values():
    b = adjoint_form(EX).matrix
    two = qint(2).inverse()
    assert b[0, 2] == -QValue.q(1) * two
    assert b[1, 1] == two
    assert b[2, 0] == -QValue.q(-1) * two
    # weight grading: only pairs of opposite weight pair nontrivially
    for i in range(3):
        for j in range(3):
            if i + j != 2:
                assert b[i, j].is_zero()


def test_form_uniqueness_and_nondegeneracy():
    v = build_irrep(1, EX)
    assert form_solution_space(v).shape[1] == 1
    f = invariant_form(v)
    assert not f.det().is_zero()
    assert max(f.invariance_residuals().values()) == 0.0
    assert max(f.phi_residuals().values()) == 0.0


def test_phi_inverts_tau():
    f = adjoint_form(EX)
    assert EX.is_zero(f.phi().dot(tau_matrix(EX)) - EX.eye(3))


def test_classical_limit_is_killing():
    b = limit_array(adjoint_form(EX).matrix)
    k = killing_gram()
    ratio = b[1, 1] / k[1, 1]
    np.testing.assert_allclose(b, ratio * k, atol=1e-12)


@pytest.mark.parametrize("q0", [0.5, 1.1, 2.0])
def test_numeric_form_is_invariant(q0):
    f = invariant_form(build_irrep(1, QField.numeric(q0)))
    assert max(f.invariance_residuals().values()) < 1e-10


def test_omega():
    v = build_irrep(1, EX)
    om = invariant_vector(v)
    assert [str(x) for x in om] == ["1", "0", "0", "0", "1", "0", "0", "0", "1"]
    t = tensor_rep(v, dual_rep(v))
    assert EX.is_zero(t.e.dot(om))
    assert EX.is_zero(t.k.dot(om) - om)
    for l in (0, HALF, 1, 2):
        assert max(invariant_vector_residuals(build_irrep(l, EX)).values()) == 0.0
