from fractions import Fraction

import numpy as np
import pytest

from qdirac.braiding import (apply_local, braiding_op, closed_form_eigenvalue, flip, intertwining_residuals, monodromy,
                             rmatrix, spectral_split, verify_hecke)
from qdirac.qscalar import QField, QValue, limit_array
from qdirac.representation import build_irrep, tensor_rep

from conftest import HALF, Q_SAMPLES

EX = QField.exact()
SPINS = [Fraction(n, 2) for n in range(4)]


def test_trivial_factor_gives_identity():
    for l2 in SPINS:
        d = int(2 * l2 + 1)
        assert EX.is_zero(rmatrix(0, l2, EX) - EX.eye(d))
    assert EX.is_zero(braiding_op(0, 0, EX).matrix - EX.eye(1))


def test_spin_half_has_two_eigenvalues():
    m = braiding_op(HALF, HALF, QField.numeric(1.3)).matrix
    ev = np.unique(np.round(np.linalg.eigvalsh(m), 10))
    assert len(ev) == 2
    assert sorted(ev) == pytest.approx(sorted([1.3 ** 0.5, -(1.3 ** -1.5)]))


def test_intertwining_exact():
    for l1, l2 in ((HALF, HALF), (HALF, 1), (1, 1)):
        assert max(intertwining_residuals(l1, l2, EX).values()) == 0.0


@pytest.mark.parametrize("q0", Q_SAMPLES)
def test_braiding_commutes_with_action(q0):
    fld = QField.numeric(q0)
    for l1 in SPINS:
        for l2 in SPINS:
            assert max(intertwining_residuals(l1, l2, fld).values()) < 1e-10


def test_classical_limit_is_flip():
    np.testing.assert_allclose(limit_array(braiding_op(HALF, HALF, EX).matrix), flip(2, 2, QField.classical()))
    near = braiding_op(HALF, HALF, QField.numeric(1 + 1e-4)).matrix
    assert np.max(np.abs(near - flip(2, 2, QField.classical()))) < 1e-3


def test_selfadjoint():
    m = braiding_op(1, 1, QField.numeric(2.0)).matrix
    assert np.max(np.abs(m - m.T)) < 1e-10


def test_monodromy_commutes_with_action():
    fld = QField.numeric(1.4)
    x = monodromy(1, 1, fld)
    t = tensor_rep(build_irrep(1, fld), build_irrep(1, fld))
    for g in ("e", "f", "k"):
        assert np.max(np.abs(x.dot(t.act(g)) - t.act(g).dot(x))) < 1e-10


def test_split_dimensions():
    s = spectral_split(1, EX)
    assert (s.positive_dim, s.negative_dim) == (6, 3)
    assert sorted(c for sp in s.positive for c in sp.spins) == [0, 2]
    assert [c for sp in s.negative for c in sp.spins] == [1]
    h = spectral_split(HALF, EX)
    assert (h.positive_dim, h.negative_dim) == (3, 1)


def test_split_eigenvalues_closed_form():
    s = spectral_split(1, EX)
    got = {sp.spins[0]: sp.eigenvalue for sp in s.eigenspaces}
    assert got[2] == QValue.q(2) and got[0] == QValue.q(-4) and got[1] == -QValue.q(-2)
    for j, v in got.items():
        assert v == closed_form_eigenvalue(1, j, EX)


def test_projectors():
    s = spectral_split(1, EX)
    p, n = s.positive_projector, s.negative_projector
    assert EX.is_zero(p.dot(p) - p) and EX.is_zero(p + n - EX.eye(9)) and EX.is_zero(p.dot(n))


@pytest.mark.parametrize("l", SPINS[1:])
def test_split_stable_across_samples(l):
    dims = set()
    for q0 in Q_SAMPLES:
        s = spectral_split(l, QField.numeric(q0))
        assert all(abs(sp.eigenvalue) > 1e-6 for sp in s.eigenspaces)
        dims.add(tuple((sp.sign, sp.spins, sp.dim) for sp in s.eigenspaces))
    assert len(dims) == 1
    # classical symmetric square has dimension d(d+1)/2
    d = int(2 * l + 1)
    assert s.positive_dim == d * (d + 1) // 2


@pytest.mark.parametrize("l,n", [(HALF, 3), (HALF, 4), (1, 3)])
def test_hecke(l, n):
    r = verify_hecke(l, n)
    assert r["ok"] and r["max_residual"] < 1e-10


def test_distant_legs_commute():
    r = verify_hecke(HALF, 4)
    assert r["distant"] and max(r["distant"].values()) < 1e-12


def test_apply_local_matches_kron():
    rng = np.random.default_rng(1)
    op = rng.normal(size=(4, 4))
    v = rng.normal(size=(8, 3))
    full = np.kron(np.eye(2), op)
    np.testing.assert_allclose(apply_local(op, 2, 3, 1, v), full.dot(v), atol=1e-12)
