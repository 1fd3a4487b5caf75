from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from qdirac.algebra import OPPOSITE_HOPF, PRIMARY_HOPF
from qdirac.qscalar import QField, QValue, limit_array, qint
from qdirac.representation import (RepresentationError, build_irrep, check_antipode, check_coassociativity,
                                   check_defining_relations, classical_ladder, classical_multiplicities, decompose,
                                   dual_rep, multiplicities, tensor_power, tensor_rep)

from conftest import HALF, half_integers

EX = QField.exact()


def test_trivial_module():
    r = build_irrep(0, EX)
    assert r.dim == 1
    assert EX.is_zero(r.e) and EX.is_zero(r.f) and EX.is_zero(r.k - EX.eye(1))


def test_spin_half_matrices():
    r = build_irrep(HALF, EX)
    assert r.k[0, 0] == QValue.q(HALF) and r.k[1, 1] == QValue.q(-HALF)
    assert r.e[0, 1] == QValue.exact(1) and r.f[1, 0] == QValue.exact(1)
    assert EX.is_zero(r.e - r.f.T)


def test_spin_one_raising():
    r = build_irrep(1, EX)
    assert r.e[0, 1] == qint(2).sqrt()
    assert r.e[0, 1] * r.e[0, 1] == QValue.q(1) + QValue.q(-1)


@pytest.mark.parametrize("bad", [-1, Fraction(1, 3), "x"])
def test_rejects_non_half_integers(bad):
    with pytest.raises(RepresentationError):
        build_irrep(bad, EX)


@pytest.mark.parametrize("l", [Fraction(n, 2) for n in range(9)])
def test_defining_relations_exact(l):
    assert check_defining_relations(build_irrep(l, EX))["ok"]


def test_corrupted_matrix_is_flagged():
    r = build_irrep(1, EX)
    e = r.e.copy()
    e[0, 1] = e[0, 1] * QValue.exact(2)
    from dataclasses import replace
    rep = check_defining_relations(replace(r, e=e))
    assert not rep["ok"]
    assert any("[e,f]" in name for name in rep["failed"])


def test_dual_of_spin_half():
    r = build_irrep(HALF, EX)
    d = dual_rep(r)
    assert EX.is_zero(d.e - r.e.T * (-QValue.q(1)))
    dd = dual_rep(d)
    assert EX.is_zero(dd.e - r.e * QValue.q(2))
    assert dual_rep(build_irrep(0, EX)).dim == 1


def test_tensor_with_trivial_is_identity():
    a = build_irrep(1, EX)
    t = tensor_rep(build_irrep(0, EX), a)
    for x in ("e", "f", "k"):
        assert EX.is_zero(t.act(x) - a.act(x))


def test_tensor_weights():
    t = tensor_rep(build_irrep(HALF, EX), build_irrep(HALF, EX))
    diag = [t.k[i, i] for i in range(4)]
    assert diag == [QValue.q(1), QValue.exact(1), QValue.exact(1), QValue.q(-1)]


def test_decompositions():
    v = build_irrep(1, EX)
    assert multiplicities(decompose(tensor_rep(v, v))) == {0: 1, 1: 1, 2: 1}
    assert multiplicities(decompose(tensor_rep(build_irrep(0, EX), build_irrep(0, EX)))) == {0: 1}
    for n in range(1, 6):
        l = Fraction(n, 2)
        assert multiplicities(decompose(tensor_rep(build_irrep(l, EX), build_irrep(HALF, EX)))) == {
            l - HALF: 1, l + HALF: 1}


def test_components_are_highest_weight_vectors():
    for c in decompose(tensor_rep(build_irrep(1, EX), build_irrep(1, EX))):
        hw = c.basis[:, 0]
        assert EX.is_zero(tensor_rep(build_irrep(1, EX), build_irrep(1, EX)).e.dot(hw))
        lead = next(x for x in hw if not x.is_zero())
        assert lead.sign() > 0


@pytest.mark.parametrize("q0", [0.5, 1.1, 2.0])
def test_clebsch_gordan_numeric(q0):
    fld = QField.numeric(q0)
    for a in range(5):
        for b in range(5):
            l1, l2 = Fraction(a, 2), Fraction(b, 2)
            got = multiplicities(decompose(tensor_rep(build_irrep(l1, fld), build_irrep(l2, fld))))
            assert got == classical_multiplicities(l1, l2)


@given(l1=half_integers.filter(lambda l: l <= 2), l2=half_integers.filter(lambda l: l <= 1))
@settings(max_examples=15)
def test_clebsch_gordan_exact(l1, l2):
    got = multiplicities(decompose(tensor_rep(build_irrep(l1, EX), build_irrep(l2, EX))))
    assert got == classical_multiplicities(l1, l2)


@pytest.mark.parametrize("hopf", [PRIMARY_HOPF, OPPOSITE_HOPF], ids=["primary", "opposite"])
@pytest.mark.parametrize("l", [HALF, 1, Fraction(3, 2)])
def test_hopf_axioms(hopf, l):
    r = build_irrep(l, EX)
    assert max(check_antipode(r, hopf).values()) == 0.0
    assert max(check_coassociativity(r, hopf).values()) == 0.0


def test_triple_tensor_power_is_a_module():
    t = tensor_power(build_irrep(HALF, EX), 3)
    assert t.dim == 8
    assert check_defining_relations(t)["ok"]


@pytest.mark.parametrize("l", [Fraction(n, 2) for n in range(5)])
def test_classical_limit_of_generators(l):
    r = build_irrep(l, EX)
    lad = classical_ladder(l)
    np.testing.assert_allclose(limit_array(r.e), lad["e"], atol=1e-12)
    np.testing.assert_allclose(limit_array(r.f), lad["f"], atol=1e-12)
    np.testing.assert_allclose(limit_array(r.k), np.eye(r.dim), atol=1e-12)


def test_numeric_matches_exact():
    r = build_irrep(Fraction(3, 2), EX).at(1.7)
    n = build_irrep(Fraction(3, 2), QField.numeric(1.7))
    np.testing.assert_allclose(r.e.astype(float), n.e, atol=1e-12)
