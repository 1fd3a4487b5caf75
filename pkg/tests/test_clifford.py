import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdirac.clifford import (LABELS, build_clifford, compare_relations, endomorphism_module, reference_relations,
                             reference_spin_matrices, spin_representation, verify_algebra_isomorphism, word_text)
from qdirac.qscalar import QField, QValue, qint
from qdirac.representation import decompose

EX = QField.exact()
P1, P0, PM = 0, 1, 2  # indices of ψ1, ψ0, ψ-1


@pytest.fixture(scope="module")
def alg():
    return build_clifford(EX)


@pytest.fixture(scope="module")
def spin(alg):
    return spin_representation(alg)


def test_rules(alg):
    q = QValue.q
    r = alg.rules
    assert r[(P1, P1)] == {}
    assert r[(PM, PM)] == {}
    assert r[(P0, P1)] == {(P1, P0): -q(-2)}  # ψ0ψ1 -> -q^-2 ψ1ψ0
    assert r[(PM, P1)] == {(): QValue.exact(-1), (P1, PM): QValue.exact(-1)}
    assert r[(PM, P0)] == {(P0, PM): -q(-2)}
    assert r[(P0, P0)] == {(): q(3) * (q(2) + QValue.exact(1)).inverse(), (P1, PM): q(1) - q(-1)}


def test_reference_relations_reproduced(alg):
    got = compare_relations(alg)
    assert len(got) == 6 and all(got.values()), got


def test_relations_text(alg):
    assert alg.relations_text() == [
        "ψ1ψ1 = 0",
        "ψ1ψ0 + (q^2)ψ0ψ1 = 0",
        "ψ1ψ-1 + ψ-1ψ1 = -1",
        "ψ1ψ-1 + (q^3+q)ψ0ψ0 + (q^4)ψ-1ψ1 = 0",
        "ψ0ψ-1 + (q^2)ψ-1ψ0 = 0",
        "ψ-1ψ-1 = 0",
    ]


def test_normal_words(alg):
    assert alg.dimension == 8
    assert {word_text(w) for w in alg.normal_words} == {
        "1", "ψ1", "ψ0", "ψ-1", "ψ1ψ0", "ψ1ψ-1", "ψ0ψ-1", "ψ1ψ0ψ-1"}


def test_small_reductions(alg):
    assert alg.normal_form(()) == {(): QValue.exact(1)}
    assert alg.normal_form((P1, P1)) == {}
    assert alg.normal_form((P1, PM, P1)) == {(P1,): QValue.exact(-1)}


def test_critical_pairs_resolve(alg):
    pairs = alg.critical_pairs()
    assert pairs and all(ok for *_, ok in pairs)


def test_confluence_500_random_words(alg):
    rng = random.Random(12345)
    for _ in range(500):
        w = tuple(rng.randrange(3) for _ in range(rng.randint(0, 6)))
        left = alg.normal_form(w, "leftmost")
        assert alg.normal_form(w, "rightmost") == left
        assert alg.normal_form(w, "random", random.Random(rng.random())) == left


@given(a=st.lists(st.integers(0, 2), max_size=3).map(tuple), b=st.lists(st.integers(0, 2), max_size=3).map(tuple),
       c=st.lists(st.integers(0, 2), max_size=3).map(tuple))
@settings(max_examples=60)
def test_multiplication_is_associative(alg, a, b, c):
    one = QValue.exact(1)
    x, y, z = {a: one}, {b: one}, {c: one}
    assert alg.multiply(alg.multiply(x, y), z) == alg.multiply(x, alg.multiply(y, z))


def test_ideal_is_covariant(alg):
    assert max(alg.ideal_covariance().values()) == 0.0


def test_spin_matrices(spin):
    ref = reference_spin_matrices(EX)
    for a, b in zip(ref, spin.psi):
        assert EX.is_zero(a - b)
    q = QValue.q
    assert ref[0][0, 1] == q(1).sqrt()
    assert ref[2][1, 0] == -q(-1).sqrt()
    r2 = qint(2).sqrt().inverse()
    assert ref[1][0, 0] == -q(-1) * r2 and ref[1][1, 1] == q(1) * r2


def test_spin_anticommutator(spin):
    p1, _, pm = spin.psi
    assert EX.is_zero(p1.dot(pm) + pm.dot(p1) + EX.eye(2))
    assert max(spin.relation_residuals()) == 0.0


def test_equivariance(spin):
    assert max(spin.equivariance_residuals().values()) == 0.0
    k = spin.sigma.k
    kinv = spin.sigma.kinv
    for m, p in zip((1, 0, -1), spin.psi):
        assert EX.is_zero(k.dot(p).dot(kinv) - p * QValue.q(m))


def test_isomorphism(alg, spin):
    rep = verify_algebra_isomorphism(alg, spin)
    assert rep["ok"]
    assert (rep["dimension"], rep["rank_s"], rep["kernel_s"], rep["rank_s_plus_s_neg"]) == (8, 4, 4, 8)
    assert rep["end_sigma_spins"] == ["0", "1"]


def test_end_sigma_decomposition(spin):
    assert sorted(c.spin for c in decompose(endomorphism_module(spin.sigma))) == [0, 1]


def test_corruption_is_detected(alg):
    bad = alg.corrupted()
    got = compare_relations(bad)
    assert not got["q^-1 ψ1ψ0 + q ψ0ψ1 = 0"]
    assert sum(not v for v in got.values()) == 1


@pytest.mark.parametrize("q0", [0.5, 1.1, 2.0])
def test_numeric_matches_exact(q0):
    a = build_clifford(QField.numeric(q0))
    assert all(compare_relations(a).values())
    s = spin_representation(a)
    for x, y in zip(s.psi, reference_spin_matrices(EX)):
        np.testing.assert_allclose(x, EX.to_float(y, q0), atol=1e-12)


def test_classical_limit():
    near = spin_representation(build_clifford(QField.numeric(1 + 1e-4)))
    cl = spin_representation(build_clifford(QField.classical()))
    for a, b in zip(near.psi, cl.psi):
        assert np.max(np.abs(a - b)) < 1e-3
    # q = 1: ordinary Clifford relations of the form with b = -1
    p1, p0, pm = cl.psi
    np.testing.assert_allclose(p0.dot(p0), 0.5 * np.eye(2), atol=1e-12)
    np.testing.assert_allclose(p1.dot(p0) + p0.dot(p1), 0, atol=1e-12)
    rels = reference_relations(QField.classical())
    assert len(rels) == 6


def test_labels():
    assert word_text((0, 1, 2)) == "".join(LABELS)
