"""Quantum Lie basis, the covariant Dirac operator and its cubic term.

``D = Σ α_ij Z_i ⊗ ψ_j`` with ``α_ij = τ[j, i]`` where ``τ: V* -> V`` is the
inverse of ``v -> B(v ⊗ ·)``. With the normalization ``b = -1`` this is

    D = -q[2] Z_1 ⊗ ψ_-1 + [2] Z_0 ⊗ ψ_0 - q^-1[2] Z_-1 ⊗ ψ_1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .algebra import (OPPOSITE_HOPF, PRIMARY_HOPF, AlgebraElement, HopfStructure, adjoint, e_, f_, k_,
                      kinv_)
from .clifford import CliffordAlgebra, SpinRepresentation, build_clifford, spin_representation
from .invariant import GENERATORS, adjoint_form
from .qscalar import QField
from .representation import as_half_integer, build_irrep, tensor_power, tensor_rep

# Γ coefficient that turns the q = 1 spectrum {2l, -(2l+2)} into {±(2l+1)}
N_KOSTANT = Fraction(1, 3)


@dataclass(frozen=True, eq=False)
class QuantumLieBasis:
    """Three elements ``Z_1, Z_0, Z_-1`` of U_q(su(2)) transforming as the adjoint module."""

    field: QField
    elements: tuple
    hopf: HopfStructure

    def __getitem__(self, i) -> AlgebraElement:
        return self.elements[i]

    def matrices(self, l) -> tuple:
        rep = build_irrep(l, self.field)
        return tuple(z.evaluate(rep) for z in self.elements)

    def covariance_symbolic(self) -> dict:
        """Exact check of ``x ⊵ Z_i = Σ_j ρ_ji(x) Z_j`` through PBW normal ordering."""
        fld = self.field
        rho = build_irrep(1, fld)
        out = {}
        for x in GENERATORS:
            gx = AlgebraElement.gen(x, fld)
            ok = True
            for i, z in enumerate(self.elements):
                lhs = adjoint(gx, z, self.hopf)
                rhs = AlgebraElement(fld)
                for j in range(3):
                    rhs = rhs + self.elements[j] * rho.act(x)[j, i]
                ok = ok and (lhs - rhs).is_zero()
            out[x] = ok
        return out

    def covariance_residuals(self, l) -> dict:
        """The same identity evaluated in ``π_l``."""
        fld = self.field
        rep = build_irrep(l, fld)
        rho = build_irrep(1, fld)
        mats = self.matrices(l)
        out = {}
        for x in GENERATORS:
            worst = 0.0
            for i in range(3):
                lhs = fld.zeros((rep.dim, rep.dim))
                for a, b in self.hopf.legs(x):
                    c, sb = self.hopf.antipode(b, fld)
                    lhs = lhs + linalg.scale(rep.act(a).dot(mats[i]).dot(rep.act(sb)), c)
                rhs = fld.zeros((rep.dim, rep.dim))
                for j in range(3):
                    rhs = rhs + linalg.scale(mats[j], rho.act(x)[j, i])
                worst = max(worst, linalg.residual(lhs - rhs, fld))
            out[x] = worst
        return out


def _inv(x, field: QField):
    return x.inverse() if field.is_exact else 1.0 / x


def quantum_lie_basis(field: QField) -> QuantumLieBasis:
    """``Z_1 = k^-1 e``, ``Z_0 = (q^-1 fe - q ef)/sqrt([2])``, ``Z_-1 = -k^-1 f``."""
    e, f, kinv = e_(field), f_(field), kinv_(field)
    r2 = _inv(field.sqrt(field.qint(2)), field)
    z1 = kinv * e
    z0 = (f * e * field.q(-1) - e * f * field.q(1)) * r2
    zm = (kinv * f) * (-field.one)
    return QuantumLieBasis(field, (z1, z0, zm), OPPOSITE_HOPF)


def lie_basis_from_highest_weight(hw: AlgebraElement, hopf: HopfStructure) -> QuantumLieBasis:
    """Adjoint triple generated from a highest-weight element by ``f``:
    ``Y_(m-1) = (f · Y_m) / sqrt([1+m][2-m])``."""
    fld = hw.field
    f = f_(fld)
    r2 = _inv(fld.sqrt(fld.qint(2)), fld)
    y0 = adjoint(f, hw, hopf) * r2
    ym = adjoint(f, y0, hopf) * r2
    return QuantumLieBasis(fld, (hw, y0, ym), hopf)


def primary_lie_basis(field: QField) -> QuantumLieBasis:
    """The analogous triple for the primary adjoint action, starting from ``k e``."""
    return lie_basis_from_highest_weight(k_(field) * e_(field), PRIMARY_HOPF)


# ---------------------------------------------------------------------------
# the operator


@dataclass(frozen=True, eq=False)
class DiracOperator:
    field: QField
    basis: QuantumLieBasis
    alpha: np.ndarray
    tau: np.ndarray
    clifford: CliffordAlgebra
    spin: SpinRepresentation

    def coefficient(self, i: int, j: int):
        return self.alpha[i, j]

    def realize(self, l) -> np.ndarray:
        return _realize(self, as_half_integer(l))

    def tensor_action(self, l) -> dict:
        """``(π_l ⊗ σ) Δ(x)`` for the generators."""
        act = tensor_rep(build_irrep(l, self.field), self.spin.sigma)
        return {x: act.act(x) for x in GENERATORS}

    def commutator_norms(self, l) -> dict:
        m = self.realize(l)
        return {x: linalg.residual(m.dot(a) - a.dot(m), self.field) for x, a in self.tensor_action(l).items()}

    def invariance_symbolic(self) -> dict:
        """``Σ (x' ⊵ Z_i) ⊗ (x'' ▷ ψ_j) α_ij = ε(x) D``, checked exactly via PBW."""
        return _invariance(self.basis, self.alpha, self.clifford.rep, PRIMARY_HOPF)


def _invariance(basis: QuantumLieBasis, alpha, rho, hopf: HopfStructure) -> dict:
    fld = basis.field
    out = {}
    for x in GENERATORS:
        ok = True
        for k in range(3):
            acc = AlgebraElement(fld)
            for a, b in hopf.legs(x):
                ga = AlgebraElement.gen(a, fld)
                for i in range(3):
                    for j in range(3):
                        coef = alpha[i, j] * rho.act(b)[k, j]
                        if fld.is_zero_scalar(coef):
                            continue
                        acc = acc + adjoint(ga, basis[i], basis.hopf) * coef
            target = AlgebraElement(fld)
            for i in range(3):
                target = target + basis[i] * (alpha[i, k] * hopf.counit(x))
            ok = ok and (acc - target).is_zero()
        out[x] = ok
    return out


@lru_cache(maxsize=None)
def _realize(op: DiracOperator, l: Fraction) -> np.ndarray:
    fld = op.field
    zs = op.basis.matrices(l)
    n = int(2 * l + 1)
    out = fld.zeros((2 * n, 2 * n))
    for i in range(3):
        for j in range(3):
            if not fld.is_zero_scalar(op.alpha[i, j]):
                out = out + linalg.scale(np.kron(zs[i], op.spin.psi[j]), op.alpha[i, j])
    return out


def tau_from_form(field: QField) -> np.ndarray:
    """``τ: V* -> V`` as the inverse of ``φ_B``."""
    form = adjoint_form(field)
    return linalg.inverse(form.phi(), field)


@lru_cache(maxsize=None)
def build_dirac(field: QField) -> DiracOperator:
    alg = build_clifford(field)
    spin = spin_representation(alg)
    tau = tau_from_form(field)
    alpha = tau.T.copy()
    return DiracOperator(field, quantum_lie_basis(field), alpha, tau, alg, spin)


def realize(l, field: QField) -> np.ndarray:
    return build_dirac(field).realize(l)


# ---------------------------------------------------------------------------
# spectrum


def spectrum(l, field: QField) -> list:
    """``[([2l], 2l+2), (-[2l+2], 2l)]``; ``[(0, 2)]`` for ``l = 0``."""
    l = as_half_integer(l)
    if l == 0:
        return [(field.zero, 2)]
    return [(field.qint(2 * l), int(2 * l + 2)), (-field.qint(2 * l + 2), int(2 * l))]


def verify_spectrum(l, field: QField, tol: float = 1e-10) -> dict:
    """Compare ``realize(D, l)`` with :func:`spectrum`.

    Exact mode checks ``(M - λ1)(M - λ2) = 0`` and ``tr M = Σ mult·λ``, which pins
    both multiplicities; numeric mode compares sorted eigenvalues.
    """
    l = as_half_integer(l)
    m = realize(l, field)
    expected = spectrum(l, field)
    n = m.shape[0]
    report = {"l": str(l), "field": str(field), "expected": [(str(v), k) for v, k in expected]}
    if field.is_exact:
        eye = field.eye(n)
        prod = eye
        for lam, _ in expected:
            prod = prod.dot(m - linalg.scale(eye, lam))
        tr = field.zero
        for i in range(n):
            tr = tr + m[i, i]
        want = field.zero
        for lam, k in expected:
            want = want + lam * k
        report["annihilator_zero"] = bool(field.is_zero(prod))
        report["trace_ok"] = bool(field.is_zero_scalar(tr - want))
        report["ok"] = report["annihilator_zero"] and report["trace_ok"]
        return report
    ev = np.linalg.eigvals(m.astype(float))
    if np.max(np.abs(ev.imag)) > tol:
        report.update(ok=False, max_error=float(np.max(np.abs(ev.imag))))
        return report
    got = np.sort(ev.real)
    want = np.sort(np.concatenate([[float(v)] * k for v, k in expected]))
    err = float(np.max(np.abs(got - want)))
    report.update(max_error=err, ok=err < tol)
    return report


# ---------------------------------------------------------------------------
# negative control: the primary adjoint action


def negative_control_naive(l, q0: float = 1.5) -> dict:
    """``A = Σ α_ij X_i ⊗ ψ_j`` with ``X_i`` covariant for the primary adjoint action.

    ``A`` is invariant for that action but does not commute with the
    quantum-group action on ``V_l ⊗ Σ``; ``D`` does.
    """
    fld = QField.numeric(q0)
    op = build_dirac(fld)
    xs = primary_lie_basis(fld)
    l = as_half_integer(l)
    mats = xs.matrices(l)
    n = int(2 * l + 1)
    a = fld.zeros((2 * n, 2 * n))
    for i in range(3):
        for j in range(3):
            a = a + op.alpha[i, j] * np.kron(mats[i], op.spin.psi[j])
    action = op.tensor_action(l)
    return {
        "l": str(l),
        "q0": q0,
        "naive_commutators": {x: float(np.max(np.abs(a @ m - m @ a))) for x, m in action.items()},
        "dirac_commutators": {x: float(v) for x, v in op.commutator_norms(l).items()},
    }


def naive_invariance(field: QField) -> dict:
    """Invariance of ``A`` under ``(▷ ⊗ ▷)``, the naive action (exact, via PBW)."""
    op = build_dirac(field)
    return _invariance(primary_lie_basis(field), op.alpha, op.clifford.rep, PRIMARY_HOPF)


# ---------------------------------------------------------------------------
# cubic term


@dataclass(frozen=True, eq=False)
class CubicTerm:
    """``Γ = 1 ⊗ Σ_m θ(v_m) γ(τ(v_m*))`` in ``U ⊗ cl``."""

    dirac: DiracOperator
    theta: np.ndarray
    element: dict

    @property
    def field(self) -> QField:
        return self.dirac.field

    def spin_image(self) -> np.ndarray:
        return self.dirac.spin.image(self.element)

    def realize(self, l) -> np.ndarray:
        n = int(2 * as_half_integer(l) + 1)
        return np.kron(self.field.eye(n), self.spin_image())

    def combined(self, l, n_coef=0) -> np.ndarray:
        """``D + N Γ`` on ``V_l ⊗ Σ``."""
        return self.dirac.realize(l) + linalg.scale(self.realize(l), self.field.const(n_coef))

    def commutator_norms(self, l) -> dict:
        m = self.realize(l)
        return {x: linalg.residual(m.dot(a) - a.dot(m), self.field)
                for x, a in self.dirac.tensor_action(l).items()}

    def invariance(self) -> dict:
        """``x ▷ Γ_cl = ε(x) Γ_cl`` with the action on cubic words from the 3-fold coproduct."""
        fld = self.field
        alg = self.dirac.clifford
        cube = tensor_power(alg.rep, 3)
        words = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
        vec = fld.zeros(27)
        for w, c in self.element.items():
            if len(w) != 3:
                raise ArithmeticError("Γ_cl must be a cubic word combination before normal ordering")
            vec[words.index(w)] = vec[words.index(w)] + c
        out = {}
        for x in GENERATORS:
            img = cube.act(x).dot(vec) - linalg.scale(vec, PRIMARY_HOPF.counit(x))
            el = {w: img[i] for i, w in enumerate(words) if not fld.is_zero_scalar(img[i])}
            out[x] = not alg.normal_form(el)
        return out

    def normal_form(self) -> dict:
        return self.dirac.clifford.normal_form(self.element)


def cubic_term(field: QField) -> CubicTerm:
    """θ embeds ``V`` as the spin-1 summand of the negative part of ``V ⊗ V``."""
    op = build_dirac(field)
    split = op.clifford.split
    comp = [c for s in split.negative for c in s.components if c.spin == 1]
    if len(comp) != 1:
        raise ArithmeticError("no adjoint copy in the negative spectral subspace")
    theta = comp[0].basis
    el: dict = {}
    for m in range(3):
        for j in range(3):
            t = op.tau[j, m]
            if field.is_zero_scalar(t):
                continue
            for ab in range(9):
                c = theta[ab, m]
                if field.is_zero_scalar(c):
                    continue
                w = (ab // 3, ab % 3, j)
                v = el[w] + c * t if w in el else c * t
                el[w] = v
    el = {w: c for w, c in el.items() if not field.is_zero_scalar(c)}
    return CubicTerm(op, theta, el)


def kostant_constant() -> float:
    """``N`` with ``N·s(Γ_cl) = 1`` at ``q = 1``."""
    m = cubic_term(QField.classical()).spin_image()
    return 1.0 / float(m[0, 0])


def classical_cubic_image() -> np.ndarray:
    """Spin-1/2 image of the cubic element built from Condon-Shortley coefficients at q = 1."""
    r2 = np.sqrt(2.0)
    s = {1: np.array([[0.0, 1.0], [0.0, 0.0]]), 0: -np.diag([1.0, -1.0]) / r2, -1: np.array([[0.0, 0.0], [-1.0, 0.0]])}
    # <1 m1; 1 m2 | 1 m>
    cg = {(1, 0, 1): 1 / r2, (0, 1, 1): -1 / r2, (1, -1, 0): 1 / r2, (-1, 1, 0): -1 / r2,
          (0, -1, -1): 1 / r2, (-1, 0, -1): -1 / r2}
    # classical τ: |1>* -> -2|-1>, |0>* -> 2|0>, |-1>* -> -2|1>
    tau = {1: (-1, -2.0), 0: (0, 2.0), -1: (1, -2.0)}
    out = np.zeros((2, 2))
    for (m1, m2, m), c in cg.items():
        j, t = tau[m]
        out += c * t * s[m1] @ s[m2] @ s[j]
    return out


def growth_ratio(l, q0: float) -> float:
    """``[2l] / q0^(2l-1)``, which tends to ``1/(1 - q0^-2)`` for ``q0 > 1``."""
    fld = QField.numeric(q0)
    return fld.qint(2 * as_half_integer(l)) / q0 ** (2 * float(l) - 1)
