"""R-matrix, braiding operator and its spectral split on ``V_l ⊗ V_l``.

In the weight bases used here

    R = q^{2 m1 m2} · sum_n q^{n(n-1)/2} (q - q^-1)^n / [n]! · (k e)^n ⊗ (f k^-1)^n

with the diagonal factor acting on the left. This is the standard series
rewritten for the coproduct ``Δe = e⊗k + k^-1⊗e``; the tests check
``R Δ(x) R^-1 = σ Δ(x) σ`` directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .qscalar import ABS_TOL, QField
from .representation import Component, as_half_integer, build_irrep, decompose, tensor_rep

MERGE_TOL = 1e-8


def _inv(x, field: QField):
    return x.inverse() if field.is_exact else 1.0 / x


def flip(d1: int, d2: int, field: QField) -> np.ndarray:
    """``σ(v ⊗ w) = w ⊗ v`` from ``C^d1 ⊗ C^d2`` to ``C^d2 ⊗ C^d1``."""
    out = field.zeros((d1 * d2, d1 * d2))
    for i in range(d1):
        for j in range(d2):
            out[j * d1 + i, i * d2 + j] = field.one
    return out


def rmatrix(l1, l2, field: QField) -> np.ndarray:
    a = build_irrep(l1, field)
    b = build_irrep(l2, field)
    ke = a.k.dot(a.e)
    fk = b.f.dot(b.kinv)
    dim = a.dim * b.dim
    series = field.zeros((dim, dim))
    term_a = field.eye(a.dim)
    term_b = field.eye(b.dim)
    fact = field.one
    n = 0
    while not (field.is_zero(term_a) or field.is_zero(term_b)):
        if n > 0:
            fact = fact * field.qint(n)
        c = field.q(Fraction(n * (n - 1), 2)) * (field.q(1) - field.q(-1)) ** n * _inv(fact, field)
        series = series + linalg.scale(np.kron(term_a, term_b), c)
        term_a = term_a.dot(ke)
        term_b = term_b.dot(fk)
        n += 1
    h = field.zeros((dim, dim))
    for i, m1 in enumerate(a.weights):
        for j, m2 in enumerate(b.weights):
            h[i * b.dim + j, i * b.dim + j] = field.q(2 * m1 * m2)
    return h.dot(series)


@dataclass(frozen=True, eq=False)
class BraidingOperator:
    l1: Fraction
    l2: Fraction
    field: QField
    r: np.ndarray
    sigma: np.ndarray
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def braiding_op(l1, l2, field: QField) -> BraidingOperator:
    l1, l2 = as_half_integer(l1), as_half_integer(l2)
    r = rmatrix(l1, l2, field)
    d1, d2 = int(2 * l1 + 1), int(2 * l2 + 1)
    sigma = flip(d1, d2, field)
    return BraidingOperator(l1, l2, field, r, sigma, sigma.dot(r))


def monodromy(l1, l2, field: QField) -> np.ndarray:
    """``R^t R`` with ``R^t = σ R σ``, the operator behind the quantum Lie algebra."""
    op = braiding_op(l1, l2, field)
    back = braiding_op(l2, l1, field)
    return back.matrix.dot(op.matrix)


def intertwining_residuals(l1, l2, field: QField) -> dict:
    """Residuals of ``R Δ(x) = σ Δ(x) σ R`` and of ``R̂`` commuting with the action."""
    op = braiding_op(l1, l2, field)
    a, b = build_irrep(l1, field), build_irrep(l2, field)
    ab, ba = tensor_rep(a, b), tensor_rep(b, a)
    out = {}
    for x in ("e", "f", "k"):
        lhs = op.r.dot(ab.act(x))
        rhs = op.sigma.T.dot(ba.act(x)).dot(op.sigma).dot(op.r)
        out[f"R Δ({x}) = Δop({x}) R"] = linalg.residual(lhs - rhs, field)
        com = op.matrix.dot(ab.act(x)) - ba.act(x).dot(op.matrix)
        out[f"R̂ Δ({x}) = Δ({x}) R̂"] = linalg.residual(com, field)
    return out


# ---------------------------------------------------------------------------
# spectral split


@dataclass(frozen=True, eq=False)
class Eigenspace:
    eigenvalue: object
    sign: int
    basis: np.ndarray
    components: tuple

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def spins(self) -> tuple:
        return tuple(c.spin for c in self.components)


@dataclass(frozen=True, eq=False)
class SpectralSplit:
    l: Fraction
    field: QField
    eigenspaces: tuple
    positive_projector: np.ndarray
    negative_projector: np.ndarray

    @property
    def positive(self) -> tuple:
        return tuple(s for s in self.eigenspaces if s.sign > 0)

    @property
    def negative(self) -> tuple:
        return tuple(s for s in self.eigenspaces if s.sign < 0)

    def basis(self, sign: int) -> np.ndarray:
        spaces = self.positive if sign > 0 else self.negative
        return np.concatenate([s.basis for s in spaces], axis=1)

    @property
    def positive_dim(self) -> int:
        return sum(s.dim for s in self.positive)

    @property
    def negative_dim(self) -> int:
        return sum(s.dim for s in self.negative)

    def component(self, spin) -> Component:
        for s in self.eigenspaces:
            for c in s.components:
                if c.spin == Fraction(spin):
                    return c
        raise KeyError(spin)


def closed_form_eigenvalue(l, j, field: QField):
    """``(-1)^(2l-j) q^(c(j) - 2c(l))`` with ``c(j) = j(j+1)``: R̂ on the V_j inside V_l ⊗ V_l."""
    l, j = Fraction(l), Fraction(j)
    sgn = -1 if int(2 * l - j) % 2 else 1
    return field.q(j * (j + 1) - 2 * l * (l + 1)) * sgn


def spectral_split(l, field: QField) -> SpectralSplit:
    l = as_half_integer(l)
    op = braiding_op(l, l, field)
    v = build_irrep(l, field)
    comps = decompose(tensor_rep(v, v))
    groups: list = []
    for comp in comps:
        hw = comp.basis[:, 0]
        image = op.matrix.dot(hw)
        i = next(i for i, x in enumerate(hw) if not field.is_zero_scalar(x))
        lam = image[i] * _inv(hw[i], field)
        resid = image - linalg.scale(hw, lam)
        if not field.is_zero(resid, tol=1e-9):
            raise ArithmeticError(f"highest-weight vector of spin {comp.spin} is not an R̂ eigenvector")
        if field.is_zero_scalar(lam, tol=MERGE_TOL):
            raise ArithmeticError("R̂ has a zero eigenvalue")
        for g in groups:
            if field.is_zero_scalar(g[0] - lam, tol=MERGE_TOL):
                g[1].append(comp)
                break
        else:
            groups.append([lam, [comp]])
    spaces = []
    for lam, cs in groups:
        # the sign is read off at q -> 1 where R̂ becomes the flip
        sgn = field.sign(lam)
        basis = np.concatenate([c.basis for c in cs], axis=1)
        spaces.append(Eigenspace(lam, sgn, basis, tuple(cs)))
    spaces.sort(key=lambda s: (-s.sign, -max(s.spins)))
    pos = _projector(op.matrix, [s.eigenvalue for s in spaces if s.sign > 0],
                     [s.eigenvalue for s in spaces if s.sign < 0], field)
    neg = field.eye(op.dim) - pos
    if not field.is_exact:
        _check_numeric_spectrum(op.matrix, spaces)
    return SpectralSplit(l, field, tuple(spaces), pos, neg)


def _projector(m, keep, drop, field: QField):
    """Sum of spectral projectors for ``keep``, via the annihilating polynomial."""
    n = m.shape[0]
    eye = field.eye(n)
    total = field.zeros((n, n))
    allv = list(keep) + list(drop)
    for lam in keep:
        p = eye
        for mu in allv:
            if mu is lam:
                continue
            p = linalg.scale(p.dot(m - linalg.scale(eye, mu)), _inv(lam - mu, field))
        total = total + p
    return total


def _check_numeric_spectrum(m, spaces):
    ev = np.sort(np.linalg.eigvalsh(m.astype(float)))
    expected = np.sort(np.concatenate([[float(s.eigenvalue)] * s.dim for s in spaces]))
    if not np.allclose(ev, expected, atol=1e-8):
        raise ArithmeticError("R̂ eigenvalues disagree with the component-wise values")


# ---------------------------------------------------------------------------
# generalized Hecke relations on V^{⊗N}


def apply_local(op: np.ndarray, d: int, n: int, i: int, vecs: np.ndarray) -> np.ndarray:
    """Apply a ``d^2 x d^2`` operator on legs ``i, i+1`` of ``(C^d)^{⊗n}`` to columns of ``vecs``."""
    cols = vecs.shape[1]
    t = vecs.reshape(d ** i, d * d, d ** (n - i - 2), cols)
    out = np.einsum("ab,ibjc->iajc", op, t) if vecs.dtype != object else np.tensordot(op, t, axes=([1], [1])).transpose(1, 0, 2, 3)
    return np.ascontiguousarray(out).reshape(d ** n, cols)


def _probe(dim: int, field: QField, seed: int = 0):
    if dim <= 256 or field.is_exact:
        return field.eye(dim)
    rng = np.random.default_rng(seed)
    return rng.standard_normal((dim, 32))


def verify_hecke(l, n: int, field: QField | None = None, tol: float = ABS_TOL) -> dict:
    """Braid relation, distant commutation and the characteristic polynomial on ``V_l^{⊗n}``.

    Operators are applied leg-wise, never assembled as ``d^n x d^n`` matrices.
    """
    field = field or QField.numeric(1.3)
    l = as_half_integer(l)
    split = spectral_split(l, field)
    rh = braiding_op(l, l, field).matrix
    d = int(2 * l + 1)
    dim = d ** n
    probe = _probe(dim, field)
    ap = lambda i, v: apply_local(rh, d, n, i, v)
    norm = lambda m: linalg.residual(m, field)
    report = {"l": str(l), "n": n, "field": str(field), "braid": {}, "distant": {}, "charpoly": {}}
    for i in range(n - 2):
        lhs = ap(i, ap(i + 1, ap(i, probe)))
        rhs = ap(i + 1, ap(i, ap(i + 1, probe)))
        report["braid"][f"{i + 1},{i + 2}"] = norm(lhs - rhs)
    for i in range(n - 1):
        for j in range(i + 2, n - 1):
            report["distant"][f"{i + 1},{j + 1}"] = norm(ap(i, ap(j, probe)) - ap(j, ap(i, probe)))
    eigs = [s.eigenvalue for s in split.eigenspaces]
    for i in range(n - 1):
        v = probe
        for lam in eigs:
            v = ap(i, v) - linalg.scale(v, lam)
        report["charpoly"][str(i + 1)] = norm(v)
    worst = max([0.0] + [r for key in ("braid", "distant", "charpoly") for r in report[key].values()])
    report["max_residual"] = worst
    report["ok"] = worst < tol
    # far from q = 1 the entries grow like q^(-2l(l+1)), so also report residuals
    # relative to the size of the products being compared
    if not field.is_exact:
        r = float(np.max(np.abs(rh)))
        scales = {"braid": r ** 3, "distant": r ** 2,
                  "charpoly": float(np.prod([r + abs(float(lam)) for lam in eigs]))}
        report["max_relative"] = max([0.0] + [v / scales[key] for key in scales for v in report[key].values()])
    return report
