"""Intertwiners, the invariant bilinear form on a self-dual module, and the
invariant vector of ``V ⊗ V*``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import PRIMARY_HOPF, HopfStructure
from .qscalar import ABS_TOL, QField
from .representation import Representation, build_irrep, dual_rep, tensor_rep

GENERATORS = ("e", "f", "k")


class SchurError(ArithmeticError):
    """The intertwiner space between two irreducibles is more than one-dimensional."""


class NotSelfDual(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Intertwiner:
    src: Representation
    tgt: Representation
    matrix: np.ndarray

    def residuals(self) -> dict:
        fld = self.src.field
        return {x: linalg.residual(self.matrix.dot(self.src.act(x)) - self.tgt.act(x).dot(self.matrix), fld)
                for x in GENERATORS}


def _normalize(m, field: QField):
    lead = linalg.first_nonzero(m, field)
    if field.is_exact:
        return linalg.scale(m, lead.inverse())
    big = float(np.max(np.abs(m)))
    return m * (np.sign(lead) / big)


def intertwiner_space(src: Representation, tgt: Representation, tol: float = 1e-9) -> list:
    """Basis of ``{T : T π_src(x) = π_tgt(x) T}`` as matrices."""
    fld = src.field
    if src.field != tgt.field:
        raise ValueError("mixed scalar modes")
    n, m = src.dim, tgt.dim
    blocks = []
    for x in GENERATORS:
        # row-major vec: vec(T A) = (I ⊗ A^T) vec T, vec(B T) = (B ⊗ I) vec T
        blocks.append(np.kron(fld.eye(m), src.act(x).T) - np.kron(tgt.act(x), fld.eye(n)))
    ker = linalg.nullspace(np.concatenate(blocks, axis=0), fld, tol=tol)
    return [ker[:, c].reshape(m, n) for c in range(ker.shape[1])]


def solve_intertwiner(src: Representation, tgt: Representation, tol: float = 1e-9) -> Intertwiner | None:
    """The unique-up-to-scale module map ``src -> tgt``, or ``None``.

    Exact results have first nonzero entry 1; numeric ones have largest entry
    of magnitude 1 and positive first nonzero entry.
    """
    if src.dim != tgt.dim:
        return None
    space = intertwiner_space(src, tgt, tol)
    if not space:
        return None
    if len(space) > 1:
        raise SchurError(f"intertwiner space has dimension {len(space)}")
    return Intertwiner(src, tgt, _normalize(space[0], src.field))


def tau_matrix(field: QField) -> np.ndarray:
    """The explicit isomorphism ``V* -> V`` for the adjoint module.

    Columns are indexed by ``|1>*, |0>*, |-1>*``, rows by ``|1>, |0>, |-1>``:
    ``|1>* -> -q[2]|-1>``, ``|0>* -> [2]|0>``, ``|-1>* -> -q^-1[2]|1>``.
    """
    t = field.zeros((3, 3))
    two = field.qint(2)
    t[2, 0] = -field.q(1) * two
    t[1, 1] = two
    t[0, 2] = -field.q(-1) * two
    return t


# ---------------------------------------------------------------------------
# bilinear form


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """``B(v_i ⊗ v_j) = matrix[i, j]``."""

    rep: Representation
    matrix: np.ndarray

    @property
    def field(self) -> QField:
        return self.rep.field

    def __call__(self, v, w):
        return linalg.dot(np.asarray(v), self.matrix.dot(np.asarray(w)), self.field)

    def contract(self, u):
        """``B`` applied to a vector of ``V ⊗ V``."""
        return linalg.dot(self.matrix.reshape(-1), u, self.field)

    def phi(self) -> np.ndarray:
        """Matrix of ``v -> B(v ⊗ ·)`` from ``V`` to ``V*``."""
        return self.matrix.T.copy()

    def invariance_residuals(self) -> dict:
        fld = self.field
        vv = tensor_rep(self.rep, self.rep)
        b = self.matrix.reshape(-1)
        out = {}
        for x in GENERATORS:
            eps = PRIMARY_HOPF.counit(x)
            out[x] = linalg.residual(vv.act(x).T.dot(b) - linalg.scale(b, eps), fld)
        return out

    def phi_residuals(self) -> dict:
        return Intertwiner(self.rep, dual_rep(self.rep), self.phi()).residuals()

    def det(self):
        return linalg.det(self.matrix, self.field)


def invariance_system(rep: Representation) -> np.ndarray:
    """Rows of ``b · ((π⊗π)Δ(x) - ε(x)) = 0``, unknowns ``b = vec B``."""
    fld = rep.field
    vv = tensor_rep(rep, rep)
    eye = fld.eye(vv.dim)
    return np.concatenate([vv.act(x).T - linalg.scale(eye, PRIMARY_HOPF.counit(x)) for x in GENERATORS], axis=0)


def form_solution_space(rep: Representation, tol: float = 1e-9) -> np.ndarray:
    return linalg.nullspace(invariance_system(rep), rep.field, tol=tol)


def _normalize_form(b, field: QField):
    """Scale so ``B(top ⊗ bottom) + B(bottom ⊗ top) = -1`` when that sum is nonzero."""
    n = b.shape[0]
    s = b[0, n - 1] + b[n - 1, 0]
    if field.is_zero_scalar(s):
        return _normalize(b, field)
    inv = s.inverse() if field.is_exact else 1.0 / s
    return linalg.scale(b, -inv)


def invariant_form(rep: Representation, tol: float = 1e-9) -> BilinearForm:
    """The invariant form, found both from ``V -> V*`` and from the invariance system."""
    fld = rep.field
    phi = solve_intertwiner(rep, dual_rep(rep), tol)
    if phi is None:
        raise NotSelfDual(f"{rep.label} is not isomorphic to its dual")
    b1 = _normalize_form(phi.matrix.T.copy(), fld)
    sol = form_solution_space(rep, tol)
    if sol.shape[1] != 1:
        raise SchurError(f"invariance system has a {sol.shape[1]}-dimensional solution space")
    b2 = _normalize_form(sol[:, 0].reshape(rep.dim, rep.dim), fld)
    if not fld.is_zero(b1 - b2, tol=1e-8):
        raise ArithmeticError("the two constructions of the invariant form disagree")
    return BilinearForm(rep, b1)


def adjoint_form(field: QField) -> BilinearForm:
    return invariant_form(build_irrep(1, field))


# ---------------------------------------------------------------------------
# invariant vector


def invariant_vector(rep: Representation) -> np.ndarray:
    """``Ω = Σ_i v_i ⊗ v_i*`` in ``V ⊗ V*``."""
    fld = rep.field
    return fld.eye(rep.dim).reshape(-1).copy()


def invariant_vector_residuals(rep: Representation, hopf: HopfStructure = PRIMARY_HOPF) -> dict:
    fld = rep.field
    vd = tensor_rep(rep, dual_rep(rep, hopf), hopf)
    omega = invariant_vector(rep)
    return {x: linalg.residual(vd.act(x).dot(omega) - linalg.scale(omega, hopf.counit(x)), fld)
            for x in GENERATORS + ("K",)}


def killing_gram() -> np.ndarray:
    """Trace form ``tr(XY)`` in the fundamental representation on the basis
    ``E, -H/sqrt(2), -F`` of sl(2), the q = 1 counterpart of the adjoint weight basis."""
    e = np.array([[0.0, 1.0], [0.0, 0.0]])
    h = np.diag([1.0, -1.0])
    basis = [e, -h / np.sqrt(2.0), -e.T]
    return np.array([[np.trace(a @ b) for b in basis] for a in basis])


__all__ = [
    "ABS_TOL", "BilinearForm", "Intertwiner", "NotSelfDual", "SchurError", "adjoint_form",
    "form_solution_space", "intertwiner_space", "invariance_system", "invariant_form",
    "invariant_vector", "invariant_vector_residuals", "killing_gram", "solve_intertwiner", "tau_matrix",
]
