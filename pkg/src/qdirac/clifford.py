"""The q-Clifford algebra of the adjoint module and its spin representation.

Generators ``ψ_1, ψ_0, ψ_-1`` are stored by index ``0, 1, 2`` (the adjoint
weight basis order). The ideal is spanned by ``u - B(u)`` for ``u`` in the
positive spectral subspace of ``V ⊗ V``. Words are compared degree first,
then as index tuples, so ``ψ_-1 > ψ_0 > ψ_1``; the normal words are then the
strictly increasing index sequences ``ψ_1^a ψ_0^b ψ_-1^c``.
"""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import product

import numpy as np

from . import linalg
from .algebra import PRIMARY_HOPF
from .braiding import SpectralSplit, spectral_split
from .invariant import GENERATORS, BilinearForm, adjoint_form
from .qscalar import QField
from .representation import Representation, build_irrep, decompose, dual_rep, tensor_rep

LABELS = ("ψ1", "ψ0", "ψ-1")
WEIGHTS = (1, 0, -1)
HALF = Fraction(1, 2)


class ConfluenceError(ArithmeticError):
    pass


def word_text(w) -> str:
    return "".join(LABELS[i] for i in w) or "1"


def _order_key(w):
    return (len(w), w)


def _add(out: dict, w, c, field: QField):
    v = out[w] + c if w in out else c
    if field.is_zero_scalar(v, 1e-13):
        out.pop(w, None)
    else:
        out[w] = v


def element_text(el: dict, field: QField) -> str:
    if not el:
        return "0"
    parts = []
    for w in sorted(el, key=_order_key):
        c = el[w]
        parts.append(f"({c})*{word_text(w)}" if w else f"({c})")
    return " + ".join(parts)


@dataclass(frozen=True, eq=False)
class CliffordAlgebra:
    """Quadratic rewrite system for ``T(V)/I``.

    ``rules`` maps each leading two-letter word to its replacement, a dict
    ``word -> coef`` of strictly smaller words.
    """

    field: QField
    rep: Representation
    form: BilinearForm
    split: SpectralSplit
    relations: tuple
    rules: dict

    # -- rewriting
    def _reducible_positions(self, w):
        return [i for i in range(len(w) - 1) if (w[i], w[i + 1]) in self.rules]

    def normal_form(self, el, strategy: str = "leftmost", rng: random.Random | None = None) -> dict:
        """Rewrite a word (tuple) or element (dict) to normal words."""
        fld = self.field
        if isinstance(el, (tuple, list)):
            el = {tuple(el): fld.one}
        todo = dict(el)
        done: dict = {}
        rng = rng or random.Random(0)
        while todo:
            w = max(todo, key=_order_key)
            c = todo.pop(w)
            pos = self._reducible_positions(w)
            if not pos:
                _add(done, w, c, fld)
                continue
            if strategy == "leftmost":
                i = pos[0]
            elif strategy == "rightmost":
                i = pos[-1]
            elif strategy == "random":
                i = rng.choice(pos)
            else:
                raise ValueError(f"unknown strategy {strategy!r}")
            for rw, rc in self.rules[(w[i], w[i + 1])].items():
                _add(todo, w[:i] + rw + w[i + 2:], c * rc, fld)
        return done

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for (w1, c1), (w2, c2) in product(a.items(), b.items()):
            _add(out, w1 + w2, c1 * c2, self.field)
        return self.normal_form(out)

    @cached_property
    def normal_words(self) -> tuple:
        words, frontier = [()], [()]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(3):
                    if not w or (w[-1], i) not in self.rules:
                        nxt.append(w + (i,))
            words += nxt
            frontier = nxt
            if len(words) > 64:
                raise ConfluenceError("normal words do not terminate")
        return tuple(sorted(words, key=_order_key))

    @property
    def dimension(self) -> int:
        return len(self.normal_words)

    def critical_pairs(self) -> list:
        """Overlaps ``abc`` with ``ab`` and ``bc`` both leading words, reduced both ways."""
        out = []
        for (a, b), (b2, c) in product(self.rules, self.rules):
            if b != b2:
                continue
            w = (a, b, c)
            left = self.normal_form(self._rewrite_at(w, 0))
            right = self.normal_form(self._rewrite_at(w, 1))
            diff = dict(left)
            for k, v in right.items():
                _add(diff, k, -v, self.field)
            out.append((w, left, right, not diff))
        return out

    def _rewrite_at(self, w, i) -> dict:
        out: dict = {}
        for rw, rc in self.rules[(w[i], w[i + 1])].items():
            _add(out, w[:i] + rw + w[i + 2:], rc, self.field)
        return out

    def check_confluence(self):
        for w, left, right, ok in self.critical_pairs():
            if not ok:
                raise ConfluenceError(
                    f"critical pair {word_text(w)}: {element_text(left, self.field)} != {element_text(right, self.field)}")

    def relation_images_vanish(self) -> bool:
        return all(not self.normal_form(r) for r in self.relations)

    # -- presentation
    def display_relations(self) -> list:
        """Relations per weight, each scaled so its first word (in lex order) has coefficient 1.

        Returns ``(weight, {word: coef}, constant)`` meaning ``Σ coef·word = constant``.
        """
        fld = self.field
        out = []
        mat = self._relation_matrix()
        for wt in (2, 1, 0, -1, -2):
            words = [w for w in _quad_words() if WEIGHTS[w[0]] + WEIGHTS[w[1]] == wt]
            cols = [_quad_words().index(w) for w in words]
            # only weight-zero relations carry a constant
            keep = [r for r in range(mat.shape[0]) if not fld.is_zero(mat[r, cols])]
            if not keep:
                continue
            sub = mat[keep][:, cols + [9]]
            nw = len(words)
            squares = [i for i, w in enumerate(words) if w[0] == w[1]]
            rest = [i for i in range(nw) if i not in squares]
            red, _ = linalg.rref(sub, fld, col_order=[nw] + squares + rest)
            for row in red:
                lead = next(i for i in sorted(range(nw), key=lambda i: words[i]) if not fld.is_zero_scalar(row[i]))
                inv = row[lead].inverse() if fld.is_exact else 1.0 / row[lead]
                coefs = {words[i]: row[i] * inv for i in range(nw) if not fld.is_zero_scalar(row[i])}
                out.append((wt, coefs, -(row[nw] * inv)))
        return out

    def _relation_matrix(self):
        fld = self.field
        rows = []
        for r in self.relations:
            rows.append([r.get(w, fld.zero) for w in _quad_words()] + [r.get((), fld.zero)])
        return fld.array(rows) if fld.is_exact else np.array(rows, dtype=float)

    def relations_text(self) -> list:
        out = []
        for _, coefs, const in self.display_relations():
            terms = []
            for w in sorted(coefs):
                c = coefs[w]
                terms.append(word_text(w) if _is_one(c, self.field) else f"({_scalar_text(c)}){word_text(w)}")
            out.append(" + ".join(terms) + f" = {_scalar_text(const)}")
        return out

    # -- covariance of the ideal
    def ideal_covariance(self) -> dict:
        """Normal form of ``x ▷ r`` for every generator and relation (all should vanish)."""
        fld = self.field
        vv = tensor_rep(self.rep, self.rep)
        out = {}
        for x in GENERATORS:
            worst = 0.0
            for r in self.relations:
                vec = fld.zeros(9)
                for i, w in enumerate(_quad_words()):
                    if w in r:
                        vec[i] = r[w]
                img = vv.act(x).dot(vec)
                el = {w: img[i] for i, w in enumerate(_quad_words()) if not fld.is_zero_scalar(img[i])}
                if () in r:
                    el[()] = r[()] * PRIMARY_HOPF.counit(x)
                nf = self.normal_form(el)
                if nf:
                    worst = max(worst, max(linalg.residual(np.array([v], dtype=object if fld.is_exact else float), fld)
                                           for v in nf.values()))
            out[x] = worst
        return out

    def corrupted(self) -> "CliffordAlgebra":
        """Copy with the sign of one coefficient flipped (negative control)."""
        rules = dict(self.rules)
        key = (1, 0)
        rules[key] = {w: -c for w, c in rules[key].items()}
        rels = list(self.relations)
        rels = [dict(r) for r in rels]
        for r in rels:
            if (1, 0) in r and (0, 1) in r:
                r[(1, 0)] = -r[(1, 0)]
        return replace(self, rules=rules, relations=tuple(rels))


def _is_one(c, field: QField) -> bool:
    return field.is_zero_scalar(c - field.one, 1e-12)


def _scalar_text(c) -> str:
    if isinstance(c, (float, np.floating)):
        return repr(round(float(c), 12) + 0.0)
    return str(c)


def _quad_words():
    return [(i, j) for i in range(3) for j in range(3)]


def build_clifford(field: QField, form: BilinearForm | None = None, split: SpectralSplit | None = None) -> CliffordAlgebra:
    """Relations ``u - B(u)`` from the positive part of ``V ⊗ V``, then the rewrite rules."""
    form = form or adjoint_form(field)
    split = split or spectral_split(1, field)
    rep = form.rep
    words = _quad_words()
    pos = split.basis(+1)
    relations = []
    for c in range(pos.shape[1]):
        u = pos[:, c]
        el = {w: u[i] for i, w in enumerate(words) if not field.is_zero_scalar(u[i], 1e-13)}
        const = form.contract(u)
        if not field.is_zero_scalar(const, 1e-13):
            el[()] = -const
        relations.append(el)
    rows = [[r.get(w, field.zero) for w in words] + [r.get((), field.zero)] for r in relations]
    mat = field.array(rows) if field.is_exact else np.array(rows, dtype=float)
    # columns in descending word order, constant last
    desc = sorted(range(9), key=lambda i: words[i], reverse=True) + [9]
    red, pivots = linalg.rref(mat, field, col_order=desc)
    rules = {}
    for row, p in zip(red, pivots):
        if p == 9:
            raise ConfluenceError("relations force 1 = 0")
        lead = words[p]
        rhs = {}
        for i in range(9):
            if i != p and not field.is_zero_scalar(row[i], 1e-13):
                if _order_key(words[i]) > _order_key(lead):
                    raise ConfluenceError(f"rule for {word_text(lead)} is not decreasing")
                rhs[words[i]] = -row[i]
        if not field.is_zero_scalar(row[9], 1e-13):
            rhs[()] = -row[9]
        rules[lead] = rhs
    alg = CliffordAlgebra(field, rep, form, split, tuple(relations), rules)
    alg.check_confluence()
    return alg


def reference_relations(field: QField, b=-1) -> list:
    """The six quadratic relations of the su(2) q-Clifford algebra in closed form,
    as ``(name, {word: coef}, constant)``."""
    q = field.q
    one = field.one
    two = field.qint(2)
    return [
        ("ψ1ψ1 = 0", {(0, 0): one}, field.zero),
        ("ψ-1ψ-1 = 0", {(2, 2): one}, field.zero),
        ("q^-1 ψ1ψ0 + q ψ0ψ1 = 0", {(0, 1): q(-1), (1, 0): q(1)}, field.zero),
        ("q^-2 ψ1ψ-1 + [2] ψ0ψ0 + q^2 ψ-1ψ1 = 0", {(0, 2): q(-2), (1, 1): two, (2, 0): q(2)}, field.zero),
        ("ψ0ψ-1 + q^2 ψ-1ψ0 = 0", {(1, 2): one, (2, 1): q(2)}, field.zero),
        ("ψ1ψ-1 + ψ-1ψ1 = b", {(0, 2): one, (2, 0): one}, field.const(b)),
    ]


def compare_relations(alg: CliffordAlgebra, b=-1, tol: float = 1e-10) -> dict:
    """For each reference relation: is it a multiple of some displayed relation?"""
    fld = alg.field
    disp = alg.display_relations()
    out = {}
    for name, coefs, const in reference_relations(fld, b):
        found = False
        for _, dc, dconst in disp:
            if set(dc) != set(coefs):
                continue
            w0 = next(iter(sorted(coefs)))
            ratio = coefs[w0] * (dc[w0].inverse() if fld.is_exact else 1.0 / dc[w0])
            ok = all(fld.is_zero_scalar(coefs[w] - ratio * dc[w], tol) for w in coefs)
            ok = ok and fld.is_zero_scalar(const - ratio * dconst, tol)
            if ok:
                found = True
                break
        out[name] = found
    return out


# ---------------------------------------------------------------------------
# spin representation


@dataclass(frozen=True, eq=False)
class SpinRepresentation:
    algebra: CliffordAlgebra
    sigma: Representation
    psi: tuple

    @property
    def field(self) -> QField:
        return self.algebra.field

    def word(self, w) -> np.ndarray:
        out = self.field.eye(2)
        for i in w:
            out = out.dot(self.psi[i])
        return out

    def image(self, el: dict) -> np.ndarray:
        out = self.field.zeros((2, 2))
        for w, c in el.items():
            out = out + linalg.scale(self.word(w), c)
        return out

    def gamma(self, v) -> np.ndarray:
        """``s(γ(v))`` for a vector ``v`` of the adjoint module."""
        out = self.field.zeros((2, 2))
        for i in range(3):
            out = out + linalg.scale(self.psi[i], v[i])
        return out

    def relation_residuals(self) -> list:
        return [linalg.residual(self.image(r), self.field) for r in self.algebra.relations]

    def equivariance_residuals(self) -> dict:
        """``s(γ(x ▷ v_i)) = σ(x') s(ψ_i) σ(S(x''))`` for generators ``x``."""
        fld = self.field
        rho = self.algebra.rep
        out = {}
        for x in GENERATORS:
            worst = 0.0
            for i in range(3):
                lhs = self.gamma(rho.act(x)[:, i])
                rhs = fld.zeros((2, 2))
                for a, b in PRIMARY_HOPF.legs(x):
                    c, sb = PRIMARY_HOPF.antipode(b, fld)
                    rhs = rhs + linalg.scale(self.sigma.act(a).dot(self.psi[i]).dot(self.sigma.act(sb)), c)
                worst = max(worst, linalg.residual(lhs - rhs, fld))
            out[x] = worst
        return out

    def negated(self) -> "SpinRepresentation":
        return SpinRepresentation(self.algebra, self.sigma, tuple(linalg.scale(p, -1) for p in self.psi))


def endomorphism_module(sigma: Representation) -> Representation:
    """``End(Σ) ≅ Σ ⊗ Σ*`` with ``x · T = σ(x') T σ(S(x''))`` (row-major vec)."""
    return tensor_rep(sigma, dual_rep(sigma))


def spin_representation(alg: CliffordAlgebra, b=-1) -> SpinRepresentation:
    """Solve the equivariance condition on ``Σ = V_1/2``.

    The spin-1 summand of ``End(Σ)`` fixes ``s(ψ_m)`` up to one scalar ``c``;
    ``c^2`` comes from ``ψ1ψ-1 + ψ-1ψ1 = b`` and the sign is taken positive.
    """
    fld = alg.field
    sigma = build_irrep(HALF, fld)
    comps = [c for c in decompose(endomorphism_module(sigma)) if c.spin == 1]
    if len(comps) != 1:
        raise ArithmeticError("End(Σ) must contain exactly one adjoint copy")
    raw = tuple(comps[0].basis[:, i].reshape(2, 2) for i in range(3))
    anti = raw[0].dot(raw[2]) + raw[2].dot(raw[0])
    mu = anti[0, 0]
    if not fld.is_zero(anti - linalg.scale(fld.eye(2), mu)):
        raise ArithmeticError("anticommutator is not central")
    c2 = fld.const(b) * (mu.inverse() if fld.is_exact else 1.0 / mu)
    c = fld.sqrt(c2)
    spin = SpinRepresentation(alg, sigma, tuple(linalg.scale(m, c) for m in raw))
    bad = [r for r in spin.relation_residuals() if r > 1e-10]
    if bad:
        raise ArithmeticError("spin matrices violate the Clifford relations")
    return spin


def reference_spin_matrices(field: QField) -> tuple:
    """``s(ψ_1), s(ψ_0), s(ψ_-1)`` in closed form."""
    r2 = field.sqrt(field.qint(2))
    inv_r2 = r2.inverse() if field.is_exact else 1.0 / r2
    p1 = field.zeros((2, 2))
    p1[0, 1] = field.q(HALF)
    p0 = field.zeros((2, 2))
    p0[0, 0] = -field.q(-1) * inv_r2
    p0[1, 1] = field.q(1) * inv_r2
    pm = field.zeros((2, 2))
    pm[1, 0] = -field.q(-HALF)
    return p1, p0, pm


def verify_algebra_isomorphism(alg: CliffordAlgebra, spin: SpinRepresentation | None = None) -> dict:
    """Dimension 8, ``s`` onto the 2x2 matrices, and ``s ⊕ s'`` injective."""
    fld = alg.field
    spin = spin or spin_representation(alg)
    neg = spin.negated()
    words = alg.normal_words
    flat = lambda s: np.stack([s.word(w).reshape(-1) for w in words], axis=1)
    img = flat(spin)
    both = np.concatenate([img, flat(neg)], axis=0)
    rank_s = linalg.rank(img, fld)
    rank_both = linalg.rank(both, fld)
    end_spins = sorted(c.spin for c in decompose(endomorphism_module(spin.sigma)))
    neg_ok = all(r <= 1e-10 for r in neg.relation_residuals())
    return {
        "dimension": len(words),
        "rank_s": rank_s,
        "kernel_s": len(words) - rank_s,
        "rank_s_plus_s_neg": rank_both,
        "negated_satisfies_relations": neg_ok,
        "end_sigma_spins": [str(s) for s in end_spins],
        "ok": len(words) == 8 and rank_s == 4 and rank_both == 8 and neg_ok,
    }
