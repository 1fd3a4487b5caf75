"""Symbolic elements of U_q(su(2)) and its two Hopf structures.

Words are tuples over the letters ``e``, ``f``, ``k`` and ``K`` (= k^-1).
Normal ordering uses the PBW basis ``f^a k^b e^c`` (``b`` any integer) with

    k e = q e k,   k f = q^-1 f k,   e f - f e = (k^2 - k^-2) / (q - q^-1).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

import numpy as np

from .qscalar import QField

LETTERS = ("e", "f", "k", "K")
PRIMARY = "primary"
OPPOSITE = "opposite"

_PRIMARY_LEGS = {
    "e": (("e", "k"), ("K", "e")),
    "f": (("f", "k"), ("K", "f")),
    "k": (("k", "k"),),
    "K": (("K", "K"),),
}


@dataclass(frozen=True)
class HopfStructure:
    """Coproduct, antipode and counit on the generators.

    The primary structure has ``Δ(e) = e⊗k + k^-1⊗e``, ``S(e) = -q e``,
    ``S(f) = -q^-1 f``; the opposite one flips every coproduct and uses
    ``S(e) = -q^-1 e``, ``S(f) = -q f``.
    """

    variant: str = PRIMARY

    def __post_init__(self):
        if self.variant not in (PRIMARY, OPPOSITE):
            raise ValueError(f"unknown Hopf structure {self.variant!r}")

    def legs(self, letter: str) -> tuple[tuple[str, str], ...]:
        legs = _PRIMARY_LEGS[letter]
        if self.variant == OPPOSITE:
            legs = tuple((b, a) for a, b in legs)
        return legs

    def antipode(self, letter: str, field: QField):
        """``S(letter) = coef * other_letter``."""
        sgn = 1 if self.variant == PRIMARY else -1
        if letter == "e":
            return -field.q(sgn), "e"
        if letter == "f":
            return -field.q(-sgn), "f"
        if letter == "k":
            return field.one, "K"
        if letter == "K":
            return field.one, "k"
        raise KeyError(letter)

    @staticmethod
    def counit(letter: str) -> int:
        return 1 if letter in ("k", "K") else 0

    def iterated_legs(self, letter: str, n: int) -> tuple[tuple[str, ...], ...]:
        """Sweedler legs of the n-fold coproduct of a generator (all coefficients 1)."""
        if n < 1:
            raise ValueError("need at least one leg")
        out = ((letter,),)
        for _ in range(n - 1):
            out = tuple(w[:-1] + leg for w in out for leg in self.legs(w[-1]))
        return out


PRIMARY_HOPF = HopfStructure(PRIMARY)
OPPOSITE_HOPF = HopfStructure(OPPOSITE)


@dataclass
class AlgebraElement:
    """Noncommutative polynomial in e, f, k, k^-1 with field coefficients."""

    field: QField
    terms: dict = dc_field(default_factory=dict)

    @classmethod
    def gen(cls, letter: str, field: QField) -> "AlgebraElement":
        if letter not in LETTERS:
            raise KeyError(letter)
        return cls(field, {(letter,): field.one})

    @classmethod
    def word(cls, word, field: QField, coef=None) -> "AlgebraElement":
        return cls(field, {tuple(word): field.one if coef is None else coef})

    @classmethod
    def scalar(cls, c, field: QField) -> "AlgebraElement":
        return cls(field, {(): field.const(c) if not isinstance(c, float) else c})

    def _clean(self):
        self.terms = {w: c for w, c in self.terms.items() if not self.field.is_zero_scalar(c, 0.0)}
        return self

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.scalar(other, self.field)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return AlgebraElement(self.field, out)._clean()

    def __neg__(self):
        return AlgebraElement(self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            out: dict = {}
            for (w1, c1), (w2, c2) in product(self.terms.items(), other.terms.items()):
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
            return AlgebraElement(self.field, out)._clean()
        return AlgebraElement(self.field, {w: c * other for w, c in self.terms.items()})._clean()

    def __rmul__(self, other):
        return AlgebraElement(self.field, {w: other * c for w, c in self.terms.items()})._clean()

    # -- Hopf maps
    def antipode(self, hopf: HopfStructure = PRIMARY_HOPF) -> "AlgebraElement":
        out = AlgebraElement(self.field)
        for w, c in self.terms.items():
            coef = c
            letters = []
            for letter in reversed(w):
                s, img = hopf.antipode(letter, self.field)
                coef = coef * s
                letters.append(img)
            out = out + AlgebraElement(self.field, {tuple(letters): coef})
        return out

    def counit(self):
        acc = self.field.zero
        for w, c in self.terms.items():
            if all(HopfStructure.counit(x) for x in w):
                acc = acc + c
        return acc

    def coproduct(self, hopf: HopfStructure = PRIMARY_HOPF, legs: int = 2) -> dict:
        """``legs``-fold coproduct as ``{(word_1, ..., word_n): coef}``."""
        out: dict = {}
        for w, c in self.terms.items():
            pieces = [hopf.iterated_legs(x, legs) for x in w]
            for choice in product(*pieces):
                key = tuple(tuple(ch[i] for ch in choice) for i in range(legs))
                out[key] = out[key] + c if key in out else c
        return out

    # -- normal ordering
    def pbw(self) -> dict:
        """Coefficients in the PBW basis ``{(a, b, c): coef}`` for ``f^a k^b e^c``."""
        out: dict = {}
        for w, c in self.terms.items():
            for key, v in _pbw_word(w, self.field).items():
                v = v * c
                out[key] = out[key] + v if key in out else v
        return {k: v for k, v in out.items() if not self.field.is_zero_scalar(v, 0.0)}

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(self.field.is_zero_scalar(v, tol) for v in self.pbw().values())

    def evaluate(self, rep) -> np.ndarray:
        """Matrix of this element in a representation (anything with ``.act``)."""
        out = rep.field.zeros((rep.dim, rep.dim))
        for w, c in self.terms.items():
            out = out + rep.word(w) * c if w else out + rep.field.eye(rep.dim) * c
        return out

    def __repr__(self):
        parts = [f"({c})*{''.join(w) or '1'}" for w, c in self.terms.items()]
        return " + ".join(parts) if parts else "0"


def e_(field: QField) -> AlgebraElement:
    return AlgebraElement.gen("e", field)


def f_(field: QField) -> AlgebraElement:
    return AlgebraElement.gen("f", field)


def k_(field: QField) -> AlgebraElement:
    return AlgebraElement.gen("k", field)


def kinv_(field: QField) -> AlgebraElement:
    return AlgebraElement.gen("K", field)


def adjoint(x: AlgebraElement, y: AlgebraElement, hopf: HopfStructure = PRIMARY_HOPF) -> AlgebraElement:
    """``x_(1) y S(x_(2))`` for the given Hopf structure.

    With the opposite structure this is ``x'' y S^op(x')`` in primary Sweedler
    notation.
    """
    field = y.field
    out = AlgebraElement(field)
    for (w1, w2), c in x.coproduct(hopf).items():
        left = AlgebraElement.word(w1, field, c)
        right = AlgebraElement.word(w2, field).antipode(hopf)
        out = out + left * y * right
    return out


def pbw_equal(x: AlgebraElement, y: AlgebraElement, tol: float = 0.0) -> bool:
    return (x - y).is_zero(tol)


# ---------------------------------------------------------------------------
# PBW rewriting


def _add_into(out: dict, key, v):
    out[key] = out[key] + v if key in out else v


def _pbw_word(word: tuple, field: QField) -> dict:
    if field.is_classical:
        raise ValueError("PBW normal ordering divides by q - q^-1 and is undefined at q = 1")
    return _pbw_word_cached(word, field)


@lru_cache(maxsize=None)
def _pbw_word_cached(word: tuple, field: QField) -> dict:
    if not word:
        return {(0, 0, 0): field.one}
    prefix = _pbw_word_cached(word[:-1], field)
    out: dict = {}
    for key, c in prefix.items():
        for k2, v in _pbw_times_letter(key, word[-1], field).items():
            _add_into(out, k2, c * v)
    return {k: v for k, v in out.items() if not field.is_zero_scalar(v, 0.0)}


@lru_cache(maxsize=None)
def _pbw_times_letter(key: tuple, letter: str, field: QField) -> dict:
    a, b, c = key
    if letter == "e":
        return {(a, b, c + 1): field.one}
    if letter == "k":
        return {(a, b + 1, c): field.q(-c)}
    if letter == "K":
        return {(a, b - 1, c): field.q(c)}
    if letter != "f":
        raise KeyError(letter)
    if c == 0:
        return {(a + 1, b, 0): field.q(-b)}
    # ... e^(c-1) (f e + (k^2 - k^-2)/(q - q^-1))
    out: dict = {}
    base = (a, b, c - 1)
    for k2, v in _pbw_times_letter(base, "f", field).items():
        for k3, w in _pbw_times_letter(k2, "e", field).items():
            _add_into(out, k3, v * w)
    inv = (field.q(1) - field.q(-1)) ** -1 if field.is_exact else 1.0 / (field.q(1) - field.q(-1))
    for sgn, lt in ((1, "k"), (-1, "K")):
        for k2, v in _pbw_times_letter(base, lt, field).items():
            for k3, w in _pbw_times_letter(k2, lt, field).items():
                _add_into(out, k3, v * w * inv * sgn)
    return {k: v for k, v in out.items() if not field.is_zero_scalar(v, 0.0)}


def pbw_element(coeffs: dict, field: QField) -> AlgebraElement:
    """Rebuild an AlgebraElement from PBW coefficients."""
    out = AlgebraElement(field)
    for (a, b, c), v in coeffs.items():
        kpart = ("k",) * b if b >= 0 else ("K",) * (-b)
        out = out + AlgebraElement.word(("f",) * a + kpart + ("e",) * c, field, v)
    return out
