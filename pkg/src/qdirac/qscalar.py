"""Scalars in the deformation parameter q.

Two modes share the :class:`QValue` type:

* exact: ``a + b*sqrt(r)`` where ``a``, ``b`` are reduced Laurent-rational
  functions of q with rational coefficients and ``r`` is a normalized
  square-free radicand (or absent);
* numeric: a float together with the evaluation point ``q0``.

Matrix code does not work with QValue in numeric mode; it goes through
:class:`QField`, which hands out QValues (exact) or plain floats (numeric).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

ABS_TOL = 1e-10
REL_TOL = 1e-12

Coeffs = tuple  # tuple[Fraction, ...], lowest degree first, no trailing zeros
Number = Union[int, Fraction]

_ZERO: Coeffs = ()
_ONE: Coeffs = (Fraction(1),)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q


def _trim(c) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def pneg(a: Coeffs) -> Coeffs:
    return tuple(-x for x in a)


def psub(a: Coeffs, b: Coeffs) -> Coeffs:
    return padd(a, pneg(b))


def pscale(a: Coeffs, c: Fraction) -> Coeffs:
    if c == 0:
        return _ZERO
    return tuple(x * c for x in a)


def pmul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def pdivmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return _ZERO, a
    rem = list(a)
    lead = b[-1]
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return _trim(quo), _trim(rem[: len(b) - 1])


def pexactdiv(a: Coeffs, b: Coeffs) -> Coeffs:
    quo, rem = pdivmod(a, b)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quo


def pmonic(a: Coeffs) -> Coeffs:
    if not a:
        return a
    return pscale(a, 1 / a[-1])


def pgcd(a: Coeffs, b: Coeffs) -> Coeffs:
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, pmonic(pdivmod(a, b)[1])
    return pmonic(a)


def pderiv(a: Coeffs) -> Coeffs:
    return _trim(i * x for i, x in enumerate(a) if i > 0)


def peval(a: Coeffs, x):
    acc = 0.0 if isinstance(x, float) else Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: Coeffs) -> list[tuple[Coeffs, int]]:
    """Yun's algorithm: monic factors ``a_i`` with ``p = lc * prod a_i^i``."""
    out = []
    f = pmonic(p)
    if len(f) <= 1:
        return out
    fp = pderiv(f)
    a0 = pgcd(f, fp)
    b = pexactdiv(f, a0)
    c = pexactdiv(fp, a0)
    d = psub(c, pderiv(b))
    i = 1
    while len(b) > 1:
        a = pgcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = pexactdiv(b, a)
        c = pexactdiv(d, a)
        d = psub(c, pderiv(b))
        i += 1
    return out


def primitive_int(p: Coeffs) -> tuple[Fraction, tuple[int, ...]]:
    """Split ``p = content * prim`` with ``prim`` integral, primitive, positive lead."""
    den = 1
    for x in p:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in p]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), tuple(x // g for x in ints)


def _squarefree_int(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n = k*k*m`` and ``m`` square-free (``n > 0``)."""
    k, m = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            k *= d
        if n % d == 0:
            n //= d
            m *= d
        d += 1
    return k, m * n


# ---------------------------------------------------------------------------
# Laurent-rational functions


class RationalFunction:
    """``q**shift * num(q) / den(q)`` in canonical reduced form.

    ``num`` and ``den`` are coprime, neither vanishes at q = 0 and ``den(0) == 1``
    (the lowest-degree coefficient of the denominator is 1).
    """

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, shift: int, num: Coeffs, den: Coeffs = _ONE, *, _canonical=False):
        if not _canonical:
            shift, num, den = _canonicalize(shift, tuple(num), tuple(den))
        self.shift = shift
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def const(cls, c: Number) -> "RationalFunction":
        c = Fraction(c)
        if c == 0:
            return RF_ZERO
        return cls(0, (c,), _ONE, _canonical=True)

    @classmethod
    def monomial(cls, power: int, c: Number = 1) -> "RationalFunction":
        c = Fraction(c)
        if c == 0:
            return RF_ZERO
        return cls(power, (c,), _ONE, _canonical=True)

    @classmethod
    def laurent(cls, coeffs: dict[int, Number]) -> "RationalFunction":
        if not coeffs:
            return RF_ZERO
        lo = min(coeffs)
        hi = max(coeffs)
        return cls(lo, tuple(Fraction(coeffs.get(i, 0)) for i in range(lo, hi + 1)))

    # -- predicates
    def is_zero(self) -> bool:
        return not self.num

    def is_laurent(self) -> bool:
        return self.den == _ONE

    def is_const(self) -> bool:
        return self.den == _ONE and (not self.num or (len(self.num) == 1 and self.shift == 0))

    # -- arithmetic
    def __neg__(self):
        return RationalFunction(self.shift, pneg(self.num), self.den, _canonical=True)

    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        if not self.num:
            return other
        if not other.num:
            return self
        s = min(self.shift, other.shift)
        a = (Fraction(0),) * (self.shift - s) + self.num
        b = (Fraction(0),) * (other.shift - s) + other.num
        if self.den == other.den:
            return RationalFunction(s, padd(a, b), self.den)
        g = pgcd(self.den, other.den)
        da = pexactdiv(self.den, g)
        db = pexactdiv(other.den, g)
        num = padd(pmul(a, db), pmul(b, da))
        return RationalFunction(s, num, pmul(da, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RF_ZERO
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d2 != _ONE:
            g = pgcd(n1, d2)
            if len(g) > 1:
                n1, d2 = pexactdiv(n1, g), pexactdiv(d2, g)
        if d1 != _ONE:
            g = pgcd(n2, d1)
            if len(g) > 1:
                n2, d1 = pexactdiv(n2, g), pexactdiv(d1, g)
        num = pmul(n1, n2)
        den = pmul(d1, d2)
        c = den[0]
        if c != 1:
            num, den = pscale(num, 1 / c), pscale(den, 1 / c)
        return RationalFunction(self.shift + other.shift, num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        c = self.num[0]
        return RationalFunction(-self.shift, pscale(self.den, 1 / c), pscale(self.num, 1 / c), _canonical=True)

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_rf(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison
    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return False
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, self.num, self.den))
        return self._hash

    # -- evaluation
    def __call__(self, q0: float) -> float:
        return float(q0) ** self.shift * float(peval(self.num, float(q0))) / float(peval(self.den, float(q0)))

    def at_one(self) -> Fraction:
        d = peval(self.den, Fraction(1))
        if d == 0:
            raise ZeroDivisionError(f"pole at q=1: {self}")
        return peval(self.num, Fraction(1)) / d

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if not self.num:
            return "0"
        top = _laurent_text(self.shift, self.num)
        if self.den == _ONE:
            return top
        return f"({top})/({_laurent_text(0, self.den)})"


def _canonicalize(shift, num, den):
    num = _trim(Fraction(x) for x in num)
    den = _trim(Fraction(x) for x in den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return 0, _ZERO, _ONE
    k = 0
    while num[k] == 0:
        k += 1
    num = num[k:]
    shift += k
    k = 0
    while den[k] == 0:
        k += 1
    den = den[k:]
    shift -= k
    if len(den) > 1:
        g = pgcd(num, den)
        if len(g) > 1:
            num, den = pexactdiv(num, g), pexactdiv(den, g)
    c = den[0]
    if c != 1:
        num, den = pscale(num, 1 / c), pscale(den, 1 / c)
    return shift, num, den


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.const(x)
    return NotImplemented


def _term_text(c: Fraction, e: int) -> str:
    if e == 0:
        return str(c)
    mono = "q" if e == 1 else f"q^{e}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _laurent_text(shift: int, coeffs: Coeffs) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        t = _term_text(c, shift + i)
        if parts and not t.startswith("-"):
            t = "+" + t
        parts.append(t)
    return "".join(parts) if parts else "0"


RF_ZERO = RationalFunction(0, _ZERO, _ONE, _canonical=True)
RF_ONE = RationalFunction(0, _ONE, _ONE, _canonical=True)


# ---------------------------------------------------------------------------
# square-free radicands


@dataclass(frozen=True)
class Radical:
    """``sqrt(q**qexp * n * poly(q))`` with ``qexp`` in {0, 1}, ``n > 0`` a
    square-free integer and ``poly`` integral, primitive, square-free, with
    positive leading coefficient and nonzero constant term."""

    qexp: int
    n: int
    poly: tuple[int, ...]

    def radicand(self) -> RationalFunction:
        return RationalFunction(self.qexp, tuple(Fraction(self.n * c) for c in self.poly))

    def __call__(self, q0: float) -> float:
        v = self.radicand()(q0)
        if v < 0:
            raise ValueError(f"radicand {self.radicand()} is negative at q={q0}")
        return math.sqrt(v)

    def times(self, other: "Radical") -> tuple[RationalFunction, "Radical | None"]:
        """``sqrt(self) * sqrt(other) = factor * sqrt(result)``."""
        factor = RF_ONE
        e = self.qexp + other.qexp
        if e == 2:
            factor = RationalFunction.monomial(1)
            e = 0
        g = math.gcd(self.n, other.n)
        n = self.n * other.n // (g * g)
        factor = factor * g
        p1 = tuple(Fraction(c) for c in self.poly)
        p2 = tuple(Fraction(c) for c in other.poly)
        gp = pgcd(p1, p2)
        if len(gp) > 1:
            _, gi = primitive_int(gp)
            gp = tuple(Fraction(c) for c in gi)
            p1 = pexactdiv(p1, gp)
            p2 = pexactdiv(p2, gp)
            factor = factor * RationalFunction(0, gp)
        _, prod = primitive_int(pmul(p1, p2)) if len(p1) + len(p2) > 2 else (1, (1,))
        if e == 0 and n == 1 and prod == (1,):
            return factor, None
        return factor, Radical(e, n, prod)

    def __str__(self):
        return f"sqrt({self.radicand()})"


def sqrt_rf(x: RationalFunction) -> tuple[RationalFunction, Radical | None]:
    """``sqrt(x) = factor * sqrt(radical)``, extracting all square factors."""
    if x.is_zero():
        return RF_ZERO, None
    # sqrt(num/den) = sqrt(num*den)/den
    p = pmul(x.num, x.den)
    shift = x.shift
    outer = RationalFunction(0, _ONE, _ONE) / RationalFunction(0, x.den)
    t, e = divmod(shift, 2)
    outer = outer * RationalFunction.monomial(t)
    lc = p[-1]
    even = _ONE
    odd = _ONE
    for a, i in squarefree_decomposition(p):
        if i // 2:
            even = pmul(even, _ppow(a, i // 2))
        if i % 2:
            odd = pmul(odd, a)
    content, prim = primitive_int(odd) if len(odd) > 1 else (Fraction(1), (1,))
    c = lc * content
    if c < 0:
        raise ValueError(f"square root of a negative function: {x}")
    k1, m = _squarefree_int(c.numerator * c.denominator)
    outer = outer * RationalFunction(0, even) * Fraction(k1, c.denominator)
    if e == 0 and m == 1 and prim == (1,):
        return outer, None
    return outer, Radical(e, m, prim)


def _ppow(a: Coeffs, n: int) -> Coeffs:
    out = _ONE
    for _ in range(n):
        out = pmul(out, a)
    return out


# ---------------------------------------------------------------------------
# QValue


class IncompatibleRadicals(ArithmeticError):
    """Raised when an exact operation would need two distinct square roots."""


class QValue:
    """Scalar in q: exact ``a + b*sqrt(r)`` or a float evaluated at ``q0``."""

    __slots__ = ("a", "b", "rad", "value", "q0")

    def __init__(self, a=None, b=None, rad=None, *, value=None, q0=None):
        if q0 is not None:
            q0 = float(q0)
            if not q0 > 0 or q0 == 1.0:
                raise ValueError(f"numeric mode requires q0 > 0, q0 != 1 (got {q0})")
            self.a = self.b = self.rad = None
            self.value = float(value)
            self.q0 = q0
            return
        a = RF_ZERO if a is None else _as_rf(a)
        b = RF_ZERO if b is None else _as_rf(b)
        if rad is None or b.is_zero():
            rad, b = None, RF_ZERO
        self.a, self.b, self.rad = a, b, rad
        self.value = None
        self.q0 = None

    # -- constructors
    @classmethod
    def exact(cls, x) -> "QValue":
        if isinstance(x, QValue):
            return x
        return cls(_as_rf(x))

    @classmethod
    def numeric(cls, value: float, q0: float) -> "QValue":
        return cls(value=value, q0=q0)

    @classmethod
    def q(cls, power: Number = 1) -> "QValue":
        """``q**power`` for integer or half-integer ``power``."""
        power = Fraction(power)
        if power.denominator == 1:
            return cls(RationalFunction.monomial(int(power)))
        if power.denominator != 2:
            raise ValueError("only integer and half-integer powers of q are supported")
        return cls(None, RationalFunction.monomial(int(power - Fraction(1, 2))), Radical(1, 1, (1,)))

    # -- mode
    @property
    def is_exact(self) -> bool:
        return self.q0 is None

    @property
    def mode(self) -> str:
        return "exact" if self.q0 is None else "numeric"

    def is_zero(self) -> bool:
        if self.q0 is not None:
            return self.value == 0.0
        return self.a.is_zero() and self.b.is_zero()

    def is_rational(self) -> bool:
        return self.q0 is None and self.rad is None

    # -- coercion helpers
    def _coerce(self, other):
        if isinstance(other, QValue):
            if self.q0 is None and other.q0 is None:
                return self, other
            if self.q0 is not None and other.q0 is not None:
                if self.q0 != other.q0:
                    raise ValueError(f"cannot mix numeric values at q0={self.q0} and q0={other.q0}")
                return self, other
            q0 = self.q0 if self.q0 is not None else other.q0
            return self.at(q0), other.at(q0)
        if isinstance(other, (int, Fraction)):
            if self.q0 is None:
                return self, QValue(_as_rf(other))
            return self, QValue(value=float(other), q0=self.q0)
        if isinstance(other, float) and self.q0 is not None:
            return self, QValue(value=other, q0=self.q0)
        return None

    # -- arithmetic
    def __neg__(self):
        if self.q0 is not None:
            return QValue(value=-self.value, q0=self.q0)
        return QValue(-self.a, -self.b, self.rad)

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if x.q0 is not None:
            return QValue(value=x.value + y.value, q0=x.q0)
        if y.is_zero():
            return x
        if x.is_zero():
            return y
        if x.rad is None or y.rad is None or x.rad == y.rad:
            return QValue(x.a + y.a, x.b + y.b, x.rad or y.rad)
        raise IncompatibleRadicals(f"{x} + {y}")

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if x.q0 is not None:
            return QValue(value=x.value * y.value, q0=x.q0)
        if x.is_zero() or y.is_zero():
            return Q_ZERO
        if x.rad is None:
            return QValue(x.a * y.a, x.a * y.b, y.rad)
        if y.rad is None:
            return QValue(x.a * y.a, x.b * y.a, x.rad)
        if x.rad == y.rad:
            return QValue(x.a * y.a + x.b * y.b * x.rad.radicand(), x.a * y.b + x.b * y.a, x.rad)
        if x.a.is_zero() and y.a.is_zero():
            factor, rad = x.rad.times(y.rad)
            coeff = x.b * y.b * factor
            if rad is None:
                return QValue(coeff)
            return QValue(None, coeff, rad)
        raise IncompatibleRadicals(f"({x}) * ({y})")

    __rmul__ = __mul__

    def inverse(self) -> "QValue":
        if self.q0 is not None:
            return QValue(value=1.0 / self.value, q0=self.q0)
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.rad is None:
            return QValue(self.a.inverse())
        norm = self.a * self.a - self.b * self.b * self.rad.radicand()
        inv = norm.inverse()
        return QValue(self.a * inv, -self.b * inv, self.rad)

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] * pair[1].inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[1] * pair[0].inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Q_ONE if self.q0 is None else QValue(value=1.0, q0=self.q0)
        for _ in range(n):
            out = out * self
        return out

    def sqrt(self) -> "QValue":
        if self.q0 is not None:
            return QValue(value=math.sqrt(self.value), q0=self.q0)
        if self.rad is not None:
            raise IncompatibleRadicals(f"nested square root of {self}")
        factor, rad = sqrt_rf(self.a)
        if rad is None:
            return QValue(factor)
        return QValue(None, factor, rad)

    # -- comparison / hashing
    def __eq__(self, other):
        if isinstance(other, float) and self.q0 is None:
            return False
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if x.q0 is not None:
            return x.value == y.value
        return x.a == y.a and x.b == y.b and x.rad == y.rad

    def __hash__(self):
        if self.q0 is not None:
            return hash((self.value, self.q0))
        if self.rad is None and self.a.is_const():
            return hash(self.a.num[0] if self.a.num else 0)
        return hash((self.a, self.b, self.rad))

    # -- evaluation
    def at(self, q0: float) -> "QValue":
        """Numeric QValue at ``q0``."""
        return QValue(value=self(q0), q0=q0)

    def __call__(self, q0: float) -> float:
        if self.q0 is not None:
            if q0 != self.q0:
                raise ValueError(f"numeric value carries q0={self.q0}, asked for {q0}")
            return self.value
        v = self.a(q0) if not self.a.is_zero() else 0.0
        if self.rad is not None:
            v += self.b(q0) * self.rad(q0)
        return v

    def __float__(self):
        if self.q0 is None:
            raise TypeError("exact QValue has no float value; evaluate it at some q0")
        return self.value

    def sign(self) -> int:
        """Sign near q = 1 (exact) or of the value (numeric)."""
        if self.q0 is not None:
            return int(np.sign(self.value))
        if self.is_zero():
            return 0
        try:
            v = float(limit_q_to_1(self))
        except ZeroDivisionError:
            v = 0.0
        if v == 0.0:
            v = self(1.5)
        return 1 if v > 0 else -1

    # -- text
    def __str__(self):
        if self.q0 is not None:
            return repr(self.value)
        if self.rad is None:
            return str(self.a)
        rad = f"sqrt({self.rad.radicand()})"
        b = self.b
        if b == RF_ONE:
            tail = rad
        elif b == -RF_ONE:
            tail = "-" + rad
        else:
            tail = f"({b})*{rad}"
        if self.a.is_zero():
            return tail
        return f"({self.a})+{tail}"

    def __repr__(self):
        if self.q0 is not None:
            return f"QValue({self.value!r}, q0={self.q0})"
        return f"QValue({self})"


Q_ZERO = QValue(RF_ZERO)
Q_ONE = QValue(RF_ONE)


# ---------------------------------------------------------------------------
# q-combinatorics


def qint(n: Number, q0: float | None = None) -> QValue:
    """q-integer ``(q^n - q^-n)/(q - q^-1)``; ``n`` may be a half-integer."""
    n = Fraction(n)
    if q0 is not None:
        q0 = float(q0)
        return QValue(value=(q0**n - q0**-n) / (q0 - 1 / q0), q0=q0)
    return _qint_exact(n)


@lru_cache(maxsize=None)
def _qint_exact(n: Fraction) -> QValue:
    if n.denominator == 1:
        k = int(n)
        sgn = 1 if k >= 0 else -1
        k = abs(k)
        # [k] = q^(k-1) + q^(k-3) + ... + q^(1-k), exact division
        coeffs = {e: 0 for e in range(1 - k, k, 2)}
        for e in coeffs:
            coeffs[e] = sgn
        return QValue(RationalFunction.laurent(coeffs))
    num = QValue.q(n) - QValue.q(-n)
    return num / (QValue.q(1) - QValue.q(-1))


def _qfactorial_paren(m: int, d: int) -> RationalFunction:
    # (m)_{q^d} = prod_{i=1}^m (q^{di} - q^{-di}); (0) = 1
    out = RF_ONE
    for i in range(1, m + 1):
        out = out * RationalFunction.laurent({d * i: 1, -d * i: -1})
    return out


def qbinomial(m: int, n: int, d: int = 1, q0: float | None = None) -> QValue:
    """q-binomial coefficient at ``q_i = q^d`` built from the factorial products."""
    if not (0 <= n <= m):
        raise ValueError(f"qbinomial needs 0 <= n <= m (got m={m}, n={n})")
    if d < 1:
        raise ValueError("d must be a positive integer")
    v = _qfactorial_paren(m, d) / (_qfactorial_paren(n, d) * _qfactorial_paren(m - n, d))
    if not v.is_laurent():
        raise ArithmeticError("q-binomial did not reduce to a Laurent polynomial")
    out = QValue(v)
    return out.at(q0) if q0 is not None else out


def limit_q_to_1(v: QValue):
    """Value at q = 1 after cancellation.

    Returns a ``Fraction`` when the limit is rational and a ``float`` when a
    surviving square root is irrational. Raises ``ZeroDivisionError`` on a pole.
    """
    if not isinstance(v, QValue):
        v = QValue.exact(v)
    if v.q0 is not None:
        raise ValueError("limit_q_to_1 needs an exact value")
    a = v.a.at_one() if not v.a.is_zero() else Fraction(0)
    if v.rad is None:
        return a
    b = v.b.at_one()
    r = v.rad.radicand().at_one()
    if b == 0:
        return a
    rn, rd = r.numerator, r.denominator
    sn, sd = math.isqrt(rn), math.isqrt(rd)
    if sn * sn == rn and sd * sd == rd:
        return a + b * Fraction(sn, sd)
    return float(a) + float(b) * math.sqrt(r)


# ---------------------------------------------------------------------------
# canonical text parser


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(q)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.toks = []
        for m in _TOKEN.finditer(text):
            num, sq, q, ch = m.groups()
            if num:
                self.toks.append(("num", int(num)))
            elif sq:
                self.toks.append(("sqrt", None))
            elif q:
                self.toks.append(("q", None))
            elif ch and not ch.isspace():
                self.toks.append((ch, None))
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, got {tok[0]!r}")
        self.i += 1
        return tok

    def parse(self) -> QValue:
        v = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.i}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            t = self.unary()
            v = v * t if op == "*" else v / t
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            e = sign * self.take("num")[1]
            return base**e
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return QValue(RationalFunction.const(self.take()[1]))
        if kind == "q":
            self.take()
            return QValue(RationalFunction.monomial(1))
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if kind == "[":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            n = sign * self.take("num")[1]
            self.take("]")
            return qint(n)
        if kind == "sqrt":
            self.take()
            self.take("(")
            v = self.expr()
            self.take(")")
            return v.sqrt()
        raise ValueError(f"unexpected token {kind!r}")


def parse_qvalue(text: str) -> QValue:
    """Parse canonical text (``q^2+1+q^-2``, ``(q)/(q^2+1)``, ``sqrt(...)``).

    Bracket shorthand ``[n]`` for q-integers is accepted on input.
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# scalar backends for matrix code


@dataclass(frozen=True)
class QField:
    """Scalar backend: exact QValues or floats at a fixed ``q0``.

    ``QField.classical()`` evaluates at q = 1 with ``[n] = n``; it exists only
    as the reference point for classical-limit comparisons.
    """

    q0: float | None = None

    @classmethod
    def exact(cls) -> "QField":
        return cls(None)

    @classmethod
    def numeric(cls, q0: float) -> "QField":
        q0 = float(q0)
        if not q0 > 0 or q0 == 1.0:
            raise ValueError(f"numeric mode requires q0 > 0 and q0 != 1 (got {q0})")
        return cls(q0)

    @classmethod
    def classical(cls) -> "QField":
        return cls(1.0)

    @property
    def is_exact(self) -> bool:
        return self.q0 is None

    @property
    def is_classical(self) -> bool:
        return self.q0 == 1.0

    @property
    def dtype(self):
        return object if self.q0 is None else np.float64

    def __str__(self):
        return "exact" if self.q0 is None else f"q0={self.q0!r}"

    # -- scalars
    def const(self, x):
        if self.q0 is None:
            return QValue.exact(x)
        if isinstance(x, QValue):
            return x(self.q0) if not self.is_classical else float(limit_q_to_1(x))
        return float(x)

    @property
    def zero(self):
        return Q_ZERO if self.q0 is None else 0.0

    @property
    def one(self):
        return Q_ONE if self.q0 is None else 1.0

    def q(self, power: Number = 1):
        if self.q0 is None:
            return QValue.q(power)
        return self.q0 ** float(power)

    def qint(self, n: Number):
        if self.q0 is None:
            return qint(n)
        if self.is_classical:
            return float(n)
        return qint(n, self.q0).value

    def sqrt(self, x):
        if self.q0 is None:
            return QValue.exact(x).sqrt()
        if x < 0:
            raise ValueError(f"square root of negative value {x}")
        return math.sqrt(x)

    def sign(self, x) -> int:
        if self.q0 is None:
            return QValue.exact(x).sign()
        return int(np.sign(x))

    def is_zero_scalar(self, x, tol: float = ABS_TOL) -> bool:
        if self.q0 is None:
            return QValue.exact(x).is_zero()
        return abs(x) < tol

    # -- arrays
    def zeros(self, shape):
        if self.q0 is None:
            out = np.empty(shape, dtype=object)
            out.fill(Q_ZERO)
            return out
        return np.zeros(shape)

    def eye(self, n: int):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def array(self, rows):
        if self.q0 is None:
            arr = np.array(rows, dtype=object)
            flat = arr.reshape(-1)
            for i, x in enumerate(flat):
                flat[i] = QValue.exact(x)
            return arr
        return np.array([[self.const(x) for x in row] for row in rows], dtype=float) if np.ndim(rows) == 2 else np.array(
            [self.const(x) for x in rows], dtype=float
        )

    def is_zero(self, m, tol: float = ABS_TOL) -> bool:
        m = np.asarray(m)
        if self.q0 is None:
            return all(QValue.exact(x).is_zero() for x in m.reshape(-1))
        return m.size == 0 or float(np.max(np.abs(m))) < tol

    def max_abs(self, m, at: float = 1.3) -> float:
        """Largest entry magnitude; exact arrays are evaluated at ``at``
        unless they vanish identically."""
        m = np.asarray(m)
        if m.size == 0:
            return 0.0
        if self.q0 is None:
            vals = [abs(QValue.exact(x)(at)) for x in m.reshape(-1) if not QValue.exact(x).is_zero()]
            return max(vals, default=0.0)
        return float(np.max(np.abs(m)))

    def to_float(self, m, q0: float | None = None):
        """Float copy of an array; exact arrays need ``q0``."""
        m = np.asarray(m)
        if self.q0 is not None:
            return m.astype(float)
        if q0 is None:
            raise ValueError("evaluating an exact array needs q0")
        flat = [QValue.exact(x)(q0) if q0 != 1.0 else float(limit_q_to_1(QValue.exact(x))) for x in m.reshape(-1)]
        return np.array(flat, dtype=float).reshape(m.shape)


def evaluate_array(m, q0: float):
    """Evaluate an exact object array at ``q0`` (``q0 == 1`` takes the limit)."""
    return QField.exact().to_float(m, q0)


def limit_array(m):
    return evaluate_array(m, 1.0)
