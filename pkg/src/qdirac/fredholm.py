"""Block model of ``H = C[SU_q(2)] ⊗ Σ`` and the sign operator ``F = D (1 + D^2)^-1/2``.

For each ``j`` the block ``W↑_j`` is ``V_(j+1/2)`` repeated ``2j+1`` times with
``D = [2j]``, and ``W↓_j`` (``j > 0``) is ``V_(j-1/2)`` repeated ``2j+1`` times with
``D = -[2j+2]``. Blocks are scalars, so nothing is ever materialized.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .qscalar import QField


def _half_steps(j_max) -> list:
    j_max = Fraction(j_max)
    if j_max < 0 or (2 * j_max).denominator != 1:
        raise ValueError(f"j_max must be a nonnegative half-integer, got {j_max}")
    return [Fraction(i, 2) for i in range(int(2 * j_max) + 1)]


def _growth_q(q0: float) -> float:
    """``[n]_q = [n]_(1/q)``, so ``q0 < 1`` is folded onto ``1/q0``."""
    q0 = float(q0)
    if q0 <= 0 or q0 == 1.0:
        raise ValueError(f"q0 must be positive and different from 1 (got {q0})")
    return q0 if q0 > 1 else 1.0 / q0


def qint(n, q0: float) -> float:
    return QField.numeric(q0).qint(Fraction(n))


@dataclass(frozen=True)
class Block:
    j: Fraction
    kind: str  # "up" or "down"
    module_dim: int
    multiplicity: int
    eigenvalue: float

    @property
    def states(self) -> int:
        return self.module_dim * self.multiplicity

    @property
    def sign_value(self) -> float:
        lam = self.eigenvalue
        return lam / math.sqrt(1.0 + lam * lam)

    @property
    def f_squared_minus_one(self) -> float:
        return -1.0 / (1.0 + self.eigenvalue ** 2)


@dataclass(frozen=True)
class TruncatedHilbert:
    j_max: Fraction
    q0: float
    blocks: tuple

    @property
    def dimension(self) -> int:
        return sum(b.states for b in self.blocks)

    def up(self, j) -> Block:
        return next(b for b in self.blocks if b.j == Fraction(j) and b.kind == "up")

    def down(self, j) -> Block | None:
        return next((b for b in self.blocks if b.j == Fraction(j) and b.kind == "down"), None)


def build_truncation(j_max, q0: float) -> TruncatedHilbert:
    _growth_q(q0)
    blocks = []
    for j in _half_steps(j_max):
        mult = int(2 * j + 1)
        blocks.append(Block(j, "up", int(2 * j + 2), mult, qint(2 * j, q0)))
        if j > 0:
            blocks.append(Block(j, "down", int(2 * j), mult, -qint(2 * j + 2, q0)))
    return TruncatedHilbert(Fraction(j_max), float(q0), tuple(blocks))


# ---------------------------------------------------------------------------
# trace of F^2 - 1


@dataclass
class TraceTail:
    q0: float
    js: np.ndarray
    increments: np.ndarray
    partial_sums: np.ndarray
    tail: np.ndarray
    knee: float
    envelope_c: float
    fitted_rate: float
    expected_rate: float = field(default=0.0)

    @property
    def total(self) -> float:
        return float(self.partial_sums[-1])


def trace_tail(j_max, q0: float, stable_tol: float = 1e-12) -> TraceTail:
    """Partial sums of ``Tr |F^2 - 1| = Σ states/(1 + λ^2)`` over ``j ≤ J``.

    ``tail[J]`` is the remaining sum past ``J`` (exact within the truncation,
    plus a geometric bound beyond ``j_max``). ``knee`` is the first ``J`` after
    which the sum moves by less than ``stable_tol``. The envelope constant is
    ``C = max |inc_j| q^(4j)`` and ``fitted_rate`` is the log-slope of the
    increments over the upper half of the range.
    """
    qg = _growth_q(q0)
    h = build_truncation(j_max, q0)
    js = np.array([float(j) for j in _half_steps(j_max)])
    inc = np.zeros(len(js))
    for b in h.blocks:
        inc[int(2 * b.j)] += b.states * (-b.f_squared_minus_one)
    sums = np.cumsum(inc)
    beyond = 0.0
    if len(inc) >= 2 and inc[-2] > 0:
        r = inc[-1] / inc[-2]
        beyond = inc[-1] * r / (1.0 - r) if r < 1 else math.inf
    tail = sums[-1] - sums + beyond
    knee = next(float(j) for j, t in zip(js, tail) if t < stable_tol) if np.any(tail < stable_tol) else math.inf
    c = float(np.max(inc[1:] * qg ** (4 * js[1:]))) if len(js) > 1 else 0.0
    half = len(js) // 2
    rate = float(np.polyfit(js[half:], np.log(inc[half:]), 1)[0]) if len(js) - half >= 2 else math.nan
    return TraceTail(float(q0), js, inc, sums, tail, knee, c, rate, -4 * math.log(qg))


# ---------------------------------------------------------------------------
# commutator decay


def _sign_fn(x: float) -> float:
    return x / math.sqrt(1.0 + x * x)


def _sign_gap(x: float) -> float:
    """``1 - x/sqrt(1+x^2)`` without cancellation for ``x >= 0``."""
    r = math.sqrt(1.0 + x * x)
    return 1.0 / (r * (r + x))


def _sign_diff(a: float, b: float) -> float:
    """``F(a) - F(b)``; both values round to 1 for large arguments, so go through the gap."""
    if a >= 0 and b >= 0:
        return _sign_gap(b) - _sign_gap(a)
    return _sign_fn(a) - _sign_fn(b)


@dataclass
class Decay:
    k: Fraction
    q0: float
    js: np.ndarray
    values: np.ndarray
    envelope_c: float
    fitted_rate: float
    power_exponent: float
    weighted_sum: float


def _fit(js, vals, qg):
    mask = np.abs(vals) > 0
    js, vals = js[mask], np.abs(vals[mask])
    if len(js) < 4:
        return 0.0, math.nan, math.nan
    c = float(np.max(vals * qg ** (2 * js)))
    half = len(js) // 2
    rate = float(np.polyfit(js[half:], np.log(vals[half:]), 1)[0])
    power = float(np.polyfit(np.log(js[half:]), np.log(vals[half:]), 1)[0])
    return c, rate, power


def commutator_decay(k, j_max, q0: float) -> Decay:
    """``c_j(k) = [j+k]/sqrt(1+[j+k]^2) - [j]/sqrt(1+[j]^2)`` for ``j ≤ j_max``, ``j + k ≥ 0``.

    ``envelope_c = max |c_j| q^(2j)``, ``fitted_rate`` the log-slope (``-2 ln q``
    expected) and ``power_exponent`` the log-log slope, which is what survives
    near ``q = 1``.
    """
    k = Fraction(k)
    if abs(k) > 4 or (2 * k).denominator != 1:
        raise ValueError(f"shift must be a half-integer with |k| <= 4, got {k}")
    qg = _growth_q(q0)
    js = [j for j in _half_steps(j_max) if j + k >= 0]
    vals = np.array([_sign_diff(qint(j + k, q0), qint(j, q0)) for j in js])
    jf = np.array([float(j) for j in js])
    mult = (2 * jf + 2) * (2 * jf + 1)
    c, rate, power = _fit(jf, vals, qg)
    return Decay(k, float(q0), jf, vals, c, rate, power, float(np.sum(mult * np.abs(vals))))


def classical_decay(k, j_max) -> np.ndarray:
    """``(j+k)/sqrt(1+(j+k)^2) - j/sqrt(1+j^2)``, the q = 1 counterpart."""
    k = Fraction(k)
    return np.array([_sign_diff(float(j + k), float(j)) for j in _half_steps(j_max) if j + k >= 0])


def table(j_max, q0: float, k=Fraction(1, 2)) -> list:
    """Rows ``(j, F_up, F_down, tail, c_j)`` for the CLI."""
    h = build_truncation(j_max, q0)
    tt = trace_tail(j_max, q0)
    dec = commutator_decay(k, j_max, q0)
    cj = {float(j): v for j, v in zip(dec.js, dec.values)}
    rows = []
    for i, j in enumerate(_half_steps(j_max)):
        down = h.down(j)
        rows.append((float(j), h.up(j).sign_value, down.sign_value if down else None, float(tt.tail[i]),
                     None if cj.get(float(j)) is None else float(cj[float(j)])))
    return rows
