"""Row reduction, null spaces and ranks over a :class:`QField`.

Exact arrays are reduced by Gaussian elimination on QValues; numeric arrays
go through scipy's SVD routines.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .qscalar import ABS_TOL, QField, QValue


def rref(m, field: QField, col_order=None, tol: float = 1e-12):
    """Reduced row echelon form.

    ``col_order`` lists column indices in pivot-priority order (default: left
    to right). Returns ``(R, pivots)`` with ``R`` holding only nonzero rows.
    Numeric matrices use partial pivoting and treat entries below ``tol``
    (relative to the largest entry) as zero.
    """
    exact = field.is_exact
    rows = [list(r) for r in np.asarray(m)]
    ncols = len(rows[0]) if rows else 0
    order = list(range(ncols)) if col_order is None else list(col_order)
    if not exact and rows:
        scale_ = max(1.0, float(np.max(np.abs(np.asarray(m, dtype=float)))))
        tol = tol * scale_
    small = (lambda x: x.is_zero()) if exact else (lambda x: abs(x) <= tol)
    pivots = []
    r = 0
    for c in order:
        cand = [i for i in range(r, len(rows)) if not small(rows[i][c])]
        if not cand:
            continue
        p = cand[0] if exact else max(cand, key=lambda i: abs(rows[i][c]))
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse() if exact else 1.0 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not small(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        if not exact:
            for i in range(len(rows)):
                rows[i] = [0.0 if abs(x) <= tol else x for x in rows[i]]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = np.empty((r, ncols), dtype=object if exact else float)
    for i in range(r):
        out[i, :] = rows[i]
    return out, pivots


def nullspace(m, field: QField, tol: float = ABS_TOL):
    """Basis of the right null space, one vector per column."""
    m = np.asarray(m)
    n = m.shape[1]
    if m.shape[0] == 0:
        return field.eye(n)
    if not field.is_exact:
        basis = scipy.linalg.null_space(m.astype(float), rcond=tol)
        basis[np.abs(basis) < 1e-14] = 0.0
        return basis
    red, pivots = rref(m, field)
    free = [c for c in range(n) if c not in pivots]
    basis = field.zeros((n, len(free)))
    for k, fc in enumerate(free):
        basis[fc, k] = field.one
        for row, pc in enumerate(pivots):
            basis[pc, k] = -red[row, fc]
    return basis


def rank(m, field: QField, tol: float = 1e-9) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if not field.is_exact:
        return int(np.linalg.matrix_rank(m.astype(float), tol=tol))
    return len(rref(m, field)[1])


def inverse(m, field: QField):
    m = np.asarray(m)
    n = m.shape[0]
    if not field.is_exact:
        return np.linalg.inv(m)
    aug = np.concatenate([m, field.eye(n)], axis=1)
    red, pivots = rref(aug, field, col_order=range(n))
    if pivots != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix")
    return red[:, n:]


def det(m, field: QField):
    m = np.asarray(m)
    if not field.is_exact:
        return float(np.linalg.det(m))
    rows = [list(r) for r in m]
    n = len(rows)
    d = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if p is None:
            return field.zero
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d = d * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def kron(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = np.kron(out, m)
    return out


def dot(v, w, field: QField):
    """Real bilinear pairing ``sum v_i w_i``."""
    acc = field.zero
    for a, b in zip(np.asarray(v).reshape(-1), np.asarray(w).reshape(-1)):
        acc = acc + a * b
    return acc


def scale(m, c):
    m = np.asarray(m)
    if m.dtype == object:
        out = np.empty(m.shape, dtype=object)
        flat_in = m.reshape(-1)
        flat = out.reshape(-1)
        for i, x in enumerate(flat_in):
            flat[i] = x * c
        return out
    return m * c


def first_nonzero(v, field: QField, tol: float = ABS_TOL):
    for x in np.asarray(v).reshape(-1):
        if not field.is_zero_scalar(x, tol):
            return x
    return None


def normalize_sign(v, field: QField):
    """Flip ``v`` so its first nonzero coordinate is positive."""
    x = first_nonzero(v, field)
    if x is not None and field.sign(x) < 0:
        return scale(v, -1)
    return v


def as_exact(x) -> QValue:
    return QValue.exact(x)


def residual(m, field: QField) -> float:
    """Largest entry magnitude; an exactly nonzero exact array never reports 0."""
    m = np.asarray(m)
    if not field.is_exact:
        return field.max_abs(m)
    if field.is_zero(m):
        return 0.0
    return max(field.max_abs(m), 1e-300)
