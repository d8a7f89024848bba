"""Exact dense linear algebra on numpy object arrays of FieldElem."""

from __future__ import annotations

import numpy as np

from .scalars import FieldElem, QSpec


def zeros(rows: int, cols: int, mode: QSpec) -> np.ndarray:
    z = FieldElem.from_int(0, mode)
    out = np.empty((rows, cols), dtype=object)
    out.fill(z)
    return out


def identity(n: int, mode: QSpec) -> np.ndarray:
    out = zeros(n, n, mode)
    one = FieldElem.from_int(1, mode)
    for i in range(n):
        out[i, i] = one
    return out


def from_rows(rows, mode: QSpec) -> np.ndarray:
    rows = [list(r) for r in rows]
    out = zeros(len(rows), len(rows[0]) if rows else 0, mode)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = FieldElem.coerce(v, mode)
    return out


def matmul(a: np.ndarray, b: np.ndarray, mode: QSpec) -> np.ndarray:
    """Product that skips zero entries (the matrices here are mostly sparse)."""
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    out = zeros(n, m, mode)
    brows = [[(j, b[t, j]) for j in range(m) if b[t, j]] for t in range(k)]
    for i in range(n):
        acc: dict = {}
        for t in range(k):
            x = a[i, t]
            if not x:
                continue
            for j, y in brows[t]:
                v = x * y
                acc[j] = acc[j] + v if j in acc else v
        for j, v in acc.items():
            out[i, j] = v
    return out


def kron(a: np.ndarray, b: np.ndarray, mode: QSpec) -> np.ndarray:
    n, m = a.shape
    p, r = b.shape
    out = zeros(n * p, m * r, mode)
    for i in range(n):
        for j in range(m):
            if a[i, j]:
                for k in range(p):
                    for l in range(r):
                        if b[k, l]:
                            out[i * p + k, j * r + l] = a[i, j] * b[k, l]
    return out


def scale(a: np.ndarray, c: FieldElem) -> np.ndarray:
    out = a.copy()
    for idx in np.ndindex(a.shape):
        out[idx] = a[idx] * c
    return out


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = a.copy()
    for idx in np.ndindex(a.shape):
        out[idx] = a[idx] + b[idx]
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(not x for x in a.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def power(a: np.ndarray, n: int, mode: QSpec) -> np.ndarray:
    out = identity(a.shape[0], mode)
    for _ in range(n):
        out = matmul(out, a, mode)
    return out


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = a.copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i, c]), None)
        if p is None:
            continue
        if p != r:
            m[[r, p]] = m[[p, r]]
        inv = m[r, c].inverse()
        for j in range(c, cols):
            m[r, j] = m[r, j] * inv
        for i in range(rows):
            if i != r and m[i, c]:
                f = m[i, c]
                for j in range(c, cols):
                    if m[r, j]:
                        m[i, j] = m[i, j] - f * m[r, j]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def det(a: np.ndarray, mode: QSpec) -> FieldElem:
    """Determinant by Gaussian elimination over the coefficient field."""
    n = a.shape[0]
    m = a.copy()
    d = FieldElem.from_int(1, mode)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i, c]), None)
        if p is None:
            return FieldElem.from_int(0, mode)
        if p != c:
            m[[c, p]] = m[[p, c]]
            d = -d
        d = d * m[c, c]
        inv = m[c, c].inverse()
        for i in range(c + 1, n):
            if m[i, c]:
                f = m[i, c] * inv
                for j in range(c, n):
                    m[i, j] = m[i, j] - f * m[c, j]
    return d


def trace(a: np.ndarray, mode: QSpec) -> FieldElem:
    out = FieldElem.from_int(0, mode)
    for i in range(a.shape[0]):
        out = out + a[i, i]
    return out


def nullspace(a: np.ndarray, mode: QSpec) -> list[np.ndarray]:
    """Basis of {v : a v = 0} as column vectors (1-d arrays)."""
    rows, cols = a.shape
    m, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols, 1, mode)[:, 0]
        v[f] = FieldElem.from_int(1, mode)
        for r, p in enumerate(pivots):
            v[p] = -m[r, f]
        basis.append(v)
    return basis


def matvec(a: np.ndarray, v: np.ndarray, mode: QSpec) -> np.ndarray:
    return matmul(a, v.reshape(-1, 1), mode)[:, 0]


def span_closure(vectors: list[np.ndarray], mats: list[np.ndarray], mode: QSpec) -> int:
    """Dimension of the smallest subspace containing ``vectors`` and stable under ``mats``."""
    n = mats[0].shape[0] if mats else (len(vectors[0]) if vectors else 0)
    basis_rows: list = []
    queue = list(vectors)
    dim = 0
    while queue:
        v = queue.pop()
        trial = basis_rows + [list(v)]
        r = rank(from_rows(trial, mode))
        if r > dim:
            basis_rows.append(list(v))
            dim = r
            if dim == n:
                return n
            for m in mats:
                queue.append(matvec(m, v, mode))
    return dim


def to_strings(a: np.ndarray) -> list:
    return [[str(x) for x in row] for row in a]
