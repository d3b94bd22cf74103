"""Exact dense linear algebra over any field of :mod:`veronese_lab.fields`.

Matrices are lists of rows of raw field elements.  Over a prime field large
systems are handed to a vectorised numpy elimination (int64 is exact for
p < 2^31).
"""

from __future__ import annotations

import numpy as np

from .errors import NotInvertible
from .fields import Field, PrimeField

_NUMPY_THRESHOLD = 4000


def zeros(K: Field, rows: int, cols: int):
    return [[K.zero] * cols for _ in range(rows)]


def identity(K: Field, n: int):
    M = zeros(K, n, n)
    for i in range(n):
        M[i][i] = K.one
    return M


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def matmul(K: Field, A, B):
    Bt = transpose(B)
    if isinstance(K, PrimeField):
        p = K.p
        return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]
    out = []
    for row in A:
        new = []
        for col in Bt:
            acc = K.zero
            for a, b in zip(row, col):
                if not K.is_zero(a) and not K.is_zero(b):
                    acc = K.add(acc, K.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def matvec(K: Field, A, v):
    return [row[0] for row in matmul(K, A, [[x] for x in v])]


def rref(K: Field, M):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    if not M:
        return [], []
    if isinstance(K, PrimeField):
        if len(M) * len(M[0]) >= _NUMPY_THRESHOLD and K.p < 2**31:
            return _rref_numpy(K.p, M)
        return _rref_prime(K.p, M)
    return _rref_generic(K, M)


def _rref_prime(p, M):
    rows = [[x % p for x in r] for r in M]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        prow = [x * inv % p for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rref_numpy(p, M):
    A = np.array(M, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - np.outer(col[mask], A[r]) % p) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in A[:r]], pivots


def _rref_generic(K, M):
    rows = [list(r) for r in M]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not K.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = K.inv(rows[r][c])
        prow = [K.mul(x, inv) for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if not K.is_zero(f):
                    rows[i] = [
                        x if K.is_zero(y) else K.sub(x, K.mul(f, y)) for x, y in zip(rows[i], prow)
                    ]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(K: Field, M) -> int:
    return len(rref(K, M)[1]) if M and M[0] else 0


def kernel(K: Field, M, ncols: int | None = None):
    """Basis of the right kernel {v : M v = 0}."""
    if not M:
        n = ncols or 0
        return identity(K, n)
    n = len(M[0])
    R, pivots = rref(K, M)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [K.zero] * n
        v[f] = K.one
        for row, pc in zip(R, pivots):
            if not K.is_zero(row[f]):
                v[pc] = K.neg(row[f])
        basis.append(v)
    return basis


def left_kernel(K: Field, M):
    """Basis of {w : w M = 0}."""
    return kernel(K, transpose(M), ncols=len(M))


def row_space(K: Field, M):
    return rref(K, M)[0]


def solve(K: Field, A, b):
    """One solution x of A x = b, or None when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(K, aug)
    if pivots and pivots[-1] == n:
        return None
    x = [K.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def inverse(K: Field, M):
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(K, n))]
    R, pivots = rref(K, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible("matrix is singular")
    return [row[n:] for row in R]


def det(K: Field, M):
    n = len(M)
    rows = [list(r) for r in M]
    result = K.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not K.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            return K.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = K.neg(result)
        result = K.mul(result, rows[c][c])
        inv = K.inv(rows[c][c])
        for i in range(c + 1, n):
            f = rows[i][c]
            if not K.is_zero(f):
                f = K.mul(f, inv)
                rows[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return result


def is_zero_matrix(K: Field, M) -> bool:
    return all(K.is_zero(x) for row in M for x in row)


def random_matrix(K: Field, rows: int, cols: int, rng):
    return [[K.random(rng) for _ in range(cols)] for _ in range(rows)]


def random_invertible(K: Field, n: int, rng, max_tries: int = 64):
    for _ in range(max_tries):
        M = random_matrix(K, n, n, rng)
        if not K.is_zero(det(K, M)):
            return M
    raise NotInvertible("could not sample an invertible matrix")


def normalize_projective(K: Field, v):
    """Scale so the first nonzero coordinate is 1."""
    for x in v:
        if not K.is_zero(x):
            inv = K.inv(x)
            return [K.mul(inv, y) for y in v]
    raise ValueError("zero vector has no projective normalization")


def charpoly(K: Field, M):
    """Characteristic polynomial det(tI - M), coefficients lowest degree first.

    Reduces to upper Hessenberg form by similarity, then runs the usual
    recurrence on the leading principal minors.
    """
    n = len(M)
    H = [list(row) for row in M]
    for c in range(n - 2):
        piv = None
        for i in range(c + 1, n):
            if not K.is_zero(H[i][c]):
                piv = i
                break
        if piv is None:
            continue
        if piv != c + 1:
            H[piv], H[c + 1] = H[c + 1], H[piv]
            for row in H:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        inv = K.inv(H[c + 1][c])
        for i in range(c + 2, n):
            f = H[i][c]
            if K.is_zero(f):
                continue
            f = K.mul(f, inv)
            H[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(H[i], H[c + 1])]
            for row in H:
                row[c + 1] = K.add(row[c + 1], K.mul(f, row[i]))
    # polys[k] = charpoly of the leading k x k block
    polys = [[K.one]]
    for k in range(1, n + 1):
        a = H[k - 1][k - 1]
        nxt = _poly_sub(K, [K.zero] + polys[k - 1], _poly_scale(K, a, polys[k - 1]))
        prod = K.one
        for i in range(k - 1, 0, -1):
            prod = K.mul(prod, H[i][i - 1])
            if K.is_zero(prod):
                break
            coef = K.mul(prod, H[i - 1][k - 1])
            nxt = _poly_sub(K, nxt, _poly_scale(K, coef, polys[i - 1]))
        polys.append(nxt)
    return polys[n]


def _poly_scale(K, c, f):
    return [K.mul(c, x) for x in f]


def _poly_sub(K, f, g):
    n = max(len(f), len(g))
    f = list(f) + [K.zero] * (n - len(f))
    g = list(g) + [K.zero] * (n - len(g))
    return [K.sub(x, y) for x, y in zip(f, g)]
