"""Dense exact linear algebra over a FieldCtx.

Matrices are 2-D int64 numpy arrays of field indices.  Row vectors are used for
subspace bases (a basis is a (r, n) array); matrices act on column vectors.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import poly as P
from .field import FieldCtx, prime_factors


class RREF(NamedTuple):
    rank: int
    pivots: list[int]
    reduced: np.ndarray
    nullspace: np.ndarray


def _rref_inplace(F: FieldCtx, M: np.ndarray) -> list[int]:
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if not nz.size:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        if M[r, c] != 1:
            M[r] = F.mul(M[r], F.inv(M[r, c]))
        f = M[:, c].copy()
        f[r] = 0
        rows_to_fix = np.flatnonzero(f)
        if rows_to_fix.size:
            M[rows_to_fix] = F.sub(M[rows_to_fix], F.matmul(f[rows_to_fix, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rref(F: FieldCtx, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns.

    Pivot rule: the first row (in order) with a nonzero entry in the current
    column; elimination is complete (above and below).
    """
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    pivots = _rref_inplace(F, M)
    return M[: len(pivots)], pivots


def _nullspace_from_rref(F: FieldCtx, R, pivots, cols) -> np.ndarray:
    free = [c for c in range(cols) if c not in set(pivots)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for j, f in enumerate(free):
        N[j, f] = 1
        if len(pivots):
            N[j, pivots] = F.neg(R[:, f])
    return N


def mat_rref(F: FieldCtx, M) -> RREF:
    M = np.asarray(M, dtype=np.int64)
    R, piv = rref(F, M)
    return RREF(len(piv), piv, R, _nullspace_from_rref(F, R, piv, M.shape[1]))


def nullspace(F: FieldCtx, M) -> np.ndarray:
    """Basis (rows) of {v : M v = 0}."""
    M = np.asarray(M, dtype=np.int64)
    R, piv = rref(F, M)
    return _nullspace_from_rref(F, R, piv, M.shape[1])


def rank(F: FieldCtx, M) -> int:
    return len(rref(F, M)[1])


def inverse(F: FieldCtx, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(F, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:n, n:]


def is_invertible(F: FieldCtx, M) -> bool:
    M = np.asarray(M)
    return M.shape[0] == M.shape[1] and rank(F, M) == M.shape[0]


def kron(F: FieldCtx, a, b) -> np.ndarray:
    """Kronecker product; basis e_i (x) f_j ordered lexicographically in (i, j)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = F.mul(a[:, None, :, None], b[None, :, None, :])
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def matpow(F: FieldCtx, A, n: int):
    A = np.asarray(A, dtype=np.int64)
    result = np.eye(A.shape[0], dtype=np.int64)
    while n:
        if n & 1:
            result = F.matmul(result, A)
        A = F.matmul(A, A)
        n >>= 1
    return result


class RowSpace:
    """Incrementally maintained reduced echelon basis of a row space.

    ``add`` reduces a batch of rows against the current basis with one matrix
    product, then eliminates within the residual; cost is dominated by BLAS.
    """

    def __init__(self, F: FieldCtx, ncols: int):
        self.F = F
        self.ncols = ncols
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        if not self.pivots or not len(X):
            return X.copy()
        F = self.F
        return F.sub(X, F.matmul(X[:, self.pivots], self.basis))

    def add(self, X) -> np.ndarray:
        """Add rows; return the new basis rows they contributed (possibly none)."""
        X = self.reduce(np.atleast_2d(X))
        X = X[np.any(X != 0, axis=1)]
        if not len(X):
            return X
        F = self.F
        R, piv = rref(F, X)
        if self.pivots:
            self.basis = F.sub(self.basis, F.matmul(self.basis[:, piv], R))
        basis = np.vstack([self.basis, R])
        pivots = self.pivots + piv
        order = np.argsort(pivots, kind="stable")
        self.basis = basis[order]
        self.pivots = [pivots[i] for i in order]
        return R

    def contains(self, v) -> bool:
        return not np.any(self.reduce(np.atleast_2d(v)))

    def coordinates(self, X) -> np.ndarray:
        """Coefficients c with X = c @ basis; raises if some row is outside."""
        X = np.atleast_2d(np.asarray(X, dtype=np.int64))
        if np.any(self.reduce(X)):
            raise ValueError("vector not in row space")
        return X[:, self.pivots]

    def nullspace(self) -> np.ndarray:
        return _nullspace_from_rref(self.F, self.basis, self.pivots, self.ncols)


def complement_basis(F: FieldCtx, S) -> np.ndarray:
    """Standard basis vectors completing the row space of S to the full space."""
    S = np.atleast_2d(np.asarray(S, dtype=np.int64))
    n = S.shape[1]
    _, piv = rref(F, S) if len(S) else (None, [])
    free = [c for c in range(n) if c not in set(piv)]
    C = np.zeros((len(free), n), dtype=np.int64)
    C[np.arange(len(free)), free] = 1
    return C


def span_dim(F: FieldCtx, vectors) -> int:
    vectors = np.asarray(vectors)
    return rank(F, vectors) if len(vectors) else 0


def minpoly(F: FieldCtx, A) -> np.ndarray:
    """Minimal polynomial (monic) of a square matrix.

    The first power A^j that lies in the span of I, A, ..., A^(j-1) gives the
    relation; found by one column-echelon pass over vec(A^i).
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    space = RowSpace(F, n * n + n + 1)
    # augmented rows [vec(A^i) | e_i] track the combination producing each row
    cur = np.eye(n, dtype=np.int64)
    for j in range(n + 1):
        row = np.zeros(n * n + n + 1, dtype=np.int64)
        row[: n * n] = cur.reshape(-1)
        row[n * n + j] = 1
        red = space.reduce(row[None, :])[0]
        if not np.any(red[: n * n]):
            # red[n*n:] holds coefficients c with sum c_i A^i = 0, c_j = 1
            return P.monic(F, red[n * n :])
        space.add(row[None, :])
        cur = F.matmul(cur, A)
    raise AssertionError("minimal polynomial degree exceeded n")


def charpoly(F: FieldCtx, A) -> np.ndarray:
    """Characteristic polynomial via cyclic decomposition (Krylov spinning)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    space = RowSpace(F, n)
    result = P.const(1)
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        if space.contains(e):
            continue
        # minimal polynomial of e relative to the invariant subspace found so far
        frozen = RowSpace(F, n)
        frozen.basis, frozen.pivots = space.basis.copy(), list(space.pivots)
        local = RowSpace(F, 2 * n + 1)
        v = e
        krylov = []
        for j in range(n + 1):
            row = np.zeros(2 * n + 1, dtype=np.int64)
            row[:n] = frozen.reduce(v[None, :])[0]
            row[n + j] = 1
            red = local.reduce(row[None, :])[0]
            if not np.any(red[:n]):
                result = P.mul(F, result, P.monic(F, red[n:]))
                break
            local.add(row[None, :])
            krylov.append(v)
            v = F.matmul(A, v)
        space.add(np.array(krylov))
    return result


def _order_of_x_mod(F: FieldCtx, f) -> int:
    """Multiplicative order of x modulo an irreducible f with f(0) != 0."""
    d = P.deg(f)
    N = F.q**d - 1
    order = N
    for r in prime_factors(N):
        while order % r == 0:
            t = P.powmod(F, P.x_poly(), order // r, f)
            if len(t) == 1 and t[0] == 1:
                order //= r
            else:
                break
    return order


def mat_minpoly_order(F: FieldCtx, A, invertible: bool = True):
    """(minimal polynomial, multiplicative order or None).

    The order is read off the factored minimal polynomial: lcm of the orders
    of x modulo each irreducible factor, times the least p-power >= the
    largest multiplicity.
    """
    A = np.asarray(A, dtype=np.int64)
    mp = minpoly(F, A)
    if not invertible:
        return mp, None
    if mp[0] == 0:
        raise ZeroDivisionError("order requested for a singular matrix")
    from math import lcm

    order = 1
    top = 1
    for g, e in P.factor(F, mp):
        order = lcm(order, _order_of_x_mod(F, g))
        top = max(top, e)
    pp = 1
    while pp < top:
        pp *= F.p
    return mp, order * pp


def is_semisimple(F: FieldCtx, A) -> bool:
    """Squarefree minimal polynomial (the field here is perfect)."""
    return all(e == 1 for _, e in P.factor(F, minpoly(F, A)))


def batch_orders(F: FieldCtx, mats, limit: int | None = None) -> np.ndarray:
    """Multiplicative orders of a stack of invertible matrices by iterated products."""
    mats = np.asarray(mats, dtype=np.int64)
    N, n, _ = mats.shape
    eye = np.eye(n, dtype=np.int64)
    orders = np.zeros(N, dtype=np.int64)
    cur = mats.copy()
    active = np.arange(N)
    k = 1
    while active.size:
        done = np.all(cur == eye, axis=(1, 2))
        orders[active[done]] = k
        active = active[~done]
        cur = cur[~done]
        if not active.size:
            break
        k += 1
        if limit is not None and k > limit:
            raise ValueError("matrix order exceeds limit")
        cur = F.matmul(cur, mats[active])
    return orders
