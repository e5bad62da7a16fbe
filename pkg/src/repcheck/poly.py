"""Univariate polynomials over GF(q) and Berlekamp factorization.

A polynomial is a 1-D int64 array of field indices, lowest degree first, with
no trailing zeros (the zero polynomial is the empty array).
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx


def trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.flatnonzero(f)
    return f[: nz[-1] + 1] if nz.size else f[:0]


def deg(f) -> int:
    return len(f) - 1


def monic(F: FieldCtx, f):
    f = trim(f)
    if not len(f):
        raise ValueError("zero polynomial")
    return F.mul(f, F.inv(f[-1]))


def const(c) -> np.ndarray:
    return trim(np.array([c], dtype=np.int64))


def x_poly() -> np.ndarray:
    return np.array([0, 1], dtype=np.int64)


def add(F, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def sub(F, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.sub(a, b))


def mul(F: FieldCtx, f, g):
    if not len(f) or not len(g):
        return np.zeros(0, dtype=np.int64)
    # convolution as a Toeplitz matrix-vector product
    n = len(f) + len(g) - 1
    T = np.zeros((n, len(g)), dtype=np.int64)
    for j in range(len(g)):
        T[j : j + len(f), j] = f
    return trim(F.matmul(T, np.asarray(g, dtype=np.int64)))


def divmod_(F: FieldCtx, f, g):
    f = trim(f)
    g = trim(g)
    if not len(g):
        raise ZeroDivisionError("polynomial division by zero")
    r = f.copy()
    dg = deg(g)
    if len(r) <= dg:
        return np.zeros(0, dtype=np.int64), r
    lead_inv = F.inv(g[-1])
    qt = np.zeros(len(r) - dg, dtype=np.int64)
    for d in range(len(r) - 1, dg - 1, -1):
        c = r[d]
        if c:
            c = F.mul(c, lead_inv)
            qt[d - dg] = c
            r[d - dg : d + 1] = F.sub(r[d - dg : d + 1], F.mul(c, g))
    return trim(qt), trim(r[:dg])


def rem(F, f, g):
    return divmod_(F, f, g)[1]


def gcd(F, f, g):
    f, g = trim(f), trim(g)
    while len(g):
        f, g = g, rem(F, f, g)
    return monic(F, f) if len(f) else f


def derivative(F: FieldCtx, f):
    if len(f) <= 1:
        return np.zeros(0, dtype=np.int64)
    n = np.arange(1, len(f)) % F.p
    return trim(F.mul(f[1:], n))


def powmod(F, f, e: int, m):
    result = const(1)
    base = rem(F, f, m)
    while e:
        if e & 1:
            result = rem(F, mul(F, result, base), m)
        base = rem(F, mul(F, base, base), m)
        e >>= 1
    return result


def evaluate_matrix(F: FieldCtx, f, A):
    """f(A) for a square matrix A (Horner)."""
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(trim(f)):
        out = F.matmul(out, A)
        if c:
            out = F.add(out, F.mul(eye, c))
    return out


def _pth_root(F: FieldCtx, f):
    # f has only exponents divisible by p; coefficient roots via a -> a^(q/p)
    g = f[:: F.p]
    return F.pow(g, F.q // F.p)


def squarefree_decomposition(F: FieldCtx, f) -> list[tuple[np.ndarray, int]]:
    """Pairs (g, i) with g squarefree, pairwise coprime, f = lead * prod g^i."""
    f = monic(F, f)
    if deg(f) == 0:
        return []
    out = []
    df = derivative(F, f)
    if not len(df):
        return [(g, i * F.p) for g, i in squarefree_decomposition(F, _pth_root(F, f))]
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if deg(z) > 0:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if deg(c) > 0:
        out += [(g, i * F.p) for g, i in squarefree_decomposition(F, _pth_root(F, monic(F, c)))]
    return out


def berlekamp(F: FieldCtx, f) -> list[np.ndarray]:
    """Irreducible factors of a monic squarefree f."""
    from .linalg import nullspace

    f = monic(F, f)
    n = deg(f)
    if n <= 1:
        return [f]
    # row i: x^(q*i) mod f
    Q = np.zeros((n, n), dtype=np.int64)
    xq = powmod(F, x_poly(), F.q, f)
    cur = const(1)
    for i in range(n):
        Q[i, : len(cur)] = cur
        cur = rem(F, mul(F, cur, xq), f)
    M = F.sub(Q, np.eye(n, dtype=np.int64))
    # g with g (Q - I) = 0
    basis = nullspace(F, M.T)
    r = len(basis)
    if r == 1:
        return [f]
    factors = [f]
    for v in basis:
        v = trim(v)
        if deg(v) < 1:
            continue
        new = []
        for h in factors:
            if deg(h) == 1:
                new.append(h)
                continue
            # v^q = v mod h, so h = prod_c gcd(h, v - c)
            rest = h
            for c in range(F.q):
                g = gcd(F, rest, sub(F, v, const(c)))
                if deg(g) > 0:
                    new.append(g)
                    rest = divmod_(F, rest, g)[0]
                    if deg(rest) < 1:
                        break
            if deg(rest) > 0:
                new.append(monic(F, rest))
        factors = new
        if len(factors) == r:
            break
    return sorted((monic(F, g) for g in factors), key=lambda g: (deg(g), tuple(g)))


def factor(F: FieldCtx, f) -> list[tuple[np.ndarray, int]]:
    """Factor f into monic irreducibles with multiplicities (leading unit dropped)."""
    f = trim(f)
    if not len(f):
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for g, i in squarefree_decomposition(F, f):
        for h in berlekamp(F, g):
            out.append((h, i))
    out.sort(key=lambda t: (deg(t[0]), tuple(t[0]), t[1]))
    return out


def is_irreducible(F: FieldCtx, f) -> bool:
    fs = factor(F, f)
    return len(fs) == 1 and fs[0][1] == 1


def to_str(F: FieldCtx, f, var: str = "t") -> str:
    f = trim(f)
    if not len(f):
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = int(f[i])
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        else:
            terms.append(f"{c}{mon}")
    return " + ".join(terms)
