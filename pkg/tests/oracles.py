"""Slow, independent reference implementations used to cross-check the engine.

Everything here is plain Python over GF(p) (or GF(p^k) via explicit
polynomial arithmetic) and shares no code with the package.
"""

from __future__ import annotations

import itertools


# -- GF(p^k) by coefficient lists ------------------------------------------------------


class SlowField:
    def __init__(self, p, modulus=(0, 1)):
        self.p = p
        self.mod = list(modulus)
        self.k = len(modulus) - 1
        self.q = p**self.k

    def to_coeffs(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, c):
        return sum(int(x) * self.p**i for i, x in enumerate(c))

    def add(self, a, b):
        return self.from_coeffs([(x + y) % self.p for x, y in zip(self.to_coeffs(a), self.to_coeffs(b))])

    def neg(self, a):
        return self.from_coeffs([(-x) % self.p for x in self.to_coeffs(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p, k = self.p, self.k
        x, y = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] = (prod[i + j] + u * v) % p
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for t in range(k + 1):
                    prod[d - k + t] = (prod[d - k + t] - c * self.mod[t]) % p
        return self.from_coeffs(prod[:k])

    def pow(self, a, n):
        r = 1
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def inv(self, a):
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError


# -- matrices as tuples of tuples ---------------------------------------------------------


def mat_mul(K, A, B):
    n, m, r = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            acc = 0
            for l in range(m):
                acc = K.add(acc, K.mul(A[i][l], B[l][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def as_tuple(M):
    return tuple(tuple(int(x) for x in row) for row in M)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def rank(K, rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = K.inv(rows[r][c])
        rows[r] = [K.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def closure(K, gens):
    """All elements of the group generated by gens (tuple matrices)."""
    n = len(gens[0])
    seen = {identity(n)}
    todo = [identity(n)]
    while todo:
        x = todo.pop()
        for g in gens:
            y = mat_mul(K, x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def order(K, M):
    n = len(M)
    e = identity(n)
    x, k = M, 1
    while x != e:
        x = mat_mul(K, x, M)
        k += 1
    return k


def is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


# -- cohomology by brute force --------------------------------------------------------------


def z1_count(K, gens, module_gens):
    """|Z^1(G, M)| by trying every assignment of values on the generators.

    A candidate is extended to all of G by d(x g) = d(x) + x.d(g) over a
    spanning search and accepted when d(xy) = d(x) + x.d(y) holds for every pair.
    """
    m = len(module_gens[0])
    g = len(gens)
    elems = sorted(closure(K, gens))
    # action matrix of every element, via the same search
    rho = {identity(len(gens[0])): identity(m)}
    word = [identity(len(gens[0]))]
    while word:
        x = word.pop()
        for s, gm in enumerate(gens):
            y = mat_mul(K, x, gm)
            if y not in rho:
                rho[y] = mat_mul(K, rho[x], module_gens[s])
                word.append(y)
    count = 0
    vecs = list(itertools.product(range(K.q), repeat=m))
    for vals in itertools.product(vecs, repeat=g):
        d = {identity(len(gens[0])): (0,) * m}
        stack = [identity(len(gens[0]))]
        ok = True
        while stack and ok:
            x = stack.pop()
            for s, gm in enumerate(gens):
                y = mat_mul(K, x, gm)
                img = tuple(
                    K.add(d[x][i], sum_mul(K, rho[x][i], vals[s])) for i in range(m)
                )
                if y in d:
                    if d[y] != img:
                        ok = False
                        break
                else:
                    d[y] = img
                    stack.append(y)
        if ok:
            count += 1
    return count


def sum_mul(K, row, vec):
    acc = 0
    for a, b in zip(row, vec):
        acc = K.add(acc, K.mul(a, b))
    return acc


def fixed_count(K, module_gens):
    m = len(module_gens[0])
    n = 0
    for v in itertools.product(range(K.q), repeat=m):
        if all(tuple(sum_mul(K, row, v) for row in g) == v for g in module_gens):
            n += 1
    return n


def log_q(q, n):
    d = 0
    while n > 1:
        assert n % q == 0
        n //= q
        d += 1
    return d


def weak_span_bruteforce(K, gens, module_gens):
    """Rank of the span of semisimple images, all in plain Python."""
    n = len(gens[0])
    rho = {identity(n): identity(len(module_gens[0]))}
    stack = [identity(n)]
    while stack:
        x = stack.pop()
        for s, gm in enumerate(gens):
            y = mat_mul(K, x, gm)
            if y not in rho:
                rho[y] = mat_mul(K, rho[x], module_gens[s])
                stack.append(y)
    rows = []
    for img in set(rho.values()):
        if order(K, img) % K.p:
            rows.append([x for row in img for x in row])
    return rank(K, rows)


def invariant_form_count(K, module_gens):
    """Number of invariant bilinear forms (exhaustive over all d x d matrices)."""
    d = len(module_gens[0])
    count = 0
    for flat in itertools.product(range(K.q), repeat=d * d):
        B = tuple(tuple(flat[i * d : (i + 1) * d]) for i in range(d))
        ok = True
        for g in module_gens:
            gt = tuple(zip(*g))
            if mat_mul(K, mat_mul(K, gt, B), g) != B:
                ok = False
                break
        if ok:
            count += 1
    return count
