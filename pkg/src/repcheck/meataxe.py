"""Irreducibility (Norton's test), composition factors, hom spaces, socle
series and indecomposability for Reps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as L
from . import poly as P
from .modules import Rep, dual, quot, sub

MAX_RANDOM_ATTEMPTS = 64
ENUM_LIMIT = 10**6
MAX_CERTIFIED_END = 6


class MeataxeError(RuntimeError):
    pass


# -- spinning ------------------------------------------------------------------


def spin(F, mats, vectors) -> L.RowSpace:
    """Smallest subspace containing ``vectors`` (rows) and closed under x -> M x."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    space = L.RowSpace(F, vectors.shape[1])
    new = space.add(vectors)
    mT = [np.asarray(m, dtype=np.int64).T for m in mats]
    while len(new) and space.rank < space.ncols:
        new = space.add(np.vstack([F.matmul(new, t) for t in mT]))
    return space


def is_invariant(v: Rep, basis) -> bool:
    basis = np.atleast_2d(basis)
    space = L.RowSpace(v.F, v.dim)
    space.add(basis)
    return all(space.contains(v.F.matmul(basis, m.T)) for m in v.images)


def annihilator(F, basis) -> np.ndarray:
    """Rows x with u . x = 0 for every row u of basis."""
    return L.nullspace(F, np.atleast_2d(basis))


# -- algebra elements ------------------------------------------------------------


def _algebra_elements(v: Rep, seed: int):
    """Seeded random elements of the matrix algebra spanned by the images, then
    a deterministic sequence of words by length as a terminating fallback."""
    F, d = v.F, v.dim
    rng = np.random.default_rng(seed)
    pool = [m.copy() for m in v.images]
    for _ in range(MAX_RANDOM_ATTEMPTS):
        a, b = rng.integers(0, len(pool), size=2)
        pool.append(F.matmul(pool[a], pool[b]))
        if len(pool) > 24:
            pool.pop(len(v.images))
        k = min(len(pool), 3)
        pick = rng.choice(len(pool), size=k, replace=False)
        coef = rng.integers(1, F.q, size=k)
        acc = np.zeros((d, d), dtype=np.int64)
        for c, i in zip(coef, pick):
            acc = F.add(acc, F.mul(pool[i], int(c)))
        yield acc
    # fallback: words in the generator images by increasing length, plus
    # sums of consecutive words
    prev = None
    ng = len(v.images)
    for length in itertools.count(1):
        if length > 8:
            return
        for word in itertools.product(range(ng), repeat=length):
            m = np.eye(d, dtype=np.int64)
            for s in word:
                m = F.matmul(m, v.images[s])
            yield m
            if prev is not None:
                yield F.add(m, prev)
            prev = m


# -- irreducibility ----------------------------------------------------------------


@dataclass
class IrreducibleResult:
    irreducible: bool
    witness: np.ndarray | None = None  # basis of a proper invariant subspace

    def __bool__(self):
        return self.irreducible


def is_irreducible(v: Rep, seed: int = 0) -> IrreducibleResult:
    F, d = v.F, v.dim
    if d == 1:
        return IrreducibleResult(True)
    trans = [m.T.copy() for m in v.images]
    tried = set()
    for A in _algebra_elements(v, seed):
        mp = L.minpoly(F, A)
        for f, _ in P.factor(F, mp):
            key = (A.tobytes(), f.tobytes())
            if key in tried:
                continue
            tried.add(key)
            fA = P.evaluate_matrix(F, f, A)
            N = L.nullspace(F, fA)
            S = spin(F, v.images, N[0])
            if S.rank < d:
                return IrreducibleResult(False, S.basis.copy())
            Nt = L.nullspace(F, fA.T)
            St = spin(F, trans, Nt[0])
            if St.rank < d:
                return IrreducibleResult(False, annihilator(F, St.basis))
            if len(N) == P.deg(f):
                return IrreducibleResult(True)
    raise MeataxeError("irreducibility test did not terminate within the word budget")


# -- hom spaces and isomorphism -------------------------------------------------------


def hom_space(v: Rep, w: Rep) -> list[np.ndarray]:
    """Basis of {X : W <- V | rho_w(s) X = X rho_v(s)}; each X is dim_w x dim_v."""
    if v.group is not w.group:
        raise ValueError("modules belong to different groups")
    F = v.F
    a, b = w.dim, v.dim
    Ia, Ib = np.eye(a, dtype=np.int64), np.eye(b, dtype=np.int64)
    space = L.RowSpace(F, a * b)
    for rv, rw in zip(v.images, w.images):
        space.add(F.sub(L.kron(F, rw, Ib), L.kron(F, Ia, rv.T)))
        if space.rank == a * b:
            break
    return [x.reshape(a, b) for x in space.nullspace()]


def _combos(F, basis, rng, tries):
    D = len(basis)
    for _ in range(tries):
        c = rng.integers(0, F.q, size=D)
        yield c
    if F.q**D <= ENUM_LIMIT:
        # one representative per projective point: first nonzero coordinate 1
        for lead in range(D):
            for rest in itertools.product(range(F.q), repeat=D - lead - 1):
                yield np.array([0] * lead + [1] + list(rest))


def _combine(F, basis, c):
    acc = np.zeros_like(basis[0])
    for ci, b in zip(c, basis):
        if ci:
            acc = F.add(acc, F.mul(b, int(ci)))
    return acc


def find_invertible(F, basis, seed: int = 0):
    """An invertible element of span(basis), or None (certified when enumerable)."""
    if not basis or basis[0].shape[0] != basis[0].shape[1]:
        return None
    rng = np.random.default_rng(seed)
    for c in _combos(F, basis, rng, MAX_RANDOM_ATTEMPTS):
        X = _combine(F, basis, c)
        if L.is_invertible(F, X):
            return X
    if F.q ** len(basis) > ENUM_LIMIT:
        raise MeataxeError("isomorphism search exhausted without certification")
    return None


def is_isomorphic(v: Rep, w: Rep, seed: int = 0) -> bool:
    if v.dim != w.dim:
        return False
    return find_invertible(v.F, hom_space(v, w), seed) is not None


# -- composition factors ---------------------------------------------------------------


@dataclass
class Factor:
    rep: Rep
    mult: int
    label: str = ""

    @property
    def dim(self):
        return self.rep.dim


class FactorList(list):
    """List of Factor; sum of mult * dim equals the dimension analysed."""

    @property
    def total_dim(self) -> int:
        return sum(f.mult * f.dim for f in self)

    def summary(self) -> list:
        return [{"label": f.label, "dim": f.dim, "mult": f.mult} for f in self]


def _irreducible_pieces(v: Rep, seed: int) -> list[Rep]:
    res = is_irreducible(v, seed)
    if res.irreducible:
        return [v]
    return _irreducible_pieces(sub(v, res.witness), seed) + _irreducible_pieces(quot(v, res.witness), seed)


def _match_label(rep: Rep, names: dict | None, seed: int) -> str:
    if names:
        for name, other in names.items():
            if other.dim == rep.dim and is_isomorphic(rep, other, seed):
                return name
    return f"dim{rep.dim}"


def group_factors(pieces: list[Rep], names: dict | None = None, seed: int = 0) -> FactorList:
    out = FactorList()
    for r in pieces:
        for f in out:
            if f.dim == r.dim and is_isomorphic(f.rep, r, seed):
                f.mult += 1
                break
        else:
            out.append(Factor(r, 1, _match_label(r, names, seed)))
    return out


def chop(v: Rep, names: dict | None = None, seed: int = 0) -> FactorList:
    """Composition factors with multiplicities, grouped up to isomorphism.

    ``names`` maps labels to known irreducible Reps used to name factors.
    """
    return group_factors(_irreducible_pieces(v, seed), names, seed)


# -- socle and radical series -------------------------------------------------------------


def socle_basis(v: Rep, simples: list[Rep]) -> np.ndarray:
    space = L.RowSpace(v.F, v.dim)
    for s in simples:
        for X in hom_space(s, v):
            space.add(X.T)
    return space.basis.copy()


def socle_series(v: Rep, names: dict | None = None, seed: int = 0) -> list[FactorList]:
    """Layers soc_1, soc_2/soc_1, ... each as a FactorList."""
    factors = chop(v, names, seed)
    simples = [f.rep for f in factors]
    names = dict(names or {})
    for f in factors:
        names.setdefault(f.label, f.rep)
    layers = []
    cur = v
    while cur.dim:
        soc = socle_basis(cur, simples)
        layers.append(chop(sub(cur, soc), names, seed))
        if len(soc) == cur.dim:
            break
        cur = quot(cur, soc)
    return layers


def radical_series(v: Rep, names: dict | None = None, seed: int = 0) -> list[FactorList]:
    """Layers V/rad V, rad V/rad^2 V, ...: duals of the socle layers of V*."""
    dnames = {k: dual(r) for k, r in (names or {}).items()}
    layers = socle_series(dual(v), dnames, seed)
    out = []
    for layer in layers:
        fl = FactorList(Factor(dual(f.rep), f.mult, f.label) for f in layer)
        out.append(fl)
    return out


# -- indecomposability ------------------------------------------------------------------


@dataclass
class IndecomposableResult:
    verdict: str  # "indecomposable" | "decomposable" | "uncertified"
    end_dim: int
    summands: list = field(default_factory=list)  # bases (rows, in V coordinates)
    method: str = ""

    @property
    def indecomposable(self) -> bool:
        return self.verdict == "indecomposable"


def _splitting(F, E):
    """(K1, K2) Fitting kernels if E's minimal polynomial has coprime factors."""
    fs = P.factor(F, L.minpoly(F, E))
    if len(fs) < 2:
        return None
    f, a = fs[0]
    g = P.const(1)
    for h, b in fs[1:]:
        for _ in range(b):
            g = P.mul(F, g, h)
    fa = P.const(1)
    for _ in range(a):
        fa = P.mul(F, fa, f)
    K1 = L.nullspace(F, P.evaluate_matrix(F, fa, E))
    K2 = L.nullspace(F, P.evaluate_matrix(F, g, E))
    return K1, K2


def _primary_eigenvalue(F, E):
    """lambda if minpoly(E) = (t - lambda)^a, else None."""
    fs = P.factor(F, L.minpoly(F, E))
    if len(fs) == 1 and P.deg(fs[0][0]) == 1:
        return int(F.neg(fs[0][0][0]))
    return None


def _local_by_ideal(F, basis, d) -> bool:
    """True if span(basis) = k.I + J with J a nilpotent two-sided ideal."""
    I = np.eye(d, dtype=np.int64)
    J = []
    for b in basis:
        lam = _primary_eigenvalue(F, b)
        if lam is None:
            return False
        J.append(F.sub(b, F.mul(I, lam)))
    Jspace = L.RowSpace(F, d * d)
    Jspace.add(np.array([x.reshape(-1) for x in J]))
    if Jspace.rank != len(basis) - 1:
        return False
    Jb = [x.reshape(d, d) for x in Jspace.basis]
    for x in Jb:
        for b in basis:
            if not Jspace.contains(F.matmul(x, b).reshape(-1)) or not Jspace.contains(F.matmul(b, x).reshape(-1)):
                return False
    power = Jb
    for _ in range(d + 1):
        if not power:
            return True
        nxt = L.RowSpace(F, d * d)
        for x in power:
            for y in Jb:
                nxt.add(F.matmul(x, y).reshape(1, -1))
        power = [r.reshape(d, d) for r in nxt.basis]
    return not power


def is_indecomposable(v: Rep, seed: int = 0) -> IndecomposableResult:
    F, d = v.F, v.dim
    end = hom_space(v, v)
    D = len(end)
    if D == 1:
        return IndecomposableResult("indecomposable", D, [np.eye(d, dtype=np.int64)], "end-dim-1")
    rng = np.random.default_rng(seed)
    split = None
    for b in end:
        split = _splitting(F, b)
        if split:
            break
    if split is None and D <= MAX_CERTIFIED_END and _local_by_ideal(F, end, d):
        return IndecomposableResult("indecomposable", D, [np.eye(d, dtype=np.int64)], "local-end")
    if split is None:
        for c in _combos(F, end, rng, MAX_RANDOM_ATTEMPTS):
            split = _splitting(F, _combine(F, end, c))
            if split:
                break
    if split is None:
        if D <= MAX_CERTIFIED_END and F.q**D <= ENUM_LIMIT:
            # every element of End has primary minimal polynomial: End is local
            return IndecomposableResult("indecomposable", D, [np.eye(d, dtype=np.int64)], "enumerated")
        return IndecomposableResult("uncertified", D, [], "end too large")
    K1, K2 = split
    summands = []
    for K in (K1, K2):
        r = is_indecomposable(sub(v, K), seed)
        if r.verdict == "uncertified":
            return IndecomposableResult("uncertified", D, [], r.method)
        summands += [F.matmul(B, K) for B in r.summands]
    return IndecomposableResult("decomposable", D, summands, "fitting")
