"""Representations of enumerated groups and the constructions built on them."""

from __future__ import annotations

import copy
import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from . import linalg as L
from .groups import GroupData, SubgroupRef, enumerate_group, transversal


class RepError(ValueError):
    pass


class Rep:
    """A representation given by one image matrix per group generator.

    Construction propagates the images along the BFS tree and checks every
    non-tree Cayley edge, so every Rep is a verified homomorphism.  The images
    of all group elements are kept (``element_images``).
    """

    def __init__(self, group: GroupData, images, label: str = "", check: bool = True):
        F = group.F
        images = [np.asarray(m, dtype=np.int64) for m in images]
        if len(images) != group.ngens:
            raise RepError(f"expected {group.ngens} generator images, got {len(images)}")
        if not images:
            raise RepError("no images")
        d = images[0].shape[0]
        for m in images:
            if m.shape != (d, d):
                raise RepError("generator images must be square of equal dimension")
        self.group = group
        self.F = F
        self.dim = d
        self.images = images
        self.label = label
        self._all = self._propagate(check)

    def __repr__(self):
        return f"<Rep {self.label or '?'} dim={self.dim}>"

    def _propagate(self, check: bool) -> np.ndarray:
        G, F, d = self.group, self.F, self.dim
        allimg = np.zeros((len(G), d, d), dtype=np.uint16)
        allimg[0] = np.eye(d, dtype=np.uint16)
        for layer in G.layers:
            X = allimg[layer].astype(np.int64).reshape(-1, d)
            # one (L*d, d) x (d, d) product per generator
            Y = np.stack([F.matmul(X, m).reshape(-1, d, d) for m in self.images], axis=1)  # (L, g, d, d)
            tree = G.is_tree_edge(layer[:, None], np.arange(G.ngens)[None, :])
            tgt = G.cayley[layer]
            allimg[tgt[tree]] = Y[tree]
            if check:
                nt = ~tree
                if np.any(allimg[tgt[nt]] != Y[nt]):
                    raise RepError("generator images do not define a representation (closure violated)")
        return allimg

    def element_images(self, idx=None) -> np.ndarray:
        if idx is None:
            return self._all.astype(np.int64)
        return self._all[idx].astype(np.int64)

    def image(self, i: int) -> np.ndarray:
        return self._all[i].astype(np.int64)


def rep_from_gens(G: GroupData, images, label: str = "") -> Rep:
    F = G.F
    for m in images:
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise RepError("dimension mismatch")
        if not L.is_invertible(F, m):
            raise RepError("generator image is singular")
    return Rep(G, images, label)


def natural(G: GroupData) -> Rep:
    return Rep(G, G.gens, "natural", check=False)


def trivial(G: GroupData, n: int = 1) -> Rep:
    return Rep(G, [np.eye(n, dtype=np.int64)] * G.ngens, f"trivial({n})", check=False)


def _same_group(*reps):
    g = reps[0].group
    for r in reps[1:]:
        if r.group is not g:
            raise RepError("modules belong to different groups")
    return g


def dual(v: Rep) -> Rep:
    F = v.F
    return Rep(v.group, [L.inverse(F, m).T.copy() for m in v.images], f"dual({v.label})")


def tensor(v: Rep, w: Rep) -> Rep:
    G = _same_group(v, w)
    return Rep(G, [L.kron(v.F, a, b) for a, b in zip(v.images, w.images)], f"tensor({v.label},{w.label})")


def dsum(v: Rep, w: Rep) -> Rep:
    G = _same_group(v, w)
    out = []
    for a, b in zip(v.images, w.images):
        m = np.zeros((v.dim + w.dim,) * 2, dtype=np.int64)
        m[: v.dim, : v.dim] = a
        m[v.dim :, v.dim :] = b
        out.append(m)
    return Rep(G, out, f"dsum({v.label},{w.label})")


def twist(v: Rep, i: int) -> Rep:
    return Rep(v.group, [v.F.frobenius(m, i) for m in v.images], f"twist({v.label},{i})")


def conjugate(v: Rep, T) -> Rep:
    """T^-1 rho T (an isomorphic copy of v)."""
    F = v.F
    Ti = L.inverse(F, T)
    return Rep(v.group, [F.matmul(F.matmul(Ti, m), T) for m in v.images], f"conj({v.label})")


def sym_monomials(n: int, b: int) -> list[tuple[int, ...]]:
    """Exponent tuples of degree b in n variables, descending lex (X^b, X^(b-1)Y, ...)."""
    out = [c for c in itertools.product(range(b, -1, -1), repeat=n) if sum(c) == b]
    return sorted(out, reverse=True)


def _sym_image(F, g, b: int) -> np.ndarray:
    n = g.shape[0]
    mons = sym_monomials(n, b)
    pos = {m: i for i, m in enumerate(mons)}
    unit = tuple([0] * n)
    out = np.zeros((len(mons), len(mons)), dtype=np.int64)
    lin = []
    for i in range(n):
        terms = {}
        for j in range(n):
            c = int(g[j, i])
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = c
        lin.append(terms)
    for col, alpha in enumerate(mons):
        poly = {unit: 1}
        for i, a in enumerate(alpha):
            for _ in range(a):
                new: dict = {}
                for m1, c1 in poly.items():
                    for m2, c2 in lin[i].items():
                        m = tuple(x + y for x, y in zip(m1, m2))
                        new[m] = int(F.add(new.get(m, 0), F.mul(c1, c2)))
                poly = {m: c for m, c in new.items() if c}
        for m, c in poly.items():
            out[pos[m], col] = c
    return out


def sym(b: int, v: Rep) -> Rep:
    """b-th symmetric power; basis = monomials in descending lex order."""
    if b < 0:
        raise RepError("symmetric power degree must be >= 0")
    return Rep(v.group, [_sym_image(v.F, m, b) for m in v.images], f"sym({b},{v.label})")


def _wedge2_image(F, g) -> np.ndarray:
    n = g.shape[0]
    pairs = list(itertools.combinations(range(n), 2))
    k = np.array([a for a, _ in pairs])
    l = np.array([b for _, b in pairs])
    # entry [(k,l),(i,j)] = g[k,i] g[l,j] - g[l,i] g[k,j]
    a = F.mul(g[k][:, k], g[l][:, l])
    b = F.mul(g[l][:, k], g[k][:, l])
    return F.sub(a, b)


def wedge2(v: Rep) -> Rep:
    if v.dim < 2:
        raise RepError("wedge2 needs dimension >= 2")
    return Rep(v.group, [_wedge2_image(v.F, m) for m in v.images], f"wedge2({v.label})")


def hom_module(v: Rep, w: Rep) -> Rep:
    """Hom(W, V) with g.f = rho_v(g) f rho_w(g)^-1; f (dim_v x dim_w) vectorized row-major."""
    G = _same_group(v, w)
    F = v.F
    imgs = [L.kron(F, a, L.inverse(F, b).T) for a, b in zip(v.images, w.images)]
    return Rep(G, imgs, f"hom({w.label},{v.label})")


def ad(v: Rep) -> Rep:
    r = hom_module(v, v)
    r.label = f"ad({v.label})"
    return r


def identity_vector(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64).reshape(1, -1)


def adq(v: Rep) -> Rep:
    """End(V) modulo the scalars."""
    r = quot(ad(v), identity_vector(v.dim))
    r.label = f"adq({v.label})"
    return r


def coords_in_basis(F, S, X) -> np.ndarray:
    """c with X = c @ S for a basis S (rows); RepError if X is outside span(S)."""
    S = np.atleast_2d(S)
    space = L.RowSpace(F, S.shape[1])
    space.add(S)
    if space.rank != len(S):
        raise RepError("basis vectors are linearly dependent")
    try:
        cR = space.coordinates(X)
        T = space.coordinates(S)
    except ValueError:
        raise RepError("basis does not span an invariant subspace") from None
    return F.matmul(cR, L.inverse(F, T))


def sub(v: Rep, basis) -> Rep:
    """Action on an invariant subspace spanned by the rows of ``basis``."""
    F = v.F
    S = np.atleast_2d(np.asarray(basis, dtype=np.int64))
    if S.shape[1] != v.dim or not len(S):
        raise RepError("basis vectors have the wrong length")
    imgs = []
    for m in v.images:
        c = coords_in_basis(F, S, F.matmul(S, m.T))
        imgs.append(c.T.copy())
    return Rep(v.group, imgs, f"sub({v.label},{len(S)})")


def quot(v: Rep, basis) -> Rep:
    """Action on V / span(basis); quotient basis = images of the standard
    vectors not among the pivots of ``basis``."""
    F = v.F
    S = np.atleast_2d(np.asarray(basis, dtype=np.int64))
    if S.shape[1] != v.dim or not len(S):
        raise RepError("basis vectors have the wrong length")
    r = len(S)
    if L.rank(F, S) != r:
        raise RepError("basis vectors are linearly dependent")
    C = L.complement_basis(F, S)
    B = np.vstack([S, C]).T.copy()
    Bi = L.inverse(F, B)
    imgs = []
    for m in v.images:
        t = F.matmul(F.matmul(Bi, m), B)
        if np.any(t[r:, :r]):
            raise RepError("basis does not span an invariant subspace")
        imgs.append(t[r:, r:].copy())
    return Rep(v.group, imgs, f"quot({v.label},{r})")


def induce(H: SubgroupRef, w: Rep) -> Rep:
    """Ind_H^G(w) for w a Rep of H.as_group(); basis (coset, inner) lexicographic."""
    G = H.parent
    F = G.F
    Hg = H.as_group()
    if w.group is not Hg:
        raise RepError("module to induce must be a representation of the subgroup")
    reps = transversal(G, H)
    r, d = len(reps), w.dim
    coset_of = np.full(len(G), -1, dtype=np.int64)
    Hm = G.elems[H.indices()]
    for c, t in enumerate(reps):
        coset_of[G.lookup_many(F.matmul(G.elems[t][None], Hm))] = c
    rep_inv = [L.inverse(F, G.elems[t]) for t in reps]
    imgs = []
    for s in range(G.ngens):
        m = np.zeros((r * d, r * d), dtype=np.int64)
        for i, t in enumerate(reps):
            x = F.matmul(G.gens[s], G.elems[t])
            j = int(coset_of[G.lookup(x)])
            h = F.matmul(rep_inv[j], x)
            m[j * d : (j + 1) * d, i * d : (i + 1) * d] = w.image(Hg.lookup(h))
        imgs.append(m)
    return Rep(G, imgs, f"induce({w.label})")


def extend_scalars(G: GroupData, reps: list[Rep], m: int, big=None):
    """Base change GF(q) -> GF(q^m): rebuild the group and the given Reps."""
    from .field import ff_make

    F = G.F
    big = big or ff_make(F.p, F.k * m)
    emb = F.embedding_into(big)
    G2 = enumerate_group([emb[g] for g in G.gens], big, cap=len(G), name=f"{G.name}@{big}")
    return G2, [Rep(G2, [emb[x] for x in r.images], r.label) for r in reps]


# --------------------------------------------------------------------------
# module-expression language
# --------------------------------------------------------------------------


class ParseError(ValueError):
    pass


@dataclass
class Env:
    """Names visible to module expressions over one group."""

    group: GroupData
    reps: dict = field(default_factory=dict)
    subgroups: dict = field(default_factory=dict)  # name -> (SubgroupRef, Env)
    seed: int = 0

    def lookup(self, name: str) -> Rep:
        if name in self.reps:
            return self.reps[name]
        if name == "natural":
            self.reps["natural"] = natural(self.group)
            return self.reps["natural"]
        raise ParseError(f"unknown module name {name!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok and not tok.isspace():
            out.append(tok)
        pos = m.end()
    return out


_UNARY = {"dual", "wedge2", "ad", "adq"}
_BINARY = {"tensor", "dsum"}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        if expect is not None and tok != expect:
            raise ParseError(f"expected {expect!r}, got {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected integer, got {tok!r}")
        return sign * int(tok)

    def basis(self):
        self.take("[")
        rows = []
        while True:
            self.take("[")
            row = [self.integer()]
            while self.peek() == ",":
                self.take()
                row.append(self.integer())
            self.take("]")
            rows.append(row)
            if self.peek() == ",":
                self.take()
                continue
            break
        self.take("]")
        return ("basis", rows)

    def expr(self):
        tok = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise ParseError(f"unexpected token {tok!r}")
        if self.peek() != "(":
            return ("name", tok)
        self.take("(")
        if tok == "trivial":
            node = ("trivial", self.integer())
        elif tok in _UNARY:
            node = (tok, self.expr())
        elif tok in _BINARY:
            a = self.expr()
            self.take(",")
            node = (tok, a, self.expr())
        elif tok == "sym":
            b = self.integer()
            self.take(",")
            node = ("sym", b, self.expr())
        elif tok == "twist":
            e = self.expr()
            self.take(",")
            node = ("twist", e, self.integer())
        elif tok == "induce":
            h = self.take()
            self.take(",")
            node = ("induce", h, self.expr())
        elif tok in ("sub", "quot"):
            e = self.expr()
            self.take(",")
            node = (tok, e, self.basis())
        elif tok == "ext":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(",")
            node = ("ext", a, b, self.integer())
        else:
            raise ParseError(f"unknown constructor {tok!r}")
        self.take(")")
        return node


def parse_expr(text: str):
    p = _Parser(text)
    node = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    return node


def unparse(node) -> str:
    kind = node[0]
    if kind == "name":
        return node[1]
    if kind == "trivial":
        return f"trivial({node[1]})"
    if kind == "basis":
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in node[1]) + "]"
    args = []
    for a in node[1:]:
        args.append(unparse(a) if isinstance(a, tuple) else str(a))
    return f"{kind}(" + ",".join(args) + ")"


def _eval(node, env: Env) -> Rep:
    kind = node[0]
    G = env.group
    if kind == "name":
        return env.lookup(node[1])
    if kind == "trivial":
        return trivial(G, node[1])
    if kind == "dual":
        return dual(_eval(node[1], env))
    if kind == "ad":
        return ad(_eval(node[1], env))
    if kind == "adq":
        return adq(_eval(node[1], env))
    if kind == "wedge2":
        return wedge2(_eval(node[1], env))
    if kind == "tensor":
        return tensor(_eval(node[1], env), _eval(node[2], env))
    if kind == "dsum":
        return dsum(_eval(node[1], env), _eval(node[2], env))
    if kind == "sym":
        return sym(node[1], _eval(node[2], env))
    if kind == "twist":
        return twist(_eval(node[1], env), node[2])
    if kind in ("sub", "quot"):
        v = _eval(node[1], env)
        F = G.F
        rows = [[x % F.p if F.k == 1 else x for x in r] for r in node[2][1]]
        basis = F.array(rows)
        return sub(v, basis) if kind == "sub" else quot(v, basis)
    if kind == "induce":
        if node[1] not in env.subgroups:
            raise ParseError(f"unknown subgroup {node[1]!r}")
        H, henv = env.subgroups[node[1]]
        return induce(H, _eval(node[2], henv))
    if kind == "ext":
        from .cohomology import ext1
        from .structure import build_extension

        v, w = _eval(node[1], env), _eval(node[2], env)
        space = ext1(v, w)
        i = node[3]
        if not 0 <= i < space.h1_dim:
            raise RepError(f"ext index {i} out of range (dim Ext^1 = {space.h1_dim})")
        return build_extension(v, w, space.maps[i])
    raise ParseError(f"unknown node {kind!r}")


def rep_build(expr: str, env: Env) -> Rep:
    """Evaluate a module expression against named modules."""
    node = parse_expr(expr)
    # copy so that relabelling never touches a module shared through env
    rep = copy.copy(_eval(node, env))
    rep.label = unparse(node)
    return rep
