"""H^0, H^1 and Ext^1 from the Cayley graph, without a presentation.

A 1-cocycle is determined by its values on the generators.  Writing those
values as one unknown vector u (block s = value on generator s), the value on
every element e is a linear function A_e(u), propagated along the BFS tree by
d(h s) = d(h) + h.d(s).  Each non-tree Cayley edge gives the linear condition
that the two ways of reaching its endpoint agree; Z^1 is the joint solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as L
from .groups import ResourceError
from .modules import Rep, hom_module

DEFAULT_MEM_CAP_MB = 512


@dataclass
class CocycleSpace:
    m: int
    g: int
    z1_dim: int
    b1_dim: int
    h1_dim: int
    h0_dim: int
    # basis of a complement of B^1 in Z^1; each an (m, g) array of generator values
    cocycles: list = field(default_factory=list)
    # for ext1: per cocycle, the off-diagonal blocks D(s) of the extension
    maps: list = field(default_factory=list)
    peak_bytes: int = 0

    def as_vector(self, i: int) -> np.ndarray:
        return self.cocycles[i].T.reshape(-1)


def h0(v: Rep) -> np.ndarray:
    """Basis (rows) of the fixed points."""
    F, m = v.F, v.dim
    I = np.eye(m, dtype=np.int64)
    stack = np.vstack([F.sub(x, I) for x in v.images])
    return L.nullspace(F, stack)


def coboundary_rows(v: Rep) -> np.ndarray:
    """Row i = the coboundary of e_i, as an unknown vector (s.e_i - e_i)_s."""
    F, m = v.F, v.dim
    I = np.eye(m, dtype=np.int64)
    return np.hstack([F.sub(x, I).T for x in v.images])


class _Store:
    """A_e matrices kept only while some Cayley edge still needs them."""

    def __init__(self, G, shape, cap_bytes):
        self.data: dict[int, np.ndarray] = {}
        self.need_in = np.full(len(G), G.ngens, dtype=np.int64)
        self.out_done = np.zeros(len(G), dtype=bool)
        self.unit = int(np.prod(shape)) * 2
        self.cap = cap_bytes
        self.peak = 0

    def put(self, e, a):
        self.data[int(e)] = a.astype(np.uint16)
        size = len(self.data) * self.unit
        self.peak = max(self.peak, size)
        if self.cap is not None and size > self.cap:
            raise ResourceError(
                f"cocycle propagation needs more than {self.cap // (1 << 20)} MB; raise the memory cap"
            )

    def get_many(self, idx):
        return np.stack([self.data[int(e)] for e in idx]).astype(np.int64)

    def consume(self, sources, targets):
        np.subtract.at(self.need_in, targets, 1)
        self.out_done[sources] = True
        for e in np.unique(np.concatenate([sources, targets])):
            if self.out_done[e] and self.need_in[e] == 0:
                self.data.pop(int(e), None)


def _constraint_space(v: Rep, cap_bytes, batch_rows=None) -> tuple[L.RowSpace, int]:
    G, F, m = v.group, v.F, v.dim
    g = G.ngens
    n = m * g
    space = L.RowSpace(F, n)
    store = _Store(G, (m, n), cap_bytes)
    store.put(0, np.zeros((m, n), dtype=np.int64))
    batch_rows = batch_rows or max(2048, 8 * n)
    buf: list[np.ndarray] = []
    nbuf = 0
    sgen = np.arange(g)
    for layer in G.layers:
        Ah = store.get_many(layer)  # (L, m, n)
        rho = v.element_images(layer)  # (L, m, m)
        tgt = G.cayley[layer]  # (L, g)
        tree = G.is_tree_edge(layer[:, None], sgen[None, :])
        cands = []
        for s in range(g):
            C = Ah.copy()
            blk = slice(s * m, (s + 1) * m)
            C[:, :, blk] = F.add(C[:, :, blk], rho)
            cands.append(C)
            for i in np.flatnonzero(tree[:, s]):
                store.put(tgt[i, s], C[i])
        for s in range(g):
            rows = np.flatnonzero(~tree[:, s])
            if rows.size:
                diff = F.sub(store.get_many(tgt[rows, s]), cands[s][rows])
                diff = diff.reshape(-1, n)
                diff = diff[np.any(diff != 0, axis=1)]
                if len(diff):
                    buf.append(diff)
                    nbuf += len(diff)
            if nbuf >= batch_rows:
                space.add(np.vstack(buf))
                buf, nbuf = [], 0
        store.consume(np.repeat(layer, g), tgt.reshape(-1))
        if space.rank == n:
            break
    if buf and space.rank < n:
        space.add(np.vstack(buf))
    return space, store.peak


def h1(v: Rep, mem_cap_mb: float | None = DEFAULT_MEM_CAP_MB) -> CocycleSpace:
    F, m, g = v.F, v.dim, v.group.ngens
    cap = None if mem_cap_mb is None else int(mem_cap_mb * (1 << 20))
    space, peak = _constraint_space(v, cap)
    Z = space.nullspace()
    h0dim = len(h0(v))
    B = L.RowSpace(F, m * g)
    B.add(coboundary_rows(v))
    b1 = B.rank
    reps = []
    for z in Z:
        if not B.contains(z):
            B.add(z[None, :])
            reps.append(z.reshape(g, m).T.copy())
    return CocycleSpace(
        m=m,
        g=g,
        z1_dim=len(Z),
        b1_dim=b1,
        h1_dim=len(Z) - b1,
        h0_dim=h0dim,
        cocycles=reps,
        peak_bytes=peak,
    )


def cocycle_maps(v: Rep, w: Rep, c: np.ndarray) -> list[np.ndarray]:
    """Off-diagonal extension blocks D(s) = c(s) rho_w(s) from a Hom(W,V) cocycle."""
    F = v.F
    return [F.matmul(c[:, s].reshape(v.dim, w.dim), w.images[s]) for s in range(c.shape[1])]


def ext1(v: Rep, w: Rep, mem_cap_mb: float | None = DEFAULT_MEM_CAP_MB) -> CocycleSpace:
    """H^1 of Hom(W, V): classifies extensions 0 -> V -> E -> W -> 0."""
    space = h1(hom_module(v, w), mem_cap_mb)
    space.maps = [cocycle_maps(v, w, c) for c in space.cocycles]
    return space


def verify_cocycle(v: Rep, c) -> bool:
    """Check a generator-value stack (m, g) against every non-tree Cayley edge."""
    G, F, m = v.group, v.F, v.dim
    c = np.asarray(c, dtype=np.int64)
    g = G.ngens
    d = np.zeros((len(G), m), dtype=np.int64)
    sgen = np.arange(g)
    for layer in G.layers:
        rho = v.element_images(layer)
        tree = G.is_tree_edge(layer[:, None], sgen[None, :])
        tgt = G.cayley[layer]
        vals = [F.add(d[layer], F.matmul(rho, c[:, s])) for s in range(g)]
        for s in range(g):
            t = tree[:, s]
            d[tgt[t, s]] = vals[s][t]
        for s in range(g):
            nt = ~tree[:, s]
            if np.any(d[tgt[nt, s]] != vals[s][nt]):
                return False
    return True
