"""Finite matrix groups enumerated by breadth-first search on the Cayley graph."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import linalg as L
from .field import FieldCtx, FieldError, ff_make, parse_matrix

DEFAULT_CAP = 200_000


class ResourceError(RuntimeError):
    """A configured size or memory cap was exceeded."""


class GroupError(ValueError):
    pass


def _key(m: np.ndarray) -> bytes:
    return np.ascontiguousarray(m, dtype=np.uint16).tobytes()


class GroupData:
    """A fully enumerated finite matrix group.

    Element 0 is the identity.  ``cayley[i, s]`` is the index of
    ``elems[i] @ gens[s]``; ``parent[i], parent_gen[i]`` is the BFS tree edge
    reaching element i; ``layers`` lists element indices by BFS depth.
    """

    def __init__(self, F: FieldCtx, gens, elems, index, cayley, parent, parent_gen, layers, name=""):
        self.F = F
        self.gens = gens
        self.elems = elems
        self.index = index
        self.cayley = cayley
        self.parent = parent
        self.parent_gen = parent_gen
        self.layers = layers
        self.name = name
        self._orders = None
        self._lock = threading.Lock()

    def __len__(self):
        return len(self.elems)

    def __repr__(self):
        return f"<GroupData {self.name or '?'} order={len(self)} over {self.F}>"

    @property
    def order(self) -> int:
        return len(self.elems)

    @property
    def degree(self) -> int:
        return self.elems.shape[1]

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def is_tree_edge(self, h, s):
        e = self.cayley[h, s]
        return (self.parent[e] == h) & (self.parent_gen[e] == s) & (e != 0)

    @property
    def nontree(self) -> list[tuple[int, int]]:
        """Cayley edges (h, s) that are not BFS tree edges."""
        h, s = np.nonzero(~self.is_tree_edge(np.arange(len(self))[:, None], np.arange(self.ngens)[None, :]))
        return list(zip(h.tolist(), s.tolist()))

    def lookup(self, m) -> int:
        try:
            return self.index[_key(m)]
        except KeyError:
            raise GroupError("matrix is not an element of the group") from None

    def lookup_many(self, mats) -> np.ndarray:
        return np.array([self.lookup(m) for m in mats], dtype=np.int64)

    def mul(self, i: int, j: int) -> int:
        return self.lookup(self.F.matmul(self.elems[i], self.elems[j]))

    def inverse(self, i: int) -> int:
        return self.lookup(L.inverse(self.F, self.elems[i]))

    def element_order(self, i: int) -> int:
        return int(self.orders[i])

    @property
    def orders(self) -> np.ndarray:
        """Orders of all elements, computed once (thread-safe)."""
        if self._orders is None:
            with self._lock:
                if self._orders is None:
                    self._orders = L.batch_orders(self.F, self.elems)
        return self._orders

    def word_images(self, gen_images, compose) -> list:
        """Propagate per-generator values along the BFS tree.

        ``compose(parent_value, s)`` returns the value at parent * gens[s].
        """
        vals = [None] * len(self)
        for layer in self.layers[1:]:
            for e in layer:
                vals[e] = compose(vals[self.parent[e]], self.parent_gen[e])
        return vals


def enumerate_group(gens, F: FieldCtx, cap: int = DEFAULT_CAP, name: str = "") -> GroupData:
    """Close ``gens`` under multiplication by BFS (FIFO, generators in order)."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    if not gens:
        raise GroupError("at least one generator is required")
    n = gens[0].shape[0]
    for g in gens:
        if g.shape != (n, n):
            raise GroupError("generators must be square matrices of one size")
        if not L.is_invertible(F, g):
            raise GroupError("singular generator")
    if cap < 1:
        raise GroupError("cap must be >= 1")
    ident = np.eye(n, dtype=np.int64)
    elems = [ident]
    index = {_key(ident): 0}
    parent = [-1]
    parent_gen = [-1]
    cayley_rows: list[list[int]] = []
    layers = [np.array([0])]
    frontier = [0]
    gstack = np.stack(gens)
    while frontier:
        X = np.stack([elems[i] for i in frontier])
        prods = F.matmul(X[:, None, :, :], gstack[None, :, :, :])  # (L, g, n, n)
        raw = np.ascontiguousarray(prods, dtype=np.uint16)
        nxt = []
        for a, h in enumerate(frontier):
            row = []
            for s in range(len(gens)):
                k = raw[a, s].tobytes()
                j = index.get(k)
                if j is None:
                    j = len(elems)
                    if j >= cap:
                        raise ResourceError(f"group enumeration exceeded cap of {cap} elements")
                    index[k] = j
                    elems.append(prods[a, s])
                    parent.append(h)
                    parent_gen.append(s)
                    nxt.append(j)
                row.append(j)
            cayley_rows.append(row)
        frontier = nxt
        if nxt:
            layers.append(np.array(nxt))
    cayley = np.array(cayley_rows, dtype=np.int64)
    return GroupData(
        F,
        gens,
        np.stack(elems),
        index,
        cayley,
        np.array(parent),
        np.array(parent_gen),
        layers,
        name=name,
    )


@dataclass
class SubgroupRef:
    parent: GroupData
    member: np.ndarray  # bool mask over parent indices
    gens: list[int]
    _group: GroupData | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return int(self.member.sum())

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.member)

    def as_group(self, name: str = "") -> GroupData:
        """The subgroup enumerated as a GroupData on its own generators."""
        if self._group is None:
            gens = [self.parent.elems[i] for i in self.gens] or [np.eye(self.parent.degree, dtype=np.int64)]
            self._group = enumerate_group(gens, self.parent.F, cap=len(self.parent), name=name)
        return self._group


def _closure(G: GroupData, gens: list[int]) -> np.ndarray:
    member = np.zeros(len(G), dtype=bool)
    member[0] = True
    if not gens:
        return member
    gm = G.elems[gens]
    frontier = [0]
    while frontier:
        X = G.elems[frontier]
        prods = G.F.matmul(X[:, None], gm[None, :])
        nxt = []
        for m in prods.reshape(-1, G.degree, G.degree):
            j = G.lookup(m)
            if not member[j]:
                member[j] = True
                nxt.append(j)
        frontier = nxt
    return member


def subgroup(G: GroupData, elements) -> SubgroupRef:
    """Subgroup generated by the given element indices (greedy generator choice)."""
    member = np.zeros(len(G), dtype=bool)
    member[0] = True
    gens: list[int] = []
    for x in sorted(set(int(i) for i in elements)):
        if not member[x]:
            gens.append(x)
            member = _closure(G, gens)
    return SubgroupRef(G, member, gens)


def is_prime_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def gplus(G: GroupData) -> SubgroupRef:
    """Subgroup generated by all elements of p-power order, p = char of the field."""
    p = G.F.p
    pel = [i for i, o in enumerate(G.orders) if o > 1 and is_prime_power_of(int(o), p)]
    return subgroup(G, pel)


def transversal(G: GroupData, H: SubgroupRef) -> list[int]:
    """Left coset representatives, least index per coset; the first is the identity."""
    covered = np.zeros(len(G), dtype=bool)
    Hm = G.elems[H.indices()]
    reps = []
    for g in range(len(G)):
        if covered[g]:
            continue
        reps.append(g)
        coset = G.F.matmul(G.elems[g][None], Hm)
        covered[G.lookup_many(coset)] = True
    return reps


def load_group_spec(path, cap: int | None = None) -> tuple[GroupData, str]:
    """Read a JSON group spec file: {name, field: {p, k, modulus?}, generators, cap?}.

    An explicit ``cap`` overrides the file's own.
    """
    try:
        doc = json.loads(Path(path).read_text())
        fld = doc["field"]
        p, k = int(fld["p"]), int(fld.get("k", 1))
        F = FieldCtx(p, k, fld["modulus"]) if fld.get("modulus") else ff_make(p, k)
        gens = [parse_matrix(F, g) for g in doc["generators"]]
    except (KeyError, TypeError, json.JSONDecodeError, FieldError) as exc:
        raise GroupError(f"bad group spec {path}: {exc}") from exc
    name = doc.get("name", Path(path).stem)
    cap = cap if cap is not None else int(doc.get("cap", DEFAULT_CAP))
    return enumerate_group(gens, F, cap=cap, name=name), name
