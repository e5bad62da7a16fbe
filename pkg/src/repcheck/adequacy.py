"""Weak adequacy (span of semisimple images) and the adequacy verdict."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import linalg as L
from .cohomology import DEFAULT_MEM_CAP_MB, ext1, h1
from .modules import Rep, adq, trivial

CHUNK = 512


def _p_free_part(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def batch_matpow(F, mats: np.ndarray, e: int) -> np.ndarray:
    out = np.broadcast_to(np.eye(mats.shape[-1], dtype=np.int64), mats.shape).copy()
    base = mats.copy()
    while e:
        if e & 1:
            out = F.matmul(out, base)
        e >>= 1
        if e:
            base = F.matmul(base, base)
    return out


def semisimple_mask(v: Rep) -> np.ndarray:
    """rho(g) semisimple, i.e. its order is prime to p, for every element g.

    With ord(g) = p^a r, p not dividing r, rho(g) is semisimple iff rho(g)^r = 1.
    """
    G, F = v.group, v.F
    orders = G.orders
    mask = np.zeros(len(G), dtype=bool)
    eye = np.eye(v.dim, dtype=np.int64)
    r_all = np.array([_p_free_part(int(o), F.p) for o in orders])
    for r in np.unique(r_all):
        idx = np.flatnonzero(r_all == r)
        for lo in range(0, len(idx), CHUNK):
            part = idx[lo : lo + CHUNK]
            pw = batch_matpow(F, v.element_images(part), int(r))
            mask[part] = np.all(pw == eye, axis=(1, 2))
    return mask


def weak_span(v: Rep) -> int:
    """Dimension of the span of the semisimple images rho(g) inside End(V)."""
    F, d = v.F, v.dim
    ss = np.flatnonzero(semisimple_mask(v))
    space = L.RowSpace(F, d * d)
    for lo in range(0, len(ss), CHUNK):
        part = ss[lo : lo + CHUNK]
        space.add(v.element_images(part).reshape(len(part), d * d))
        if space.rank == d * d:
            break
    return space.rank


@dataclass
class AdequacyReport:
    group: str
    module: str
    dim: int
    span_dim: int
    weak_ok: bool
    h1_trivial_dim: int
    h1_adq_dim: int
    ext1_self_dim: int
    adequate: bool
    conditions: dict = field(default_factory=dict)
    timings_ms: dict = field(default_factory=dict)

    def summary(self, timings: bool = False) -> dict:
        out = asdict(self)
        if not timings:
            out.pop("timings_ms")
        return out


def adequacy_report(v: Rep, workers: int = 1, mem_cap_mb: float | None = DEFAULT_MEM_CAP_MB) -> AdequacyReport:
    G = v.group
    timings = {}

    def timed(name, fn):
        t = time.perf_counter()
        out = fn()
        timings[name] = int(round(1000 * (time.perf_counter() - t)))
        return out

    tasks = {
        "weak_span": lambda: weak_span(v),
        "h1_trivial": lambda: h1(trivial(G, 1), mem_cap_mb).h1_dim,
        "h1_adq": lambda: h1(adq(v), mem_cap_mb).h1_dim,
        "ext1_self": lambda: ext1(v, v, mem_cap_mb).h1_dim,
    }
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = {k: pool.submit(timed, k, fn) for k, fn in tasks.items()}
            res = {k: f.result() for k, f in futs.items()}
    else:
        res = {k: timed(k, fn) for k, fn in tasks.items()}
    d = v.dim
    weak_ok = res["weak_span"] == d * d
    # a full span forces End(V) = M_d(k), so V is absolutely irreducible
    conds = {
        "h1_trivial_zero": res["h1_trivial"] == 0,
        "h1_adq_zero": res["h1_adq"] == 0,
        "span_full": weak_ok,
    }
    return AdequacyReport(
        group=G.name,
        module=v.label,
        dim=d,
        span_dim=res["weak_span"],
        weak_ok=weak_ok,
        h1_trivial_dim=res["h1_trivial"],
        h1_adq_dim=res["h1_adq"],
        ext1_self_dim=res["ext1_self"],
        adequate=all(conds.values()),
        conditions=conds,
        timings_ms=timings,
    )
