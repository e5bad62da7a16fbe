"""Built-in groups and modules.

Each builder returns a CatalogGroup: the enumerated group, an Env of named
modules for the expression language, and (for sl2/psl2) the complete list of
simple modules over the working field.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from . import linalg as L
from .cohomology import ext1
from .field import ff_make, is_prime
from .groups import DEFAULT_CAP, GroupData, enumerate_group, gplus
from .meataxe import is_indecomposable
from .modules import Env, Rep, induce, natural, sub, sym, tensor, trivial, twist
from .structure import build_extension, invariant_forms, loewy_selfdual, zero_extension


class CatalogError(ValueError):
    pass


@dataclass
class CatalogGroup:
    name: str
    group: GroupData
    env: Env
    simples: list | None = None
    note: str = ""

    @property
    def names(self) -> dict:
        """Named simple modules, used to label composition factors."""
        if self.simples is None:
            return {}
        return {s.label: s for s in self.simples}

    def module(self, expr: str) -> Rep:
        from .modules import rep_build

        return rep_build(expr, self.env)


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            k, n = 0, q
            while n % p == 0:
                n //= p
                k += 1
            if n == 1:
                return p, k
            break
    raise CatalogError(f"{q} is not a prime power")


def sl2_generators(F) -> list[np.ndarray]:
    """Two generators of SL_2(q) when a short candidate list finds them, else three."""
    q, w = F.q, F.generator if F.k > 1 else 1
    x = np.array([[1, 1], [0, 1]])
    minus1 = int(F.neg(1))
    cands = [
        np.array([[1, 0], [w, 1]]),
        np.array([[0, 1], [minus1, w]]),
    ]
    target = q * (q * q - 1)
    for y in cands:
        try:
            G = enumerate_group([x, y], F, cap=target)
        except Exception:
            continue
        if len(G) == target:
            return [x, y]
    wi = int(F.inv(w))
    return [x, np.array([[1, 0], [1, 1]]), np.array([[w, 0], [0, wi]])]


def steinberg_module(nat: Rep, a: int) -> Rep:
    """L(a) = tensor over i of Sym^{a_i}(natural)^{(i)}, a = sum a_i p^i."""
    F = nat.F
    digits = [(a // F.p**i) % F.p for i in range(F.k)]
    parts = [twist(sym(ai, nat), i) if i else sym(ai, nat) for i, ai in enumerate(digits) if ai]
    if not parts:
        rep = trivial(nat.group, 1)
    else:
        rep = parts[0]
        for r in parts[1:]:
            rep = tensor(rep, r)
    rep.label = f"L{a}"
    return rep


def sl2(q: int, cap: int = DEFAULT_CAP) -> CatalogGroup:
    p, k = _prime_power(q)
    F = ff_make(p, k)
    G = enumerate_group(sl2_generators(F), F, cap=cap, name=f"SL2({q})")
    nat = natural(G)
    simples = [steinberg_module(nat, a) for a in range(q)]
    env = Env(G, {"natural": nat, **{s.label: s for s in simples}, "St": simples[-1]})
    return CatalogGroup(f"sl2(q={q})", G, env, simples, "SL_2(q), simples L(a), a < q")


def psl2(p: int, cap: int = DEFAULT_CAP) -> CatalogGroup:
    """PSL_2(p) as the image of SL_2(p) acting on L(2)."""
    if not is_prime(p) or p == 2:
        raise CatalogError("psl2 needs an odd prime p")
    F = ff_make(p)
    base = enumerate_group(sl2_generators(F), F, cap=cap, name=f"SL2({p})")
    bnat = natural(base)
    gens = sym(2, bnat).images
    G = enumerate_group(gens, F, cap=cap, name=f"PSL2({p})")
    simples = []
    for a in range(0, p, 2):
        r = Rep(G, sym(a, bnat).images, f"L{a}") if a else trivial(G, 1)
        r.label = f"L{a}"
        simples.append(r)
    env = Env(G, {"natural": natural(G), **{s.label: s for s in simples}})
    return CatalogGroup(f"psl2(p={p})", G, env, simples, "PSL_2(p) on L(2); simples L(a), a even")


def omega4plus5(cap: int = DEFAULT_CAP) -> CatalogGroup:
    """Omega_4^+(5) = SL_2(5) x SL_2(5) / <(-1,-1)> acting on GF(5)^2 (x) GF(5)^2."""
    F = ff_make(5)
    x = np.array([[1, 1], [0, 1]])
    y = np.array([[1, 0], [1, 1]])
    s = np.array([[0, 1], [4, 0]])
    G = enumerate_group([L.kron(F, x, x), L.kron(F, y, s)], F, cap=cap, name="Omega4+(5)")
    nat = natural(G)
    nat.label = "V4"
    return CatalogGroup("omega4plus5", G, Env(G, {"natural": nat, "V4": nat}), None, "tensor product of two natural modules")


def sl2_9_semidirect(cap: int = DEFAULT_CAP) -> CatalogGroup:
    """SL_2(9) extended by the field automorphism, on W (+) W^(1)."""
    F = ff_make(3, 2)
    gens = []
    for g in sl2_generators(F):
        m = np.zeros((4, 4), dtype=np.int64)
        m[:2, :2] = g
        m[2:, 2:] = F.frobenius(g, 1)
        gens.append(m)
    swap = np.zeros((4, 4), dtype=np.int64)
    swap[:2, 2:] = np.eye(2, dtype=np.int64)
    swap[2:, :2] = np.eye(2, dtype=np.int64)
    gens.append(swap)
    G = enumerate_group(gens, F, cap=cap, name="SL2(9):2")
    nat = natural(G)
    nat.label = "V4"
    return CatalogGroup("sl2_9_semidirect", G, Env(G, {"natural": nat, "V4": nat}), None, "W1 (+) W2 swapped by Frobenius")


def q8_c3_wr_c2(cap: int = DEFAULT_CAP) -> CatalogGroup:
    """SL_2(3) = Q8:C3 wreath C2 over GF(3); V induced from G+ = SL_2(3) x SL_2(3)."""
    F = ff_make(3)
    a = np.array([[1, 1], [0, 1]])
    b = np.array([[1, 0], [1, 1]])
    gens = []
    for g in (a, b):
        m = np.eye(4, dtype=np.int64)
        m[:2, :2] = g
        gens.append(m)
    swap = np.zeros((4, 4), dtype=np.int64)
    swap[:2, 2:] = np.eye(2, dtype=np.int64)
    swap[2:, :2] = np.eye(2, dtype=np.int64)
    gens.append(swap)
    G = enumerate_group(gens, F, cap=cap, name="SL2(3)wrC2")
    H = gplus(G)
    Hg = H.as_group("G+")
    hnat = natural(Hg)
    W1 = sub(hnat, [[1, 0, 0, 0], [0, 1, 0, 0]])
    W1.label = "W1"
    henv = Env(Hg, {"natural": hnat, "W1": W1})
    V = induce(H, W1)
    V.label = "V"
    env = Env(G, {"natural": natural(G), "V": V}, {"Gplus": (H, henv)})
    return CatalogGroup("q8_c3_wr_c2", G, env, None, "induced from the first factor of G+")


def monomial(p: int = 5, m: int = 4, top: str = "C5", cap: int = DEFAULT_CAP) -> CatalogGroup:
    """A : T < GL_p(GF(p)) with A the diagonal mu_m^p and T a transitive
    permutation group of degree p (C_p, or the affine group F_{p(p-1)})."""
    if not is_prime(p):
        raise CatalogError("monomial needs a prime p")
    F = ff_make(p)
    if (p - 1) % m:
        raise CatalogError(f"mu_{m} is not contained in GF({p})*")
    zeta = int(F.pow(F.generator, (p - 1) // m))
    d = np.eye(p, dtype=np.int64)
    d[0, 0] = zeta
    cyc = np.zeros((p, p), dtype=np.int64)
    for i in range(p):
        cyc[(i + 1) % p, i] = 1
    gens = [d, cyc]
    top = top.upper()
    if top in ("F20", f"F{p * (p - 1)}", "AFFINE"):
        g = F.generator
        aff = np.zeros((p, p), dtype=np.int64)
        for i in range(p):
            aff[(g * i) % p, i] = 1
        gens.append(aff)
        tname = f"F{p * (p - 1)}"
    elif top in ("C5", f"C{p}", "CYCLIC"):
        tname = f"C{p}"
    else:
        raise CatalogError(f"unknown top group {top!r}")
    G = enumerate_group(gens, F, cap=cap, name=f"mu{m}^{p}:{tname}")
    return CatalogGroup(f"monomial(p={p},m={m},top={tname})", G, Env(G, {"natural": natural(G)}), None, "imprimitive monomial group")


def sln_natural(n: int = 3, q: int = 2, cap: int = DEFAULT_CAP) -> CatalogGroup:
    p, k = _prime_power(q)
    F = ff_make(p, k)
    t = np.eye(n, dtype=np.int64)
    t[0, 1] = 1
    c = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        c[(i + 1) % n, i] = 1
    if n % 2 == 0:
        c[0, n - 1] = int(F.neg(1))  # keep determinant 1
    gens = [t, c]
    if k > 1:
        dg = np.eye(n, dtype=np.int64)
        dg[0, 0] = F.generator
        dg[1, 1] = int(F.inv(F.generator))
        gens.append(dg)
    G = enumerate_group(gens, F, cap=cap, name=f"SL{n}({q})")
    return CatalogGroup(f"sln_natural(n={n},q={q})", G, Env(G, {"natural": natural(G)}), None, "natural module")


BUILDERS = {
    "sl2": sl2,
    "psl2": psl2,
    "omega4plus5": omega4plus5,
    "sl2_9_semidirect": sl2_9_semidirect,
    "q8_c3_wr_c2": q8_c3_wr_c2,
    "monomial": monomial,
    "sln_natural": sln_natural,
}

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def make_group(name: str, cap: int = DEFAULT_CAP, **params) -> CatalogGroup:
    """Build (and cache) a catalog group; parameters are builder keyword args."""
    if name not in BUILDERS:
        raise CatalogError(f"unknown catalog group {name!r}; known: {', '.join(sorted(BUILDERS))}")
    key = (name, cap, tuple(sorted(params.items())))
    with _CACHE_LOCK:
        if key not in _CACHE:
            try:
                _CACHE[key] = BUILDERS[name](cap=cap, **params)
            except TypeError as exc:
                raise CatalogError(f"bad parameters for {name}: {exc}") from None
        return _CACHE[key]


# -- self-dual indecomposable instances -----------------------------------------------


@dataclass
class SelfDualInstance:
    name: str
    group: CatalogGroup
    module: Rep
    expected_type: str
    expected_layers: list
    loewy: object = None
    forms: object = None
    indecomposable: object = None
    split_control: object = None
    extras: dict = field(default_factory=dict)


def _uu(cg: CatalogGroup, label: str, expected: str, seed: int) -> SelfDualInstance:
    U = cg.env.reps[label]
    space = ext1(U, U)
    if space.h1_dim < 1:
        raise CatalogError(f"Ext^1({label},{label}) vanishes over {cg.group.name}")
    V = build_extension(U, U, space.maps[0], f"ext({label},{label},0)")
    inst = SelfDualInstance(f"{cg.group.name} ({label}|{label})", cg, V, expected, [[label], [label]])
    inst.split_control = is_indecomposable(zero_extension(U, U), seed)
    return inst


def _kuk(cg: CatalogGroup, label: str, seed: int) -> SelfDualInstance:
    U, k = cg.env.reps[label], cg.env.reps["L0"]
    s1 = ext1(U, k)
    M = build_extension(U, k, s1.maps[0], f"ext({label},L0,0)")
    s2 = ext1(k, M)
    V = build_extension(k, M, s2.maps[0], f"ext(L0,ext({label},L0,0),0)")
    inst = SelfDualInstance(f"{cg.group.name} (L0|{label}|L0)", cg, V, "symmetric", [["L0"], [label], ["L0"]])
    inst.split_control = is_indecomposable(zero_extension(k, M), seed)
    return inst


def self_dual_instances(p: int, seed: int = 0, analyse: bool = True) -> list[SelfDualInstance]:
    """Reducible self-dual indecomposable modules (U|U) and (k|U|k) at p = 5, 7."""
    if p not in (5, 7):
        raise CatalogError("instances are provided for p = 5 and p = 7")
    S, PS = make_group("sl2", q=p), make_group("psl2", p=p)
    eps = 1 if p % 4 == 1 else -1
    # (P)SL_2(p) with U of dimension (p +- eps)/2; alternating exactly when dim U = (p-1)/2
    d_psl = (p + eps) // 2
    d_sl = (p - eps) // 2
    out = [
        _uu(PS, f"L{d_psl - 1}", "alternating" if d_psl == (p - 1) // 2 else "symmetric", seed),
        _uu(S, f"L{d_sl - 1}", "alternating" if d_sl == (p - 1) // 2 else "symmetric", seed),
    ]
    if p == 5:
        out.append(_kuk(PS, "L2", seed))
    out.sort(key=lambda t: t.name)
    if analyse:
        for inst in out:
            cg = inst.group
            want_proj = inst.expected_layers[0] == ["L0"]
            inst.loewy = loewy_selfdual(inst.module, cg.names, cg.simples if want_proj else None, seed)
            inst.forms = invariant_forms(inst.module)
            inst.indecomposable = is_indecomposable(inst.module, seed)
    return out
