"""Extensions from cocycles, invariant bilinear forms, projectivity and Loewy
structure reports."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as L
from .cohomology import cocycle_maps, ext1
from .meataxe import (
    ENUM_LIMIT,
    FactorList,
    chop,
    find_invertible,
    hom_space,
    is_irreducible,
    is_isomorphic,
    radical_series,
    socle_series,
)
from .modules import Rep, RepError, dual

MAX_FORM_DIM = 4


class FormError(ValueError):
    pass


class SimplesError(ValueError):
    pass


def build_extension(v: Rep, w: Rep, cocycle, label: str = "") -> Rep:
    """Module E with submodule V and quotient W: rho_E = [[rho_v, D], [0, rho_w]].

    ``cocycle`` is either the list of blocks D(s) (dim_v x dim_w) or an
    (dim_v*dim_w, g) generator-value stack of a Hom(W, V) cocycle.
    """
    if v.group is not w.group:
        raise RepError("modules belong to different groups")
    g = v.group.ngens
    if isinstance(cocycle, np.ndarray) and cocycle.shape == (v.dim * w.dim, g):
        maps = cocycle_maps(v, w, cocycle)
    else:
        maps = [np.asarray(D, dtype=np.int64) for D in cocycle]
    if len(maps) != g or any(D.shape != (v.dim, w.dim) for D in maps):
        raise RepError("cocycle shape does not match the modules")
    imgs = []
    for a, b, D in zip(v.images, w.images, maps):
        m = np.zeros((v.dim + w.dim,) * 2, dtype=np.int64)
        m[: v.dim, : v.dim] = a
        m[: v.dim, v.dim :] = D
        m[v.dim :, v.dim :] = b
        imgs.append(m)
    return Rep(v.group, imgs, label or f"ext({v.label},{w.label})")


def zero_extension(v: Rep, w: Rep) -> Rep:
    return build_extension(v, w, [np.zeros((v.dim, w.dim), dtype=np.int64)] * v.group.ngens)


# -- invariant bilinear forms ------------------------------------------------------------


@dataclass
class FormSpace:
    basis: list
    sym_basis: list
    alt_basis: list
    degenerate_points: int  # projective points of the form space that are degenerate
    degenerate_dim: int  # dimension of the span of the degenerate forms
    nondegenerate_sym: bool
    nondegenerate_alt: bool
    nondegenerate_mixed: int  # non-degenerate forms neither symmetric nor alternating (projective count)
    type_verdict: str

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def sym_dim(self) -> int:
        return len(self.sym_basis)

    @property
    def alt_dim(self) -> int:
        return len(self.alt_basis)

    def summary(self) -> dict:
        return {
            "dim": self.dim,
            "sym_dim": self.sym_dim,
            "alt_dim": self.alt_dim,
            "degenerate_dim": self.degenerate_dim,
            "degenerate_points": self.degenerate_points,
            "type": self.type_verdict,
        }


def _solve_forms(v: Rep, extra=None) -> list:
    F, d = v.F, v.dim
    eye = np.eye(d * d, dtype=np.int64)
    space = L.RowSpace(F, d * d)
    for m in v.images:
        space.add(F.sub(L.kron(F, m.T, m.T), eye))
    if extra is not None:
        space.add(extra)
    return [x.reshape(d, d) for x in space.nullspace()]


def _transpose_operator(d: int) -> np.ndarray:
    T = np.zeros((d * d, d * d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            T[i * d + j, j * d + i] = 1
    return T


def _projective_points(q: int, D: int):
    for lead in range(D):
        for rest in itertools.product(range(q), repeat=D - lead - 1):
            yield [0] * lead + [1] + list(rest)


def _nondegenerate_in(F, basis) -> bool:
    for c in _projective_points(F.q, len(basis)):
        B = _combine(F, basis, c)
        if L.is_invertible(F, B):
            return True
    return False


def _combine(F, basis, c):
    acc = np.zeros_like(basis[0])
    for ci, b in zip(c, basis):
        if ci:
            acc = F.add(acc, F.mul(b, int(ci)))
    return acc


def invariant_forms(v: Rep) -> FormSpace:
    """G-invariant bilinear forms B (rho^T B rho = B) and their type."""
    F, d = v.F, v.dim
    if F.p == 2:
        raise FormError("symmetric/alternating classification is not supported in characteristic 2")
    basis = _solve_forms(v)
    D = len(basis)
    if D > MAX_FORM_DIM or F.q**D > ENUM_LIMIT:
        raise FormError(f"invariant form space of dimension {D} exceeds the certified enumeration range")
    eye = np.eye(d * d, dtype=np.int64)
    T = _transpose_operator(d)
    sym_b = _solve_forms(v, F.sub(eye, T))
    alt_b = _solve_forms(v, F.add(eye, T))
    degenerate = L.RowSpace(F, d * d)
    npts = 0
    mixed = 0
    if D:
        sym_space = L.RowSpace(F, d * d)
        if sym_b:
            sym_space.add(np.array([b.reshape(-1) for b in sym_b]))
        alt_space = L.RowSpace(F, d * d)
        if alt_b:
            alt_space.add(np.array([b.reshape(-1) for b in alt_b]))
        for c in _projective_points(F.q, D):
            B = _combine(F, basis, c)
            if L.is_invertible(F, B):
                flat = B.reshape(1, -1)
                if not sym_space.contains(flat) and not alt_space.contains(flat):
                    mixed += 1
            else:
                npts += 1
                degenerate.add(B.reshape(1, -1))
    ns = bool(sym_b) and _nondegenerate_in(F, sym_b)
    na = bool(alt_b) and _nondegenerate_in(F, alt_b)
    verdict = {(True, True): "both", (True, False): "symmetric", (False, True): "alternating"}.get((ns, na), "none")
    return FormSpace(basis, sym_b, alt_b, npts, degenerate.rank, ns, na, mixed, verdict)


# -- projectivity and Loewy structure ---------------------------------------------------------


def check_simples(simples: list[Rep], seed: int = 0) -> None:
    for s in simples:
        if not is_irreducible(s, seed):
            raise SimplesError(f"{s.label or 'module'} in the simples list is reducible")
    for a, b in itertools.combinations(simples, 2):
        if a.dim == b.dim and is_isomorphic(a, b, seed):
            raise SimplesError(f"simples {a.label} and {b.label} are isomorphic")


def is_projective(v: Rep, simples: list[Rep], seed: int = 0, check: bool = True) -> bool:
    """V is projective iff ext1(v, S) = 0 for every simple S (complete list supplied)."""
    if check:
        check_simples(simples, seed)
    return all(ext1(v, s).h1_dim == 0 for s in simples)


def is_self_dual(v: Rep, seed: int = 0) -> bool:
    return find_invertible(v.F, hom_space(v, dual(v)), seed) is not None


@dataclass
class LoewyReport:
    socle: list
    radical: list
    uniserial: bool
    self_dual: bool
    projective: bool | None = None
    layer_dims: list = field(default_factory=list)

    def summary(self) -> dict:
        def layers(ls):
            return [[f"{f.label}" + (f"^{f.mult}" if f.mult > 1 else "") for f in layer] for layer in ls]

        return {
            "socle_layers": layers(self.socle),
            "radical_layers": layers(self.radical),
            "layer_dims": self.layer_dims,
            "uniserial": self.uniserial,
            "self_dual": self.self_dual,
            "projective": self.projective,
        }


def _simple_layer(layer: FactorList) -> bool:
    return len(layer) == 1 and layer[0].mult == 1


def loewy_selfdual(v: Rep, names: dict | None = None, simples: list[Rep] | None = None, seed: int = 0) -> LoewyReport:
    soc = socle_series(v, names, seed)
    rad = radical_series(v, names, seed)
    proj = is_projective(v, simples, seed) if simples is not None else None
    return LoewyReport(
        socle=soc,
        radical=rad,
        uniserial=all(_simple_layer(x) for x in soc),
        self_dual=is_self_dual(v, seed),
        projective=proj,
        layer_dims=[x.total_dim for x in soc],
    )


def factor_summary(v: Rep, names: dict | None = None, seed: int = 0) -> list:
    return chop(v, names, seed).summary()
