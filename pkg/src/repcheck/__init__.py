"""Exact modular representation checks for finite matrix groups: adequacy,
Ext^1 dimensions and the structure of small indecomposable modules."""

__version__ = "0.1.0"

from .field import FieldCtx, ff_make
from .groups import GroupData, SubgroupRef, enumerate_group, gplus, transversal
from .modules import Env, Rep, rep_build, rep_from_gens
from .cohomology import CocycleSpace, ext1, h0, h1, verify_cocycle
from .meataxe import chop, hom_space, is_indecomposable, is_irreducible, socle_series, radical_series
from .structure import FormSpace, LoewyReport, build_extension, invariant_forms, is_projective, loewy_selfdual
from .adequacy import AdequacyReport, adequacy_report, weak_span
from .catalog import make_group, self_dual_instances

__all__ = [
    "FieldCtx",
    "ff_make",
    "GroupData",
    "SubgroupRef",
    "enumerate_group",
    "gplus",
    "transversal",
    "Env",
    "Rep",
    "rep_build",
    "rep_from_gens",
    "CocycleSpace",
    "ext1",
    "h0",
    "h1",
    "verify_cocycle",
    "chop",
    "hom_space",
    "is_indecomposable",
    "is_irreducible",
    "socle_series",
    "radical_series",
    "FormSpace",
    "LoewyReport",
    "build_extension",
    "invariant_forms",
    "is_projective",
    "loewy_selfdual",
    "AdequacyReport",
    "adequacy_report",
    "weak_span",
    "make_group",
    "self_dual_instances",
]
