"""Command-line front end: build a group and module, run checks, write a report."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .adequacy import adequacy_report, weak_span
from .catalog import BUILDERS, CatalogError, make_group
from .cohomology import DEFAULT_MEM_CAP_MB, ext1
from .field import FieldError
from .groups import DEFAULT_CAP, GroupError, ResourceError, load_group_spec
from .meataxe import MeataxeError, chop, is_indecomposable
from .modules import Env, ParseError, RepError, dual, extend_scalars, rep_build
from .structure import FormError, SimplesError, invariant_forms, is_projective, loewy_selfdual

CHECKS = ("adequacy", "weak", "ext1", "structure", "forms", "projective")

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3

INPUT_ERRORS = (
    ParseError,
    RepError,
    GroupError,
    FieldError,
    CatalogError,
    FormError,
    SimplesError,
    MeataxeError,
    OSError,
    json.JSONDecodeError,
    ValueError,
)


class StageError(Exception):
    def __init__(self, stage: str, exc: Exception):
        super().__init__(f"{stage}: {exc}")
        self.stage = stage
        self.exc = exc

    @property
    def code(self) -> int:
        return EXIT_RESOURCE if isinstance(self.exc, ResourceError) else EXIT_INPUT


@dataclass
class RunConfig:
    group: str
    params: dict = field(default_factory=dict)
    module: str = "natural"
    checks: list = field(default_factory=lambda: ["adequacy"])
    seed: int = 0
    field_ext: int = 1
    out: str | None = None
    cap_elems: int = DEFAULT_CAP
    cap_mem: float = DEFAULT_MEM_CAP_MB
    timings: bool = False

    def validate(self):
        if not self.checks:
            raise ValueError("at least one check is required")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise ValueError(f"unknown check(s) {bad}; choose from {', '.join(CHECKS)}")
        if self.field_ext < 1:
            raise ValueError("--field-ext must be >= 1")


def _coerce(v: str):
    try:
        return int(v)
    except ValueError:
        return v


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = _coerce(v.strip())
    return out


def _stage(name, fn):
    try:
        return fn()
    except (ResourceError, *INPUT_ERRORS) as exc:
        raise StageError(name, exc) from exc


def _load(cfg: RunConfig):
    path = Path(cfg.group)
    if cfg.group not in BUILDERS and (path.suffix == ".json" or path.exists()):
        G, name = load_group_spec(path, None if cfg.cap_elems == DEFAULT_CAP else cfg.cap_elems)
        return G, Env(G, seed=cfg.seed), None, name
    cg = make_group(cfg.group, cap=cfg.cap_elems, **cfg.params)
    return cg.group, cg.env, cg.simples, cg.group.name


def cmd_run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one run; returns (exit code, report)."""
    t0 = time.perf_counter()
    timings = {}
    try:
        _stage("config", cfg.validate)
        G, env, simples, gname = _stage("group", lambda: _load(cfg))
        timings["group_ms"] = int(1000 * (time.perf_counter() - t0))
        v = _stage("module", lambda: rep_build(cfg.module, env))
        label = v.label
        if cfg.field_ext > 1:
            reps = [v] + list(simples or [])
            G, ext = _stage("field-ext", lambda: extend_scalars(G, reps, cfg.field_ext))
            v, simples = ext[0], (ext[1:] if simples is not None else None)
        report = {
            "meta": {
                "group": gname,
                "order": len(G),
                "field": str(G.F),
                "module": label,
                "dim": v.dim,
                "seed": cfg.seed,
                "field_ext": cfg.field_ext,
                "version": __version__,
            }
        }
        names = {s.label: s for s in simples} if simples else None
        for check in cfg.checks:
            t = time.perf_counter()
            report[check] = _stage(check, lambda c=check: _run_check(c, v, simples, names, cfg))
            timings[f"{check}_ms"] = int(1000 * (time.perf_counter() - t))
    except StageError as err:
        return err.code, {"error": {"stage": err.stage, "message": str(err.exc), "exit": err.code}}
    if cfg.timings:
        report["timings"] = timings
    return EXIT_OK, report


def _run_check(check, v, simples, names, cfg):
    if check == "adequacy":
        return adequacy_report(v, mem_cap_mb=cfg.cap_mem).summary(timings=cfg.timings)
    if check == "weak":
        s = weak_span(v)
        return {"span_dim": s, "weak_ok": s == v.dim**2}
    if check == "ext1":
        return {
            "self": ext1(v, v, cfg.cap_mem).h1_dim,
            "dual": ext1(dual(v), dual(v), cfg.cap_mem).h1_dim,
        }
    if check == "structure":
        rep = loewy_selfdual(v, names, None, cfg.seed).summary()
        ind = is_indecomposable(v, cfg.seed)
        rep["indecomposable"] = ind.verdict
        rep["end_dim"] = ind.end_dim
        rep["factors"] = chop(v, names, cfg.seed).summary()
        return rep
    if check == "forms":
        return invariant_forms(v).summary()
    if check == "projective":
        if simples is None:
            raise SimplesError("no complete simple-module list is known for this group")
        return {"projective": is_projective(v, simples, cfg.seed)}
    raise ValueError(check)


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def human_summary(report: dict) -> str:
    if "error" in report:
        e = report["error"]
        return f"error [{e['stage']}]: {e['message']}"
    m = report["meta"]
    lines = [f"{m['group']} (order {m['order']}, {m['field']}), module {m['module']} dim {m['dim']}"]
    for key, val in report.items():
        if key in ("meta", "timings"):
            continue
        if isinstance(val, dict):
            flat = ", ".join(f"{k}={v}" for k, v in sorted(val.items()) if not isinstance(v, (dict, list)))
            lines.append(f"  {key}: {flat}")
    return "\n".join(lines)


def _config_from_dict(d: dict, defaults: argparse.Namespace | None = None) -> RunConfig:
    checks = d.get("checks") or d.get("check") or ["adequacy"]
    if isinstance(checks, str):
        checks = [checks]
    return RunConfig(
        group=str(d["group"]),
        params=dict(d.get("params", {})),
        module=d.get("module", "natural"),
        checks=list(checks),
        seed=int(d.get("seed", 0)),
        field_ext=int(d.get("field_ext", 1)),
        out=d.get("out"),
        cap_elems=int(d.get("cap_elems", getattr(defaults, "cap_elems", DEFAULT_CAP))),
        cap_mem=float(d.get("cap_mem", getattr(defaults, "cap_mem", DEFAULT_MEM_CAP_MB))),
        timings=bool(d.get("timings", False)),
    )


def run_batch(manifest: str, workers: int, args) -> tuple[int, list]:
    try:
        doc = json.loads(Path(manifest).read_text())
        entries = doc["runs"] if isinstance(doc, dict) else doc
        configs = [_config_from_dict(e, args) for e in entries]
    except (OSError, KeyError, TypeError, ValueError) as exc:
        return EXIT_INPUT, [{"error": {"stage": "batch", "message": str(exc), "exit": EXIT_INPUT}}]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(cmd_run, configs))
    for cfg, (_, rep) in zip(configs, results):
        if cfg.out:
            Path(cfg.out).write_text(render(rep))
    code = max((c for c, _ in results), default=EXIT_OK)
    return code, [rep for _, rep in results]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="repcheck",
        description="Adequacy, Ext^1 and module-structure checks for finite matrix groups.",
        epilog="catalog groups: "
        + "; ".join(
            [
                "sl2 (q)",
                "psl2 (p)",
                "omega4plus5",
                "sl2_9_semidirect",
                "q8_c3_wr_c2",
                "monomial (p, m, top=C5|F20)",
                "sln_natural (n, q)",
            ]
        )
        + ". A path to a JSON group spec may be given instead.",
    )
    ap.add_argument("--group", help="catalog name or group spec file")
    ap.add_argument("--param", action="append", default=[], metavar="K=V", help="catalog parameter (repeatable)")
    ap.add_argument("--module", default="natural", help="module expression (default: natural)")
    ap.add_argument("--check", action="append", choices=CHECKS, help="check to run (repeatable; default adequacy)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--field-ext", type=int, default=1, metavar="M", help="extend scalars GF(q) -> GF(q^M)")
    ap.add_argument("--out", help="write the JSON report here")
    ap.add_argument("--cap-elems", type=int, default=DEFAULT_CAP, help="group enumeration cap")
    ap.add_argument("--cap-mem", type=float, default=DEFAULT_MEM_CAP_MB, help="cocycle propagation memory cap (MB)")
    ap.add_argument("--batch", metavar="MANIFEST", help="JSON list of runs to execute")
    ap.add_argument("--workers", type=int, default=1, help="concurrent batch entries")
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.batch:
        code, reports = run_batch(args.batch, args.workers, args)
        for rep in reports:
            print(human_summary(rep))
        if args.out:
            Path(args.out).write_text(json.dumps(reports, sort_keys=True, indent=2) + "\n")
        return code
    if not args.group:
        print("error [config]: --group is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        params = parse_params(args.param)
    except ValueError as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cfg = RunConfig(
        group=args.group,
        params=params,
        module=args.module,
        checks=args.check or ["adequacy"],
        seed=args.seed,
        field_ext=args.field_ext,
        out=args.out,
        cap_elems=args.cap_elems,
        cap_mem=args.cap_mem,
        timings=args.timings,
    )
    code, report = cmd_run(cfg)
    text = human_summary(report)
    print(text, file=sys.stderr if code else sys.stdout)
    if cfg.out:
        Path(cfg.out).write_text(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
