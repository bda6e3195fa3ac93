"""Command-line front end: parse a group and a family, run the requested
engines, and emit deterministic text or JSON reports.

Exit codes: 0 success, 1 input error, 2 hypothesis failure (unconditional
results are still emitted).  JSON output is byte-deterministic: canonical
forms everywhere and sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .exact_algebra import FGAbelianGroup
from .family import (
    CurveFamily,
    InvalidParams,
    InvalidPreset,
    PRESET_NAMES,
    THEOREMS,
    UnknownTheorem,
    family_from_preset,
    hypothesis_check,
    validate_family,
)
from .gerbe import poincare_bundle_exists, rigidified_picard, weight_cokernel
from .invariant_forms import (
    FormLattice,
    conditional_form_lattice,
    d_even_forms,
    even_invariant_forms,
    invariant_sym_forms,
    ns_bun,
    ns_bun_p1,
    ns_rigidified,
)
from .picard import (
    HypothesisNotSatisfied,
    WrongGenus,
    reductive_picard,
    torus_picard,
    torus_picard_genus0,
)
from .root_datum import (
    InvalidSpec,
    ParseError,
    Pi1Element,
    ReductiveGroupData,
    build_group,
    group_from_json,
    group_to_json,
    parse_group_spec,
    pi1_presentation,
)

COMPUTATIONS = ("pi1", "forms", "ns", "picard", "rigidified", "gerbe", "poincare")
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    group_text: str
    delta: tuple
    family: CurveFamily
    compute: tuple
    lift_d: tuple | None = None
    fmt: str = "json"

    @staticmethod
    def from_json(obj) -> "RunConfig":
        fam = obj["family"]
        family = parse_family(fam if isinstance(fam, str) else json.dumps(fam))
        return RunConfig(
            group_text=obj["group"],
            delta=tuple(int(x) for x in obj.get("delta", [])),
            family=family,
            compute=tuple(obj.get("compute", ["picard"])),
            lift_d=tuple(int(x) for x in obj["lift_d"]) if obj.get("lift_d") else None,
            fmt=obj.get("format", "json"),
        )


class InputError(ValueError):
    pass


def load_group(text: str) -> ReductiveGroupData:
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return group_from_json(json.load(fh))
    if text.startswith("{"):
        return group_from_json(json.loads(text))
    return build_group(parse_group_spec(text))


def parse_family(text: str) -> CurveFamily:
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return CurveFamily.from_json(json.load(fh))
    if text.startswith("{"):
        return CurveFamily.from_json(json.loads(text))
    name, _, rest = text.partition(":")
    params = tuple(int(x) for x in rest.split(",") if x.strip() != "") if rest else ()
    return family_from_preset(name, *params)


def _group_json(x: FGAbelianGroup) -> dict:
    return {"free_rank": x.free_rank, "torsion": list(x.torsion)}


def _form_lattice_json(fl: FormLattice) -> dict:
    return {
        "ambient_rank": fl.ambient_rank,
        "rank": fl.rank,
        "basis_grams": [f.gram.to_lists() for f in fl.basis_forms],
    }


def _ns_json(ns) -> dict:
    return {
        "group": _group_json(ns.group),
        "generators": [
            {"chi": None if chi is None else list(chi), "gram": form.gram.to_lists()}
            for chi, form in ns.generators
        ],
        "lift": list(ns.lift),
    }


def run_report(cfg: RunConfig):
    """Run the requested computations; returns (exit_code, report dict)."""
    warnings = []
    try:
        group = load_group(cfg.group_text)
    except (ParseError, InvalidSpec, OSError, json.JSONDecodeError, KeyError) as exc:
        raise InputError(f"group: {exc}") from exc
    violations = validate_family(cfg.family)
    if violations:
        raise InputError("family: " + "; ".join(str(v) for v in violations))
    pres = pi1_presentation(group)
    try:
        delta = Pi1Element.from_coords(group, cfg.delta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if cfg.lift_d is not None:
        if len(cfg.lift_d) != group.cochar_rank:
            raise InputError(f"lift-d needs {group.cochar_rank} coordinates")
        if Pi1Element.from_cocharacter(group, cfg.lift_d).coords != delta.coords:
            raise InputError("lift-d does not lift the given delta")
        lift = cfg.lift_d
    else:
        lift = None
    unknown = [c for c in cfg.compute if c not in COMPUTATIONS]
    if unknown:
        raise InputError(f"unknown computations {unknown}; known: {COMPUTATIONS}")

    f = cfg.family
    results: dict = {}
    exit_code = 0

    def guard(name, fn):
        nonlocal exit_code
        try:
            results[name] = fn()
        except HypothesisNotSatisfied as exc:
            warnings.append({
                "computation": name,
                "theorem": exc.theorem,
                "missing": list(exc.missing),
            })
            exit_code = 2
        except WrongGenus as exc:
            raise InputError(f"{name}: {exc}") from exc

    if "pi1" in cfg.compute:
        results["pi1"] = _group_json(pres.group)
    if "forms" in cfg.compute:
        results["forms"] = {
            "invariant": _form_lattice_json(invariant_sym_forms(group)),
            "even": _form_lattice_json(even_invariant_forms(group)),
            "conditional": _form_lattice_json(conditional_form_lattice(group)),
            "d_even": _form_lattice_json(d_even_forms(group)),
        }
    if "ns" in cfg.compute:
        results["ns"] = {
            "bun": _ns_json(ns_bun(group, delta, lift=lift)),
            "rigidified": _ns_json(ns_rigidified(group, delta, lift=lift)),
            "bun_p1": _ns_json(ns_bun_p1(group, delta, lift=lift)),
        }
    if "picard" in cfg.compute:
        def picard_fn():
            if group.is_torus:
                d = lift if lift is not None else pres.lift(delta.coords)
                if f.genus == 0:
                    return torus_picard_genus0(group, d, f).to_json()
                return torus_picard(group, d, f).to_json()
            return reductive_picard(group, delta, f, lift=lift).to_json()

        guard("picard", picard_fn)
    if "rigidified" in cfg.compute:
        guard("rigidified", lambda: rigidified_picard(group, delta, f, lift=lift).to_json())
    if "gerbe" in cfg.compute:
        guard("gerbe", lambda: weight_cokernel(group, delta, f, lift=lift).to_json())
    if "poincare" in cfg.compute:
        if not (group.is_torus and group.cochar_rank == 1):
            raise InputError("poincare needs the group T(1)")
        d = lift if lift is not None else pres.lift(delta.coords)
        results["poincare"] = poincare_bundle_exists(d[0], f)

    hypotheses = {}
    for thm in THEOREMS:
        res = hypothesis_check(f, group, thm)
        hypotheses[thm] = {"satisfied": res.satisfied, "missing": list(res.missing)}

    report = {
        "schema_version": SCHEMA_VERSION,
        "group": {
            "input": cfg.group_text,
            "datum": group_to_json(group),
        },
        "pi1": _group_json(pres.group),
        "delta": list(delta.coords),
        "lift": list(lift if lift is not None else pres.lift(delta.coords)),
        "family": f.to_json(),
        "results": results,
        "hypotheses": hypotheses,
        "warnings": warnings,
    }
    return exit_code, report


def render_text(report: dict) -> str:
    """Human-readable projection of the JSON report."""
    lines = []
    g = report["group"]["datum"]
    lines.append(f"group: {g.get('label') or report['group']['input']} "
                 f"(cochar rank {g['cochar_rank']}, factors {g['factor_types']})")
    pi1 = report["pi1"]
    lines.append(f"pi1(G) = {_describe(pi1)}; delta = {report['delta']}, "
                 f"lift = {report['lift']}")
    fam = report["family"]
    lines.append(f"family: {fam.get('label') or 'custom'} (genus {fam['genus']}, "
                 f"delta(C/S) = {fam['delta']})")
    res = report["results"]
    if "forms" in res:
        fl = res["forms"]
        lines.append("form lattices (ranks): "
                     f"invariant {fl['invariant']['rank']}, even {fl['even']['rank']}, "
                     f"conditional {fl['conditional']['rank']}, d-even {fl['d_even']['rank']}")
    if "ns" in res:
        ns = res["ns"]
        lines.append(f"NS(Bun) = {_describe(ns['bun']['group'])}; "
                     f"NS(rigidified) = {_describe(ns['rigidified']['group'])}; "
                     f"NS Bun(P1) = {_describe(ns['bun_p1']['group'])}")
    if "picard" in res:
        p = res["picard"]
        cok = _describe(p["cokernel"]) if p["cokernel"] else "n/a"
        lines.append(f"picard [{p['theorem']}]: cokernel {cok}, "
                     f"image index {p['image_index']}, splitting known: {p['splitting_known']}")
        for note in p["notes"]:
            lines.append(f"  note: {note}")
    if "rigidified" in res:
        p = res["rigidified"]
        lines.append(f"rigidified [{p['theorem']}]: cokernel "
                     f"{_describe(p['cokernel']) if p['cokernel'] else 'n/a'}")
    if "gerbe" in res:
        ge = res["gerbe"]
        wt = ge["coker_wt"]
        wt_text = (_describe(wt) if not wt.get("graded")
                   else f"extension of {_describe(wt['quotient'])} by {_describe(wt['sub'])}")
        lines.append(f"gerbe: coker(ev) = {_describe(ge['ev_cokernel'])}, "
                     f"coker(wt) = {wt_text}")
        if ge["poincare_exists"] is not None:
            lines.append(f"  poincare bundle exists: {ge['poincare_exists']}")
    if "poincare" in res:
        lines.append(f"poincare bundle exists: {res['poincare']}")
    for w in report["warnings"]:
        lines.append(f"warning: {w['computation']}: {w['theorem']} missing: "
                     + "; ".join(w["missing"]))
    return "\n".join(lines)


def _describe(grp: dict) -> str:
    parts = []
    if grp["free_rank"] == 1:
        parts.append("Z")
    elif grp["free_rank"] > 1:
        parts.append(f"Z^{grp['free_rank']}")
    parts.extend(f"Z/{d}" for d in grp["torsion"])
    return " + ".join(parts) if parts else "0"


def emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ":"))
    return render_text(report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bunpic",
        description="Discrete invariants of moduli stacks of principal bundles "
                    "over families of curves, in exact arithmetic.",
        epilog="delta coordinates refer to the canonical generators of pi1(G) "
               "as printed by --compute pi1 (free generators first, then "
               "torsion generators in invariant-factor order). Family presets: "
               + ", ".join(PRESET_NAMES) + ".",
    )
    p.add_argument("--group", help="group spec, e.g. 'GL(3)*T(1)', or @datum.json")
    p.add_argument("--delta", default="", help="comma-separated pi1 coordinates")
    p.add_argument("--family", help="preset:params (e.g. universal:2,1), inline JSON, or @file.json")
    p.add_argument("--lift-d", default=None,
                   help="explicit cocharacter lift of delta (comma-separated); "
                        "defaults to the canonical (genus 0: generic) lift")
    p.add_argument("--compute", default="picard",
                   help="comma list from: " + ", ".join(COMPUTATIONS))
    p.add_argument("--format", default="json", choices=("text", "json"))
    p.add_argument("--batch", help="file with one JSON run config per line")
    return p


def _run_single(args) -> int:
    cfg = RunConfig(
        group_text=args.group,
        delta=tuple(int(x) for x in args.delta.split(",") if x.strip() != ""),
        family=parse_family(args.family),
        compute=tuple(x.strip() for x in args.compute.split(",") if x.strip()),
        lift_d=(tuple(int(x) for x in args.lift_d.split(","))
                if args.lift_d else None),
        fmt=args.format,
    )
    code, report = run_report(cfg)
    print(emit(report, cfg.fmt))
    return code


def _run_batch(path: str, fmt: str) -> int:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    cfgs = [RunConfig.from_json(json.loads(ln)) for ln in lines]

    def work(cfg):
        return run_report(cfg)

    worst = 0
    with ThreadPoolExecutor(max_workers=min(8, max(1, len(cfgs)))) as pool:
        for code, report in pool.map(work, cfgs):
            worst = max(worst, code)
            print(emit(report, fmt))
    return worst


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.batch:
            return _run_batch(args.batch, args.format)
        if not args.group or not args.family:
            raise InputError("--group and --family are required (or use --batch)")
        return _run_single(args)
    except (InputError, ParseError, InvalidSpec, InvalidPreset, InvalidParams,
            UnknownTheorem, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
